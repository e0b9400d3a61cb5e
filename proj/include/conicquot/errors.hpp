#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conicquot {

/// Failure categories raised by the library. The CLI maps `internal` kinds
/// (those that indicate a bug rather than bad input) to exit code 1.
enum class ErrorKind {
  zero_inverse,
  not_coprime,
  out_of_range,
  conductor_mismatch,
  conductor_too_small,
  not_irreducible,
  missing_root_of_unity,
  missing_constant,
  not_finite,
  unclassifiable,
  needs_larger_field,
  non_terminating,
  ambiguous_central_curve,
  missing_weight,
  condition_violated,
  no_case_matches,
  invalid_model,
  vanishing_at_q,
  orbit_collision,
  stabilizer_not_trivial,
  hypothesis_failed,
  sampler_exhausted,
  degenerate_triple,
  field_mismatch,
  parse_error,
  precision_exhausted,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for kinds that signal an internal inconsistency instead of invalid input.
bool is_internal(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace conicquot
