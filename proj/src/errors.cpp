#include "conicquot/errors.hpp"

namespace conicquot {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::zero_inverse: return "ZeroInverse";
    case ErrorKind::not_coprime: return "NotCoprime";
    case ErrorKind::out_of_range: return "OutOfRange";
    case ErrorKind::conductor_mismatch: return "ConductorMismatch";
    case ErrorKind::conductor_too_small: return "ConductorTooSmall";
    case ErrorKind::not_irreducible: return "NotIrreducible";
    case ErrorKind::missing_root_of_unity: return "MissingRootOfUnity";
    case ErrorKind::missing_constant: return "MissingConstant";
    case ErrorKind::not_finite: return "NotFinite";
    case ErrorKind::unclassifiable: return "Unclassifiable";
    case ErrorKind::needs_larger_field: return "NeedsLargerField";
    case ErrorKind::non_terminating: return "NonTerminating";
    case ErrorKind::ambiguous_central_curve: return "AmbiguousCentralCurve";
    case ErrorKind::missing_weight: return "MissingWeight";
    case ErrorKind::condition_violated: return "ConditionViolated";
    case ErrorKind::no_case_matches: return "NoCaseMatches";
    case ErrorKind::invalid_model: return "InvalidModel";
    case ErrorKind::vanishing_at_q: return "VanishingAtQ";
    case ErrorKind::orbit_collision: return "OrbitCollision";
    case ErrorKind::stabilizer_not_trivial: return "StabilizerNotTrivial";
    case ErrorKind::hypothesis_failed: return "HypothesisFailed";
    case ErrorKind::sampler_exhausted: return "SamplerExhausted";
    case ErrorKind::degenerate_triple: return "DegenerateTriple";
    case ErrorKind::field_mismatch: return "FieldMismatch";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::precision_exhausted: return "PrecisionExhausted";
  }
  return "Unknown";
}

bool is_internal(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::unclassifiable:
    case ErrorKind::non_terminating:
    case ErrorKind::ambiguous_central_curve:
    case ErrorKind::no_case_matches:
    case ErrorKind::precision_exhausted:
      return true;
    default:
      return false;
  }
}

}  // namespace conicquot
