#pragma once

// Matching singular-fibre loci on P^1 by projective maps defined over k.

#include <optional>
#include <string>
#include <vector>

#include "conicquot/example_factory.hpp"

namespace conicquot {

class FibreLocus {
 public:
  /// Sorts and deduplicates; throws InvalidModel when the set is not Galois-stable over k.
  FibreLocus(std::vector<P1Point> points, FieldSpec field);

  const std::vector<P1Point>& points() const noexcept { return points_; }
  const FieldSpec& field() const noexcept { return field_; }
  std::size_t size() const { return points_.size(); }
  /// Enough points for the rigidity conclusion (K^2 = 8 - n <= 0).
  bool rigid() const { return points_.size() >= 8; }

 private:
  std::vector<P1Point> points_;
  FieldSpec field_;
};

/// The map sending a_i to b_i; DegenerateTriple when a triple repeats a point.
Pgl2Elem mobius_from_triples(const P1Point& a1, const P1Point& a2, const P1Point& a3, const P1Point& b1,
                             const P1Point& b2, const P1Point& b3);

/// Some phi defined over k with phi(A) = B, or nullopt. FieldMismatch on different fields.
std::optional<Pgl2Elem> loci_equivalent(const FibreLocus& a, const FibreLocus& b);

/// Images in B/G of the base points of the singular fibres coming from the mus.
FibreLocus quotient_locus(const SurfaceModel& m);
/// Same with an explicit shift for the invariant map (see EquationPayload), computed
/// from base_locus.
FibreLocus quotient_locus(const SurfaceModel& m, const FiniteGroup& group, const Rational& shift);
/// All base points h(lambda_i : 1) on B; needs u^{1/l} inside the ambient field.
FibreLocus base_locus(const SurfaceModel& m, const FiniteGroup& group);

enum class Equivalence { equivalent, inequivalent, no_conclusion };
std::string to_string(Equivalence e);

struct PairVerdict {
  Equivalence verdict = Equivalence::no_conclusion;
  std::optional<Pgl2Elem> witness;
};

/// Symmetric matrix; the diagonal is Equivalent with the identity.
std::vector<std::vector<PairVerdict>> pairwise_inequivalence(const std::vector<SurfaceModel>& family, int jobs = 1);

}  // namespace conicquot
