#pragma once

// Explicit conic bundles  A x^2 P_x + B y^2 P_y + C z^2 P_y = 0  in P^2 x P^1
// with a finite group acting on the base, and families of them.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "conicquot/quotient_engine.hpp"

namespace conicquot {

/// Binary form sum_j coeffs[j] t1^j t0^(deg - j).
struct HomogeneousForm {
  std::vector<CycloNum> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  CycloNum eval(const P1Point& p) const;
  /// "3*t1^2*t0 - t0^3"; coefficients in parentheses when not rational.
  std::string str() const;
};

struct ExampleSpec {
  FieldSpec field;
  FiniteGroup group;
  Pgl2Elem g;  // diagonal, even order l
  CycloNum u;
  int l = 2;
  std::vector<CycloNum> mus;
  CycloNum b, c;  // b / c = -u
  P1Point q;
  bool require_trivial_stabilizer = true;
};

struct EquationPayload {
  FieldSpec field;
  GroupType group;
  CycloNum u;
  int l = 2;
  std::vector<CycloNum> mus;
  CycloNum a, b, c;
  P1Point q;
  HomogeneousForm px, py;  // x^2 coefficient is a*px, y^2 is b*py, z^2 is c*py
  /// Base points of the singular fibres coming from the mus, as images in B/G.
  std::vector<P1Point> quotient_points;
  /// Invariant map used for quotient_points: t -> prod_h h(t1 - r t0) / prod_h h(t0).
  Rational quotient_shift;

  HomogeneousForm x_form() const;
  HomogeneousForm y_form() const;
  HomogeneousForm z_form() const;
  /// Every coefficient lies in the base field.
  bool coefficients_in_field() const;
  /// a*px(q) + b*py(q) == 0, so (1:1:0) lies on the fibre over q.
  bool k_point_on_q_fibre() const;
};

/// Image of a base point under the invariant map with shift r (point of B/G).
P1Point quotient_image(const FiniteGroup& g, const P1Point& p, const Rational& r);

SurfaceModel build_example(const ExampleSpec& spec);

/// G = C_l generated by diag(xi_l, 1) over `field`, B = 1, C = -1/u, q = (1 : 1) unless given.
ExampleSpec cyclic_example_spec(const FieldSpec& field, int l, const CycloNum& u, const std::vector<CycloNum>& mus,
                                std::optional<P1Point> q = {});

struct ExampleVerification {
  bool coefficients_in_field = false;
  bool k_point_on_q_fibre = false;
  bool x_rational = false;
  int n_mu = 0;
  int n = 0;
  QuotientReport quotient;
  bool m_at_least_n_mu = false;
  bool nonrational_when_large = true;  // only checked for n_mu > 3
  int family_dimension = 0;            // n_mu - 3
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

ExampleVerification verify_example(const SurfaceModel& m);

struct StabilizedExample {
  SurfaceModel model;
  Pgl2Elem g, h;  // after the coordinate change putting g = diag(1, -1)
  CycloNum lambda;  // fixed points of h are (+-lambda : 1)
  int swap_case = 0;
  FibreFate image_fate;
};

/// Explicit (g, h) in `group`; HypothesisFailed names the failed precondition.
StabilizedExample build_stabilized_example(const FiniteGroup& group, const Pgl2Elem& h, const Pgl2Elem& g,
                                           const FieldSpec& field);
/// Searches the standard representation of `kind` over `field` for a pair
/// (g, h); h_order = 0 accepts any odd order.
StabilizedExample build_stabilized_example(const GroupType& kind, const FieldSpec& field, int h_order = 0);

using MuSampler = std::function<std::vector<CycloNum>()>;

/// Distinct positive integers up to `bound`, as elements of conductor `conductor`.
MuSampler random_mu_sampler(std::uint64_t seed, int n, int bound, int conductor);

/// `count` admissible members differing in their mu-tuples; inadmissible or repeated
/// samples are skipped, SamplerExhausted after 50 * count draws.
std::vector<SurfaceModel> generate_family(const ExampleSpec& base, int count, const MuSampler& sampler);

}  // namespace conicquot
