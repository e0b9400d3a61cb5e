#pragma once

// Exact arithmetic in cyclotomic fields Q(xi_N), subfields given by generators,
// and one Kummer layer k(u^{1/l}) on top of such a subfield.

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "conicquot/errors.hpp"

namespace conicquot {

using Rational = mpq_class;

/// Largest conductor the library accepts; deg Phi_120 = 32.
inline constexpr int kMaxConductor = 120;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

long gcd_long(long a, long b);
long lcm_long(long a, long b);
int euler_phi(int n);
/// Exponent of (Z/n)^*.
int carmichael_lambda(int n);
/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(int n);
/// Units of Z/n in increasing order.
std::vector<int> units_mod(int n);

/// Element of Q(xi_N) stored as its residue modulo Phi_N in the power basis
/// 1, xi, ..., xi^{phi(N)-1}. Two equal elements of the same conductor have
/// identical coefficient vectors.
class CycloNum {
 public:
  CycloNum() : CycloNum(1) {}
  explicit CycloNum(int conductor);
  /// Reduces `coeffs` (coefficients of 1, xi_N, xi_N^2, ..., any length) mod Phi_N.
  CycloNum(int conductor, std::vector<Rational> coeffs);

  static CycloNum rational(int conductor, const Rational& value);
  /// xi_N^j.
  static CycloNum root_of_unity(int conductor, long j);
  /// xi_m^j expressed in conductor N, or nullopt when xi_m is not in Q(xi_N).
  static std::optional<CycloNum> root_of_unity_in(int conductor, int m, long j = 1);
  static CycloNum i(int conductor);
  /// 2 cos(2 pi j / m) = xi_m^j + xi_m^{-j}.
  static std::optional<CycloNum> two_cos(int conductor, int m, long j = 1);
  static std::optional<CycloNum> sqrt_integer(int conductor, long n);

  int conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Constant coefficient; meaningful when is_rational().
  const Rational& rational_part() const { return coeffs_.front(); }

  /// Re-expresses this element inside Q(xi_M); throws ConductorMismatch when
  /// Q(xi_N) is not a subfield of Q(xi_M).
  CycloNum embed(int target_conductor) const;

  CycloNum inverse() const;
  CycloNum pow(long e) const;
  /// Product of all Galois conjugates (a rational number).
  Rational norm() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& rhs);
  CycloNum& operator-=(const CycloNum& rhs);
  CycloNum& operator*=(const CycloNum& rhs);
  CycloNum& operator/=(const CycloNum& rhs);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend bool operator==(const CycloNum& a, const CycloNum& b);
  /// Total order on canonical forms (conductor first, then coefficients); used
  /// only for deterministic sorting.
  friend std::strong_ordering operator<=>(const CycloNum& a, const CycloNum& b);

  /// Human-readable polynomial in "z" (= xi_N), e.g. "1/2 + z - 3*z^2".
  std::string str() const;

 private:
  int conductor_;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycloNum& x);

/// Smallest common conductor containing both fields (the lcm, with the
/// Q(xi_{2m}) = Q(xi_m) identification for odd m not applied).
int common_conductor(int a, int b);
/// Brings both operands to a common conductor.
void unify(CycloNum& a, CycloNum& b);

/// Ring automorphism xi_N -> xi_N^j.
CycloNum galois_apply(long j, const CycloNum& x);

/// An r-th root of x inside Q(xi_N) (r >= 2), or nullopt if none exists.
/// Non-existence is proven by a residue obstruction modulo a prime; existence
/// is certified by exact verification of the returned root.
std::optional<CycloNum> nth_root(const CycloNum& x, int r);

/// Base field k presented as Q(generators) inside Q(xi_N), together with the
/// subgroup of (Z/N)^* fixing it.
class FieldSpec {
 public:
  FieldSpec() : FieldSpec(1, {}) {}
  FieldSpec(int conductor, std::vector<CycloNum> generators);

  /// Named fields: "Q", "Q(i)", "Q(i*sqrt2)", "Q(sqrt2)", "Q(sqrt5)",
  /// "Q(i,sqrt5)", "Q(xi_m)", "Q(cos2pi/m)", "Q(i*sqrt3)". The conductor
  /// defaults to the smallest that holds the generators.
  static FieldSpec named(const std::string& name, int conductor = 0);

  int conductor() const noexcept { return conductor_; }
  const std::vector<CycloNum>& generators() const noexcept { return generators_; }
  const std::vector<int>& stabilizer() const noexcept { return stabilizer_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Degree [k : Q].
  int degree() const;
  /// Same field inside a larger ambient conductor.
  FieldSpec embed(int target_conductor) const;

  bool contains(const CycloNum& x) const;
  /// Brings x into this field's conductor (ConductorMismatch if impossible).
  CycloNum lift(const CycloNum& x) const;

  CycloNum zero() const { return CycloNum(conductor_); }
  CycloNum one() const { return CycloNum::rational(conductor_, 1); }
  CycloNum from_rational(const Rational& q) const { return CycloNum::rational(conductor_, q); }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b);

 private:
  int conductor_;
  std::vector<CycloNum> generators_;
  std::vector<int> stabilizer_;
  std::string label_;
};

/// subfield_contains: membership by Galois invariance.
bool subfield_contains(const FieldSpec& k, const CycloNum& x);
/// xi_m in k; throws ConductorTooSmall when xi_m is outside the ambient field.
bool contains_root_of_unity(const FieldSpec& k, int m);

/// Is x an r-th power of an element of k? Returns a witness root in k.
std::optional<CycloNum> root_in_field(const FieldSpec& k, const CycloNum& x, int r);

/// Simple extension k(s), s^l = u, with x^l - u irreducible over k and xi_l in k.
class KummerExt {
  struct Data {
    FieldSpec base;
    CycloNum u;
    int l = 1;
    CycloNum xi_l_inv;
  };

 public:
  /// Element sum_{j<l} c_j s^j with c_j in the ambient cyclotomic field.
  class Element {
   public:
    Element() = default;

    const std::vector<CycloNum>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const;
    /// True when only the s^0 coefficient can be nonzero.
    bool is_base() const;
    const CycloNum& base_part() const { return coeffs_.front(); }

    Element operator-() const;
    Element& operator+=(const Element& rhs);
    Element& operator-=(const Element& rhs);
    Element& operator*=(const Element& rhs);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Element& b) { return a *= b; }
    friend bool operator==(const Element& a, const Element& b) { return a.coeffs_ == b.coeffs_; }

    Element inverse() const;
    std::string str() const;

   private:
    friend class KummerExt;
    Element(std::shared_ptr<const Data> data, std::vector<CycloNum> coeffs);

    std::shared_ptr<const Data> data_;
    std::vector<CycloNum> coeffs_;
  };

  /// kummer_make. Throws MissingRootOfUnity or NotIrreducible.
  KummerExt(const FieldSpec& base, const CycloNum& u, int l);

  const FieldSpec& base() const noexcept { return data_->base; }
  const CycloNum& radicand() const noexcept { return data_->u; }
  int exponent() const noexcept { return data_->l; }
  int conductor() const noexcept { return data_->base.conductor(); }

  Element constant(const CycloNum& c) const;
  Element constant(const Rational& c) const;
  /// s^j.
  Element generator_power(int j = 1) const;
  Element from_coeffs(std::vector<CycloNum> coeffs) const;

  /// gamma^j: s -> xi_l^{-j} s, identity on coefficients.
  Element galois(int j, const Element& x) const;

 private:
  std::shared_ptr<const Data> data_;
};

/// Convenience wrapper matching kummer_make.
KummerExt kummer_make(const FieldSpec& k, const CycloNum& u, int l);
KummerExt::Element kummer_galois(const KummerExt& e, int j, const KummerExt::Element& x);

}  // namespace conicquot
