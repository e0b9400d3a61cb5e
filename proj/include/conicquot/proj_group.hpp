#pragma once

// Finite subgroups of PGL_2 acting on P^1 over a cyclotomic ambient field.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "conicquot/cyclofield.hpp"

namespace conicquot {

/// Point (t1 : t0) of P^1, normalized so the last nonzero coordinate is 1.
class P1Point {
 public:
  P1Point() = default;
  P1Point(const CycloNum& t1, const CycloNum& t0);
  static P1Point infinity(int conductor);  // (1 : 0)
  static P1Point affine(const CycloNum& t);  // (t : 1)

  const CycloNum& t1() const noexcept { return t1_; }
  const CycloNum& t0() const noexcept { return t0_; }
  int conductor() const noexcept { return t1_.conductor(); }
  bool is_infinity() const { return t0_.is_zero(); }
  P1Point embed(int conductor) const;
  bool defined_over(const FieldSpec& k) const;
  std::string str() const;

  friend bool operator==(const P1Point& a, const P1Point& b) { return a.t1_ == b.t1_ && a.t0_ == b.t0_; }
  friend std::strong_ordering operator<=>(const P1Point& a, const P1Point& b);

 private:
  CycloNum t1_, t0_;
};

/// Element of PGL_2 stored as [[a, b], [c, d]] with the first nonzero entry equal to 1.
class Pgl2Elem {
 public:
  Pgl2Elem() = default;
  Pgl2Elem(const CycloNum& a, const CycloNum& b, const CycloNum& c, const CycloNum& d);
  static Pgl2Elem identity(int conductor);
  static Pgl2Elem diag(const CycloNum& a, const CycloNum& d);

  const CycloNum& a() const noexcept { return m_[0]; }
  const CycloNum& b() const noexcept { return m_[1]; }
  const CycloNum& c() const noexcept { return m_[2]; }
  const CycloNum& d() const noexcept { return m_[3]; }
  const std::array<CycloNum, 4>& entries() const noexcept { return m_; }
  int conductor() const noexcept { return m_[0].conductor(); }

  CycloNum det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  CycloNum trace() const { return m_[0] + m_[3]; }
  bool is_identity() const;
  Pgl2Elem inverse() const;
  Pgl2Elem pow(long e) const;
  Pgl2Elem embed(int conductor) const;
  bool defined_over(const FieldSpec& k) const;
  /// Order in PGL_2; NotFinite beyond `cap`.
  int order(int cap = 512) const;

  /// (t1 : t0) -> (a t1 + b t0 : c t1 + d t0).
  P1Point apply(const P1Point& p) const;

  std::string str() const;

  friend Pgl2Elem operator*(const Pgl2Elem& x, const Pgl2Elem& y);
  friend bool operator==(const Pgl2Elem& x, const Pgl2Elem& y) { return x.m_ == y.m_; }
  friend std::strong_ordering operator<=>(const Pgl2Elem& x, const Pgl2Elem& y);

 private:
  std::array<CycloNum, 4> m_;
};

enum class GroupKind { cyclic, dihedral, A4, S4, A5 };

/// C_k has param k; D_{2k} has param k (order 2k); the others have param 0.
struct GroupType {
  GroupKind kind = GroupKind::cyclic;
  int param = 1;

  int order() const;
  std::string label() const;  // "C_5", "D_6", "A4", ...
  friend bool operator==(const GroupType&, const GroupType&) = default;
};

/// Parses "C5", "C_5", "D6", "D_6", "A4", "S4", "A5".
GroupType parse_group_type(const std::string& text);

/// Ambient conductor that holds every constant and every fixed point of the
/// standard representation of `type`.
int standard_conductor(const GroupType& type);
/// Smallest named field carrying the standard representation, at standard_conductor.
FieldSpec standard_field(const GroupType& type);

class FiniteGroup {
 public:
  FiniteGroup() = default;
  FiniteGroup(std::vector<Pgl2Elem> elements, std::vector<int> generator_indices);

  const std::vector<Pgl2Elem>& elements() const noexcept { return elements_; }
  const std::vector<int>& generator_indices() const noexcept { return gens_; }
  const GroupType& type() const noexcept { return type_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int conductor() const { return elements_.front().conductor(); }
  /// Index of x or -1.
  int index_of(const Pgl2Elem& x) const;
  bool contains(const Pgl2Elem& x) const { return index_of(x) >= 0; }
  const Pgl2Elem& identity() const { return elements_.front(); }
  /// Element orders, parallel to elements().
  const std::vector<int>& element_orders() const noexcept { return orders_; }

 private:
  std::vector<Pgl2Elem> elements_;  // identity first
  std::map<Pgl2Elem, int> index_;
  std::vector<int> gens_;
  std::vector<int> orders_;
  GroupType type_;
};

/// Generators from the explicit representations; MissingConstant when k lacks
/// the needed constant.
std::vector<Pgl2Elem> standard_generators(const GroupType& type, const FieldSpec& k);

FiniteGroup generate_group(const std::vector<Pgl2Elem>& gens, int cap = 512);
GroupType classify_group(const FiniteGroup& g);

struct FixedPoints {
  bool all = false;  // identity
  std::vector<P1Point> points;
};

/// NeedsLargerField when the fixed points are not in Q(xi_N).
FixedPoints fixed_points(const Pgl2Elem& g);
bool fixed_points_defined_over(const Pgl2Elem& g, const FieldSpec& k);

std::vector<P1Point> orbit(const P1Point& p, const FiniteGroup& g);
FiniteGroup stabilizer(const P1Point& p, const FiniteGroup& g);

struct SpecialOrbit {
  std::vector<P1Point> points;
  int stabilizer_order = 1;
};
/// All orbits with nontrivial stabilizer, sorted by length.
std::vector<SpecialOrbit> special_orbits(const FiniteGroup& g);
std::vector<int> special_orbit_table(const FiniteGroup& g);

/// Expected orbit lengths for a kind.
std::vector<int> expected_orbit_table(const GroupType& type);

}  // namespace conicquot
