#include <algorithm>
#include <numeric>
#include <regex>

#include "conicquot/cyclofield.hpp"

namespace conicquot {

namespace {

std::vector<int> fixing_subgroup(int n, const std::vector<CycloNum>& gens) {
  std::vector<int> out;
  for (int j : units_mod(n)) {
    bool fixes = std::all_of(gens.begin(), gens.end(),
                             [&](const CycloNum& g) { return galois_apply(j, g) == g; });
    if (fixes) out.push_back(j);
  }
  return out;
}

bool fits(int small, int big) { return CycloNum::root_of_unity_in(big, small).has_value(); }

}  // namespace

FieldSpec::FieldSpec(int conductor, std::vector<CycloNum> generators) : conductor_(conductor) {
  for (auto& g : generators) generators_.push_back(g.conductor() == conductor ? g : g.embed(conductor));
  stabilizer_ = fixing_subgroup(conductor_, generators_);
}

FieldSpec FieldSpec::named(const std::string& name, int conductor) {
  static const std::regex xi_re(R"(Q\(xi_(\d+)\))");
  static const std::regex cos_re(R"(Q\(cos2pi/(\d+)\))");
  int natural = 1;
  std::vector<CycloNum> gens;
  std::smatch mt;
  if (name == "Q") {
    natural = 1;
  } else if (name == "Q(i)") {
    natural = 4;
    gens.push_back(CycloNum::i(4));
  } else if (name == "Q(i*sqrt2)") {
    natural = 8;
    gens.push_back(CycloNum::root_of_unity(8, 1) + CycloNum::root_of_unity(8, 3));
  } else if (name == "Q(sqrt2)") {
    natural = 8;
    gens.push_back(CycloNum::root_of_unity(8, 1) + CycloNum::root_of_unity(8, 7));
  } else if (name == "Q(sqrt5)") {
    natural = 5;
    gens.push_back(CycloNum::rational(5, 1) +
                   CycloNum::rational(5, 2) * (CycloNum::root_of_unity(5, 1) + CycloNum::root_of_unity(5, 4)));
  } else if (name == "Q(i,sqrt5)") {
    natural = 20;
    gens.push_back(CycloNum::i(20));
    gens.push_back(named("Q(sqrt5)").generators().front().embed(20));
  } else if (name == "Q(i*sqrt3)") {
    natural = 3;
    gens.push_back(CycloNum::root_of_unity(3, 1) - CycloNum::root_of_unity(3, 2));
  } else if (std::regex_match(name, mt, xi_re)) {
    int m = std::stoi(mt[1]);
    natural = m;
    gens.push_back(CycloNum::root_of_unity(m, 1));
  } else if (std::regex_match(name, mt, cos_re)) {
    int m = std::stoi(mt[1]);
    natural = m;
    gens.push_back(*CycloNum::two_cos(m, m));
  } else {
    throw Error(ErrorKind::parse_error, "unknown field name '" + name + "'");
  }
  const int n = conductor == 0 ? natural : conductor;
  if (!fits(natural, n))
    throw Error(ErrorKind::conductor_mismatch,
                name + " does not fit in conductor " + std::to_string(n));
  FieldSpec k(n, gens);
  k.set_label(name);
  return k;
}

int FieldSpec::degree() const { return euler_phi(conductor_) / static_cast<int>(stabilizer_.size()); }

FieldSpec FieldSpec::embed(int target) const {
  if (target == conductor_) return *this;
  if (!fits(conductor_, target))
    throw Error(ErrorKind::conductor_mismatch, "cannot embed conductor " + std::to_string(conductor_) +
                                                   " into " + std::to_string(target));
  FieldSpec k(target, generators_);
  k.label_ = label_;
  return k;
}

CycloNum FieldSpec::lift(const CycloNum& x) const {
  if (x.conductor() == conductor_) return x;
  if (fits(x.conductor(), conductor_)) return x.embed(conductor_);
  if (x.is_rational()) return from_rational(x.rational_part());
  throw Error(ErrorKind::conductor_mismatch, "element of conductor " + std::to_string(x.conductor()) +
                                                 " does not fit conductor " + std::to_string(conductor_));
}

bool FieldSpec::contains(const CycloNum& x) const { return subfield_contains(*this, x); }

bool operator==(const FieldSpec& a, const FieldSpec& b) {
  if (a.conductor_ == b.conductor_) return a.stabilizer_ == b.stabilizer_;
  const int n = common_conductor(a.conductor_, b.conductor_);
  return a.embed(n).stabilizer_ == b.embed(n).stabilizer_;
}

bool subfield_contains(const FieldSpec& k, const CycloNum& x) {
  CycloNum y = k.lift(x);
  return std::all_of(k.stabilizer().begin(), k.stabilizer().end(),
                     [&](int j) { return galois_apply(j, y) == y; });
}

bool contains_root_of_unity(const FieldSpec& k, int m) {
  auto z = CycloNum::root_of_unity_in(k.conductor(), m);
  if (!z)
    throw Error(ErrorKind::conductor_too_small,
                "xi_" + std::to_string(m) + " is not in Q(xi_" + std::to_string(k.conductor()) + ")");
  return subfield_contains(k, *z);
}

std::optional<CycloNum> root_in_field(const FieldSpec& k, const CycloNum& x, int r) {
  const CycloNum xx = k.lift(x);
  auto y = nth_root(xx, r);
  if (!y) return std::nullopt;
  // every other root in the ambient field is y times a root of unity of order dividing r
  const int n = k.conductor();
  const int w = std::lcm(2, n);
  const int g = std::gcd(r, w);
  for (int j = 0; j < g; ++j) {
    CycloNum cand = *y * *CycloNum::root_of_unity_in(n, g, j);
    if (subfield_contains(k, cand)) return cand;
  }
  return std::nullopt;
}

}  // namespace conicquot
