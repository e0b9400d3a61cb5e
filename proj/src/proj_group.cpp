#include "conicquot/proj_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <regex>
#include <set>

namespace conicquot {

namespace {

int max_conductor(std::initializer_list<const CycloNum*> xs) {
  int n = 1;
  for (const CycloNum* x : xs) {
    if (n == x->conductor()) continue;
    if (CycloNum::root_of_unity_in(x->conductor(), n)) {
      n = x->conductor();
    } else if (!CycloNum::root_of_unity_in(n, x->conductor())) {
      n = common_conductor(n, x->conductor());
    }
  }
  return n;
}

CycloNum at(const CycloNum& x, int n) { return x.conductor() == n ? x : x.embed(n); }

std::strong_ordering compare_nums(const CycloNum& a, const CycloNum& b) { return a <=> b; }

// Unnormalized 2x2 matrix for building generators.
struct Mat {
  CycloNum a, b, c, d;
  friend Mat operator+(const Mat& x, const Mat& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat operator*(const Mat& x, const Mat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat operator*(const CycloNum& s, const Mat& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  Pgl2Elem elem() const { return Pgl2Elem(a, b, c, d); }
};

Mat mat(int n, const CycloNum& a, const CycloNum& b, const CycloNum& c, const CycloNum& d) {
  return {at(a, n), at(b, n), at(c, n), at(d, n)};
}

// A constant of k, or MissingConstant.
CycloNum require_constant(const FieldSpec& k, const std::optional<CycloNum>& x, const std::string& name) {
  if (x) {
    try {
      if (k.contains(*x)) return k.lift(*x);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::missing_constant, "field " + (k.label().empty() ? std::string("k") : k.label()) +
                                               " does not contain " + name);
}

}  // namespace

// ---------------------------------------------------------------- P1Point

P1Point::P1Point(const CycloNum& t1, const CycloNum& t0) {
  const int n = max_conductor({&t1, &t0});
  CycloNum x = at(t1, n), y = at(t0, n);
  if (x.is_zero() && y.is_zero()) throw Error(ErrorKind::out_of_range, "(0 : 0) is not a point");
  if (y.is_zero()) {
    t1_ = CycloNum::rational(n, 1);
    t0_ = CycloNum(n);
  } else {
    t1_ = x / y;
    t0_ = CycloNum::rational(n, 1);
  }
}

P1Point P1Point::infinity(int conductor) { return P1Point(CycloNum::rational(conductor, 1), CycloNum(conductor)); }

P1Point P1Point::affine(const CycloNum& t) { return P1Point(t, CycloNum::rational(t.conductor(), 1)); }

P1Point P1Point::embed(int conductor) const { return P1Point(at(t1_, conductor), at(t0_, conductor)); }

bool P1Point::defined_over(const FieldSpec& k) const { return k.contains(t1_) && k.contains(t0_); }

std::string P1Point::str() const { return "(" + t1_.str() + " : " + t0_.str() + ")"; }

std::strong_ordering operator<=>(const P1Point& a, const P1Point& b) {
  if (auto c = compare_nums(a.t0_, b.t0_); c != 0) return c;
  return compare_nums(a.t1_, b.t1_);
}

// ---------------------------------------------------------------- Pgl2Elem

Pgl2Elem::Pgl2Elem(const CycloNum& a, const CycloNum& b, const CycloNum& c, const CycloNum& d) {
  const int n = max_conductor({&a, &b, &c, &d});
  m_ = {at(a, n), at(b, n), at(c, n), at(d, n)};
  if (det().is_zero()) throw Error(ErrorKind::out_of_range, "singular matrix in PGL2");
  for (const auto& e : m_) {
    if (e.is_zero()) continue;
    if (e.is_one()) break;
    const CycloNum inv = e.inverse();
    for (auto& x : m_) x *= inv;
    break;
  }
}

Pgl2Elem Pgl2Elem::identity(int conductor) {
  return Pgl2Elem(CycloNum::rational(conductor, 1), CycloNum(conductor), CycloNum(conductor),
                  CycloNum::rational(conductor, 1));
}

Pgl2Elem Pgl2Elem::diag(const CycloNum& a, const CycloNum& d) {
  return Pgl2Elem(a, CycloNum(a.conductor()), CycloNum(a.conductor()), d);
}

bool Pgl2Elem::is_identity() const { return m_[1].is_zero() && m_[2].is_zero() && m_[0] == m_[3]; }

Pgl2Elem Pgl2Elem::inverse() const { return Pgl2Elem(m_[3], -m_[1], -m_[2], m_[0]); }

Pgl2Elem Pgl2Elem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Pgl2Elem r = identity(conductor()), base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Pgl2Elem Pgl2Elem::embed(int conductor) const {
  return Pgl2Elem(at(m_[0], conductor), at(m_[1], conductor), at(m_[2], conductor), at(m_[3], conductor));
}

bool Pgl2Elem::defined_over(const FieldSpec& k) const {
  return std::all_of(m_.begin(), m_.end(), [&](const CycloNum& x) { return k.contains(x); });
}

int Pgl2Elem::order(int cap) const {
  Pgl2Elem p = *this;
  int k = 1;
  while (!p.is_identity()) {
    if (++k > cap) throw Error(ErrorKind::not_finite, "element order exceeds " + std::to_string(cap));
    p = p * *this;
  }
  return k;
}

P1Point Pgl2Elem::apply(const P1Point& p) const {
  if (p.conductor() != conductor()) {
    const int common = max_conductor({&m_[0], &p.t1()});
    return embed(common).apply(p.embed(common));
  }
  return P1Point(m_[0] * p.t1() + m_[1] * p.t0(), m_[2] * p.t1() + m_[3] * p.t0());
}

std::string Pgl2Elem::str() const {
  return "[[" + m_[0].str() + ", " + m_[1].str() + "], [" + m_[2].str() + ", " + m_[3].str() + "]]";
}

Pgl2Elem operator*(const Pgl2Elem& x, const Pgl2Elem& y) {
  const auto& p = x.m_;
  const auto& q = y.m_;
  return Pgl2Elem(p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                  p[2] * q[1] + p[3] * q[3]);
}

std::strong_ordering operator<=>(const Pgl2Elem& x, const Pgl2Elem& y) {
  for (int k = 0; k < 4; ++k)
    if (auto c = compare_nums(x.m_[k], y.m_[k]); c != 0) return c;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- group types

int GroupType::order() const {
  switch (kind) {
    case GroupKind::cyclic: return param;
    case GroupKind::dihedral: return 2 * param;
    case GroupKind::A4: return 12;
    case GroupKind::S4: return 24;
    case GroupKind::A5: return 60;
  }
  return 0;
}

std::string GroupType::label() const {
  switch (kind) {
    case GroupKind::cyclic: return "C_" + std::to_string(param);
    case GroupKind::dihedral: return "D_" + std::to_string(2 * param);
    case GroupKind::A4: return "A4";
    case GroupKind::S4: return "S4";
    case GroupKind::A5: return "A5";
  }
  return "?";
}

GroupType parse_group_type(const std::string& text) {
  static const std::regex re(R"(^\s*([CDcd])_?\{?(\d+)\}?\s*$)");
  std::smatch mt;
  if (text == "A4" || text == "A_4") return {GroupKind::A4, 0};
  if (text == "S4" || text == "S_4") return {GroupKind::S4, 0};
  if (text == "A5" || text == "A_5") return {GroupKind::A5, 0};
  if (std::regex_match(text, mt, re)) {
    int v = std::stoi(mt[2]);
    if (v < 1) throw Error(ErrorKind::parse_error, "group parameter must be positive");
    if (mt[1] == "C" || mt[1] == "c") return {GroupKind::cyclic, v};
    if (v % 2 != 0) throw Error(ErrorKind::parse_error, "dihedral order must be even: " + text);
    return {GroupKind::dihedral, v / 2};
  }
  throw Error(ErrorKind::parse_error, "unknown group '" + text + "'");
}

int standard_conductor(const GroupType& type) {
  switch (type.kind) {
    case GroupKind::cyclic: return std::lcm(4, type.param);
    case GroupKind::dihedral:
      return type.param % 2 == 1 ? std::lcm(4, type.param) : std::lcm(4, 2 * type.param);
    case GroupKind::A4:
    case GroupKind::S4: return 24;
    case GroupKind::A5: return 60;
  }
  return 1;
}

FieldSpec standard_field(const GroupType& type) {
  const int n = standard_conductor(type);
  switch (type.kind) {
    case GroupKind::cyclic: return FieldSpec::named("Q(xi_" + std::to_string(type.param) + ")", n);
    case GroupKind::dihedral:
      if (type.param <= 2) return FieldSpec::named("Q", n);
      return FieldSpec::named("Q(cos2pi/" + std::to_string(type.param) + ")", n);
    case GroupKind::A4:
    case GroupKind::S4: return FieldSpec::named("Q(i)", n);
    case GroupKind::A5: return FieldSpec::named("Q(i,sqrt5)", n);
  }
  return FieldSpec();
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<Pgl2Elem> elements, std::vector<int> generator_indices)
    : elements_(std::move(elements)), gens_(std::move(generator_indices)) {
  if (elements_.empty()) throw Error(ErrorKind::out_of_range, "empty group");
  const int n = elements_.front().conductor();
  auto id_it = std::find_if(elements_.begin(), elements_.end(), [](const Pgl2Elem& g) { return g.is_identity(); });
  if (id_it == elements_.end()) throw Error(ErrorKind::out_of_range, "group without identity");
  std::iter_swap(elements_.begin(), id_it);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].conductor() != n) elements_[i] = elements_[i].embed(n);
    index_.emplace(elements_[i], static_cast<int>(i));
  }
  orders_.reserve(elements_.size());
  for (const auto& g : elements_) orders_.push_back(g.order(order()));
  type_ = classify_group(*this);
}

int FiniteGroup::index_of(const Pgl2Elem& x) const {
  auto it = index_.find(x.conductor() == conductor() ? x : x.embed(conductor()));
  return it == index_.end() ? -1 : it->second;
}

FiniteGroup generate_group(const std::vector<Pgl2Elem>& gens_in, int cap) {
  if (cap < 1) throw Error(ErrorKind::out_of_range, "cap must be positive");
  int n = 1;
  for (const auto& g : gens_in) {
    if (CycloNum::root_of_unity_in(g.conductor(), n)) {
      n = g.conductor();
    } else if (!CycloNum::root_of_unity_in(n, g.conductor())) {
      n = common_conductor(n, g.conductor());
    }
  }
  std::vector<Pgl2Elem> gens;
  for (const auto& g : gens_in) gens.push_back(g.conductor() == n ? g : g.embed(n));

  std::vector<Pgl2Elem> elements{Pgl2Elem::identity(n)};
  std::map<Pgl2Elem, int> seen{{elements.front(), 0}};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const Pgl2Elem cur = elements[queue.front()];
    queue.pop_front();
    for (const auto& g : gens) {
      Pgl2Elem next = cur * g;
      if (seen.count(next)) continue;
      if (static_cast<int>(elements.size()) >= cap)
        throw Error(ErrorKind::not_finite, "group closure exceeds " + std::to_string(cap) + " elements");
      seen.emplace(next, static_cast<int>(elements.size()));
      elements.push_back(next);
      queue.push_back(static_cast<int>(elements.size()) - 1);
    }
  }
  std::vector<int> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(seen.at(g));
  return FiniteGroup(std::move(elements), std::move(gen_idx));
}

GroupType classify_group(const FiniteGroup& g) {
  const int n = g.order();
  std::map<int, int> counts;
  for (int o : g.element_orders()) ++counts[o];
  if (counts.count(n)) return {GroupKind::cyclic, n};
  auto stats = [&](std::map<int, int> want) { return counts == want; };
  if (n == 12 && stats({{1, 1}, {2, 3}, {3, 8}})) return {GroupKind::A4, 0};
  if (n == 24 && stats({{1, 1}, {2, 9}, {3, 8}, {4, 6}})) return {GroupKind::S4, 0};
  if (n == 60 && stats({{1, 1}, {2, 15}, {3, 20}, {5, 24}})) return {GroupKind::A5, 0};
  if (n % 2 == 0) {
    const int k = n / 2;
    // k involutions outside a cyclic subgroup of order k
    if (k >= 3 && counts.count(k) && counts[2] == (k % 2 == 0 ? k + 1 : k)) return {GroupKind::dihedral, k};
    if (k == 2 && counts[2] == 3) return {GroupKind::dihedral, 2};
  }
  throw Error(ErrorKind::unclassifiable, "finite subgroup of order " + std::to_string(n) + " did not classify");
}

// ---------------------------------------------------------------- generators

std::vector<Pgl2Elem> standard_generators(const GroupType& type, const FieldSpec& k) {
  const int n = k.conductor();
  const CycloNum one = k.one(), zero = k.zero();
  auto constant_i = [&] { return require_constant(k, CycloNum::root_of_unity_in(n, 4), "i"); };
  switch (type.kind) {
    case GroupKind::cyclic: {
      if (type.param == 1) return {Pgl2Elem::identity(n)};
      CycloNum xi = require_constant(k, CycloNum::root_of_unity_in(n, type.param),
                                     "xi_" + std::to_string(type.param));
      return {Pgl2Elem::diag(xi, one)};
    }
    case GroupKind::dihedral: {
      const int kk = type.param;
      Pgl2Elem s(zero, one, one, zero);
      if (kk == 1) return {s};
      if (kk == 2) return {Pgl2Elem::diag(-one, one), s};
      CycloNum tc = require_constant(k, CycloNum::two_cos(n, kk), "cos(2pi/" + std::to_string(kk) + ")");
      // 4 cos^2(pi/k) - 1 = 1 + 2 cos(2 pi/k)
      return {Pgl2Elem(one + tc, -one, one, one), s};
    }
    case GroupKind::A4:
    case GroupKind::S4:
    case GroupKind::A5: {
      std::optional<CycloNum> i_amb = CycloNum::root_of_unity_in(n, 4);
      bool has_i = false;
      if (i_amb) {
        try {
          has_i = k.contains(*i_amb);
        } catch (const Error&) {
        }
      }
      if (type.kind == GroupKind::S4 && !has_i) {
        std::optional<CycloNum> is2;
        if (auto z1 = CycloNum::root_of_unity_in(n, 8, 1))
          is2 = *z1 + *CycloNum::root_of_unity_in(n, 8, 3);
        CycloNum r = require_constant(k, is2, "i or i*sqrt2");
        Mat id = mat(n, one, zero, zero, one);
        Mat jm = mat(n, zero, -one, one, zero);
        Mat it = mat(n, -r, one, one, r);
        return {it.elem(), (id + it + jm + it * jm).elem(), (it + jm).elem()};
      }
      CycloNum i = constant_i();
      Mat id = mat(n, one, zero, zero, one);
      Mat im = mat(n, -i, zero, zero, i);
      Mat jm = mat(n, zero, -one, one, zero);
      Mat km = mat(n, zero, i, i, zero);
      Mat h = id + im + jm + km;
      if (type.kind == GroupKind::A4) return {im.elem(), h.elem()};
      if (type.kind == GroupKind::S4) return {im.elem(), h.elem(), (im + jm).elem()};
      std::optional<CycloNum> sqrt5;
      if (auto z = CycloNum::root_of_unity_in(n, 5, 1))
        sqrt5 = one + CycloNum::rational(n, 2) * (*z + *CycloNum::root_of_unity_in(n, 5, 4));
      CycloNum s5 = require_constant(k, sqrt5, "sqrt5");
      CycloNum phi = (one + s5) / CycloNum::rational(n, 2);
      CycloNum phi_inv = phi - one;
      Mat a5 = id + phi * im + phi_inv * jm;
      return {im.elem(), h.elem(), a5.elem()};
    }
  }
  return {};
}

// ---------------------------------------------------------------- fixed points

FixedPoints fixed_points(const Pgl2Elem& g) {
  FixedPoints out;
  if (g.is_identity()) {
    out.all = true;
    return out;
  }
  const int n = g.conductor();
  const CycloNum &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
  if (c.is_zero()) {
    out.points.push_back(P1Point::infinity(n));
    if (!(d == a)) out.points.push_back(P1Point::affine(b / (d - a)));
  } else {
    CycloNum disc = (d - a) * (d - a) + CycloNum::rational(n, 4) * b * c;
    auto s = nth_root(disc, 2);
    if (!s)
      throw Error(ErrorKind::needs_larger_field,
                  "fixed points need sqrt(" + disc.str() + ") outside Q(xi_" + std::to_string(n) + ")");
    CycloNum two_c = CycloNum::rational(n, 2) * c;
    out.points.push_back(P1Point::affine((a - d + *s) / two_c));
    if (!s->is_zero()) out.points.push_back(P1Point::affine((a - d - *s) / two_c));
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

bool fixed_points_defined_over(const Pgl2Elem& g, const FieldSpec& k) {
  FixedPoints fp = fixed_points(g);
  if (fp.all) return true;
  return std::all_of(fp.points.begin(), fp.points.end(), [&](const P1Point& p) { return p.defined_over(k); });
}

// ---------------------------------------------------------------- orbits

std::vector<P1Point> orbit(const P1Point& p, const FiniteGroup& g) {
  std::set<P1Point> pts;
  for (const auto& h : g.elements()) pts.insert(h.apply(p));
  return {pts.begin(), pts.end()};
}

FiniteGroup stabilizer(const P1Point& p, const FiniteGroup& g) {
  std::vector<Pgl2Elem> elems;
  for (const auto& h : g.elements())
    if (h.apply(p) == p) elems.push_back(h);
  return FiniteGroup(std::move(elems), {});
}

std::vector<SpecialOrbit> special_orbits(const FiniteGroup& g) {
  std::set<P1Point> pending;
  for (const auto& h : g.elements()) {
    if (h.is_identity()) continue;
    for (const auto& p : fixed_points(h).points) pending.insert(p);
  }
  std::vector<SpecialOrbit> out;
  while (!pending.empty()) {
    P1Point p = *pending.begin();
    SpecialOrbit o;
    o.points = orbit(p, g);
    o.stabilizer_order = g.order() / static_cast<int>(o.points.size());
    for (const auto& q : o.points) pending.erase(q);
    out.push_back(std::move(o));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SpecialOrbit& x, const SpecialOrbit& y) { return x.points.size() < y.points.size(); });
  return out;
}

std::vector<int> special_orbit_table(const FiniteGroup& g) {
  std::vector<int> out;
  for (const auto& o : special_orbits(g)) out.push_back(static_cast<int>(o.points.size()));
  return out;
}

std::vector<int> expected_orbit_table(const GroupType& type) {
  switch (type.kind) {
    case GroupKind::cyclic: return type.param >= 2 ? std::vector<int>{1, 1} : std::vector<int>{};
    case GroupKind::dihedral: {
      const int k = type.param;
      if (k < 2) return {1, 1};  // D_2 = C_2
      std::vector<int> v{2, k, k};
      std::sort(v.begin(), v.end());
      return v;
    }
    case GroupKind::A4: return {4, 4, 6};
    case GroupKind::S4: return {6, 8, 12};
    case GroupKind::A5: return {12, 20, 30};
  }
  return {};
}

}  // namespace conicquot
