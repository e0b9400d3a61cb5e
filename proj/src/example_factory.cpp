#include "conicquot/example_factory.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace conicquot {

using KElem = KummerExt::Element;

// ------------------------------------------------------------ forms

CycloNum HomogeneousForm::eval(const P1Point& p) const {
  int n = p.conductor();
  for (const auto& c : coeffs) n = common_conductor(n, c.conductor());
  const CycloNum t1 = p.t1().embed(n), t0 = p.t0().embed(n);
  CycloNum acc(n);
  const int d = degree();
  for (int j = 0; j <= d; ++j) acc += coeffs[static_cast<std::size_t>(j)].embed(n) * t1.pow(j) * t0.pow(d - j);
  return acc;
}

std::string HomogeneousForm::str() const {
  std::ostringstream os;
  bool first = true;
  const int d = degree();
  for (int j = d; j >= 0; --j) {
    const CycloNum& c = coeffs[static_cast<std::size_t>(j)];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    std::string mono;
    if (j > 0) mono += "t1" + (j > 1 ? "^" + std::to_string(j) : "");
    if (d - j > 0) mono += std::string(mono.empty() ? "" : "*") + "t0" + (d - j > 1 ? "^" + std::to_string(d - j) : "");
    bool neg = false;
    if (c.is_rational()) {
      Rational q = c.rational_part();
      neg = q < 0;
      cs = to_string(neg ? Rational(-q) : q);
    } else {
      cs = "(" + cs + ")";
    }
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (mono.empty()) {
      os << cs;
    } else if (cs == "1") {
      os << mono;
    } else {
      os << cs << "*" << mono;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

HomogeneousForm scaled(const HomogeneousForm& f, const CycloNum& s) {
  HomogeneousForm r = f;
  for (auto& c : r.coeffs) c = c * s;
  return r;
}

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b, const T& zero) {
  std::vector<T> out(a.size() + b.size() - 1, zero);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// h acting on the linear form alpha t1 + beta t0 by substituting h^{-1}: coefficients (t0, t1).
template <class T, class Lift>
std::vector<T> act_on_linear(const Pgl2Elem& h, const T& alpha, const T& beta, Lift lift) {
  return {-(alpha * lift(h.b())) + beta * lift(h.a()), alpha * lift(h.d()) - beta * lift(h.c())};
}

void hypothesis(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::hypothesis_failed, what);
}

}  // namespace

HomogeneousForm EquationPayload::x_form() const { return scaled(px, a); }
HomogeneousForm EquationPayload::y_form() const { return scaled(py, b); }
HomogeneousForm EquationPayload::z_form() const { return scaled(py, c); }

bool EquationPayload::coefficients_in_field() const {
  for (const auto* f : {&px, &py})
    for (const auto& x : f->coeffs)
      if (!field.contains(x)) return false;
  return field.contains(a) && field.contains(b) && field.contains(c);
}

bool EquationPayload::k_point_on_q_fibre() const { return (a * px.eval(q) + b * py.eval(q)).is_zero(); }

// ------------------------------------------------------------ quotient map

namespace {

// Value of prod_h h(t1 - r t0) and prod_h h(t0) at (x : y).
template <class T, class Lift>
std::pair<T, T> invariant_pair(const FiniteGroup& g, const T& x, const T& y, const Rational& r, Lift lift, const T& one) {
  T num = one, den = one;
  const T mr = lift(CycloNum::rational(g.conductor(), -r));
  const T zero = one - one;
  for (const auto& h : g.elements()) {
    auto ln = act_on_linear(h, one, mr, lift);
    auto ld = act_on_linear(h, zero, one, lift);
    num = num * (ln[1] * x + ln[0] * y);
    den = den * (ld[1] * x + ld[0] * y);
  }
  return {num, den};
}

bool shift_usable(const FiniteGroup& g, const Rational& r) {
  // (r : 1) must not lie in the orbit of (1 : 0), else the map is constant
  const P1Point rp = P1Point::affine(CycloNum::rational(g.conductor(), r));
  auto orb = orbit(P1Point::infinity(g.conductor()), g);
  return std::find(orb.begin(), orb.end(), rp) == orb.end();
}

Rational choose_shift(const FiniteGroup& g) {
  for (int r = 0;; ++r)
    if (shift_usable(g, r)) return r;
}

}  // namespace

P1Point quotient_image(const FiniteGroup& g, const P1Point& p, const Rational& r) {
  if (!shift_usable(g, r)) throw Error(ErrorKind::out_of_range, "shift lies in the orbit of (1 : 0)");
  const int n = g.conductor();
  const P1Point pp = p.embed(common_conductor(n, p.conductor()));
  const int c = pp.conductor();
  auto lift = [c](const CycloNum& x) { return x.embed(c); };
  auto [num, den] = invariant_pair(g, pp.t1(), pp.t0(), r, lift, CycloNum::rational(c, 1));
  return P1Point(num, den);
}

// ------------------------------------------------------------ build

SurfaceModel build_example(const ExampleSpec& spec) {
  const FieldSpec& k = spec.field;
  const int n = k.conductor();
  const FiniteGroup& grp = spec.group;
  auto lift = [&](const CycloNum& x) { return k.lift(x); };
  const Pgl2Elem g = spec.g.embed(n);
  for (const auto& h : grp.elements())
    if (!h.embed(n).defined_over(k)) throw Error(ErrorKind::field_mismatch, "group element not defined over k");
  hypothesis(grp.contains(spec.g), "g must belong to the group");
  hypothesis(g.b().is_zero() && g.c().is_zero(), "g must be diagonal (fixed points (1:0) and (0:1))");
  hypothesis(spec.l >= 2 && spec.l % 2 == 0 && g.order() == spec.l, "g must have the even order l");

  const CycloNum u = lift(spec.u), bb = lift(spec.b), cc = lift(spec.c);
  if (!k.contains(u) || !k.contains(bb) || !k.contains(cc))
    throw Error(ErrorKind::field_mismatch, "u, B, C must lie in k");
  if (bb.is_zero() || cc.is_zero()) throw Error(ErrorKind::out_of_range, "B and C must be nonzero");
  if (!(bb == -(u * cc))) throw Error(ErrorKind::invalid_model, "B / C must equal -u");
  const P1Point q = spec.q.embed(n);
  if (!q.defined_over(k)) throw Error(ErrorKind::field_mismatch, "q must be a k-point");

  KummerExt ext(k, u, spec.l);
  const KElem s = ext.generator_power(1), one = ext.constant(Rational(1)), zero = ext.constant(Rational(0));
  auto klift = [&](const CycloNum& x) { return ext.constant(lift(x)); };

  std::vector<KElem> lambdas;
  std::vector<int> stabs;
  for (const auto& mu0 : spec.mus) {
    const CycloNum mu = lift(mu0);
    if (!k.contains(mu)) throw Error(ErrorKind::field_mismatch, "mu must lie in k");
    if (mu.is_zero()) throw Error(ErrorKind::out_of_range, "mu must be nonzero");
    lambdas.push_back(ext.constant(mu) * s);
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const KElem& lam = lambdas[i];
    int st = 0;
    for (const auto& h0 : grp.elements()) {
      const Pgl2Elem h = h0.embed(n);
      KElem a = klift(h.a()), b = klift(h.b()), c = klift(h.c()), d = klift(h.d());
      if ((c * lam * lam + (d - a) * lam - b).is_zero()) ++st;
      for (std::size_t j = 0; j < i; ++j) {
        const KElem& mu = lambdas[j];
        if ((lam * (c * mu + d) - (a * mu + b)).is_zero())
          throw Error(ErrorKind::orbit_collision,
                      "mu_" + std::to_string(j + 1) + " and mu_" + std::to_string(i + 1) + " give one orbit");
      }
    }
    if (spec.require_trivial_stabilizer && st > 1)
      throw Error(ErrorKind::stabilizer_not_trivial, "mu_" + std::to_string(i + 1) + " has stabilizer of order " +
                                                         std::to_string(st));
    stabs.push_back(st);
  }

  // P_x: one invariant factor per mu, normalized so its leading coefficient is 1
  std::vector<CycloNum> px{k.one()};
  for (const auto& lam : lambdas) {
    std::vector<KElem> f{one};
    for (const auto& h : grp.elements()) f = poly_mul(f, act_on_linear(h.embed(n), one, -lam, klift), zero);
    auto lead = std::find_if(f.rbegin(), f.rend(), [](const KElem& x) { return !x.is_zero(); });
    const KElem inv = lead->inverse();
    std::vector<CycloNum> fk;
    for (auto& x : f) {
      x = x * inv;
      if (!x.is_base() || !k.contains(x.base_part()))
        throw Error(ErrorKind::invalid_model, "orbit form is not defined over k");
      fk.push_back(x.base_part());
    }
    px = poly_mul(px, fk, k.zero());
  }
  std::vector<CycloNum> orbit_t0{k.one()};
  for (const auto& h : grp.elements())
    orbit_t0 = poly_mul(orbit_t0, act_on_linear(h.embed(n), k.zero(), k.one(), lift), k.zero());
  std::vector<CycloNum> py{k.one()};
  for (std::size_t i = 0; i < lambdas.size(); ++i) py = poly_mul(py, orbit_t0, k.zero());

  auto payload = std::make_shared<EquationPayload>();
  payload->field = k;
  payload->group = grp.type();
  payload->u = u;
  payload->l = spec.l;
  for (const auto& mu : spec.mus) payload->mus.push_back(lift(mu));
  payload->b = bb;
  payload->c = cc;
  payload->q = q;
  payload->px.coeffs = px;
  payload->py.coeffs = py;
  const CycloNum pxq = payload->px.eval(q), pyq = payload->py.eval(q);
  if (pxq.is_zero() || pyq.is_zero())
    throw Error(ErrorKind::vanishing_at_q, "a coefficient form vanishes at q = " + q.str());
  payload->a = -(bb * pyq / pxq);

  payload->quotient_shift = choose_shift(grp);
  for (const auto& lam : lambdas) {
    auto [num, den] = invariant_pair(grp, lam, one, payload->quotient_shift, klift, one);
    if (den.is_zero()) {
      payload->quotient_points.push_back(P1Point::infinity(n));
      continue;
    }
    KElem v = num * den.inverse();
    if (!v.is_base()) throw Error(ErrorKind::invalid_model, "orbit image is not a k-point");
    payload->quotient_points.push_back(P1Point::affine(v.base_part()));
  }

  SurfaceModel m;
  m.group = grp.type();
  m.field = k;
  for (int st : stabs) {
    OrbitDatum o;
    o.orbit_length = grp.order() / st;
    o.stabilizer_order = st;
    o.fibre_kind = FibreKind::singular;
    o.swap = SwapKind::galois;
    m.orbits.push_back(o);
  }
  if (!lambdas.empty()) {
    // smooth fibres over the orbit of (1 : 0); the eigenweight is not determined here
    OrbitDatum o;
    o.points = orbit(P1Point::infinity(grp.conductor()), grp);
    o.orbit_length = static_cast<int>(o.points.size());
    o.stabilizer_order = grp.order() / o.orbit_length;
    m.orbits.push_back(o);
  }
  m.n = singular_fibre_total(m.orbits);
  m.has_k_point = true;
  m.payload = payload;
  return m;
}

ExampleSpec cyclic_example_spec(const FieldSpec& field, int l, const CycloNum& u, const std::vector<CycloNum>& mus,
                                std::optional<P1Point> q) {
  const int n = field.conductor();
  auto xi = CycloNum::root_of_unity_in(n, l);
  if (!xi || !field.contains(*xi))
    throw Error(ErrorKind::missing_root_of_unity, "xi_" + std::to_string(l) + " is not in k");
  ExampleSpec s;
  s.field = field;
  s.g = Pgl2Elem::diag(*xi, field.one());
  s.group = generate_group({s.g});
  s.l = l;
  s.u = field.lift(u);
  s.mus = mus;
  s.b = field.one();
  s.c = -(field.one() / s.u);
  s.q = q ? *q : P1Point(field.one(), field.one());
  return s;
}

// ------------------------------------------------------------ verification

ExampleVerification verify_example(const SurfaceModel& m) {
  ExampleVerification r;
  if (!m.payload) {
    r.failures.push_back("model has no equation payload");
    return r;
  }
  const EquationPayload& p = *m.payload;
  r.n_mu = static_cast<int>(p.mus.size());
  r.n = m.n;
  r.coefficients_in_field = p.coefficients_in_field();
  if (!r.coefficients_in_field) r.failures.push_back("coefficients not in k");
  r.k_point_on_q_fibre = p.k_point_on_q_fibre();
  if (!r.k_point_on_q_fibre) r.failures.push_back("(1:1:0) is not on the fibre over q");
  // all component swaps come from Galois, so contracting one component per fibre
  // over k(u^{1/l}) descends; with the k-point the resulting bundle is rational
  const bool galois_only = std::all_of(m.orbits.begin(), m.orbits.end(), [](const OrbitDatum& o) {
    return o.fibre_kind == FibreKind::smooth || o.swap == SwapKind::galois;
  });
  r.x_rational = galois_only && m.has_k_point.value_or(false);
  if (!r.x_rational) r.failures.push_back("X is not certified rational");
  try {
    r.quotient = quotient_count(m);
  } catch (const Error& e) {
    r.failures.push_back(std::string("quotient count failed: ") + e.what());
    return r;
  }
  r.m_at_least_n_mu = r.quotient.m_lo >= r.n_mu;
  if (!r.m_at_least_n_mu) r.failures.push_back("fewer singular fibres on the quotient than mus");
  if (r.n_mu > 3) {
    r.nonrational_when_large = r.quotient.rationality == Verdict::not_rational;
    if (!r.nonrational_when_large) r.failures.push_back("quotient not shown non-rational");
  }
  r.family_dimension = r.n_mu - 3;
  return r;
}

// ------------------------------------------------------------ stabilized examples

StabilizedExample build_stabilized_example(const FiniteGroup& group, const Pgl2Elem& h0, const Pgl2Elem& g0,
                                           const FieldSpec& field) {
  const int n = field.conductor();
  hypothesis(group.conductor() == n || common_conductor(group.conductor(), n) == n,
             "group and field conductors are incompatible");
  for (const auto& x : group.elements())
    hypothesis(x.embed(n).defined_over(field), "group must be defined over k");
  const Pgl2Elem g = g0.embed(n), h = h0.embed(n);
  hypothesis(group.contains(g0) && group.contains(h0), "g and h must belong to the group");
  hypothesis(g.order() == 2, "g must have order 2");
  const int oh = h.order();
  hypothesis(oh > 1 && oh % 2 == 1, "h must have odd order > 1");
  hypothesis(fixed_points_defined_over(g, field), "fixed points of g must be defined over k");
  hypothesis(!fixed_points_defined_over(h, field), "fixed points of h must not be defined over k");
  const Pgl2Elem conj = g * h * g.inverse();
  bool normalizes = false;
  for (int j = 1; j < oh && !normalizes; ++j) normalizes = conj == h.pow(j);
  hypothesis(normalizes, "g h g^-1 must lie in <h>");

  // coordinates with g = diag(1, -1)
  auto fg = fixed_points(g).points;
  const Pgl2Elem mat(fg[0].t1(), fg[1].t1(), fg[0].t0(), fg[1].t0());
  const Pgl2Elem mi = mat.inverse();
  std::vector<Pgl2Elem> gens;
  for (int idx : group.generator_indices()) gens.push_back(mi * group.elements()[static_cast<std::size_t>(idx)].embed(n) * mat);
  FiniteGroup cg = generate_group(gens);
  const Pgl2Elem g2 = mi * g * mat, h2 = mi * h * mat;

  auto fh = fixed_points(h2).points;
  hypothesis(fh.size() == 2 && !fh[0].is_infinity() && !fh[1].is_infinity(),
             "fixed points of h must be finite after the coordinate change");
  const CycloNum lambda = fh[0].t1();
  hypothesis(fh[1].t1() == -lambda, "g must exchange the fixed points of h");
  const CycloNum u = lambda * lambda;
  hypothesis(field.contains(u) && !field.contains(lambda), "need lambda^2 in k and lambda not in k");

  ExampleSpec spec;
  spec.field = field;
  spec.group = cg;
  spec.g = g2;
  spec.l = 2;
  spec.u = u;
  spec.mus = {field.one()};
  spec.b = field.one();
  spec.c = -(field.one() / u);
  spec.require_trivial_stabilizer = false;
  std::optional<SurfaceModel> model;
  for (int r = 1; r <= 64 && !model; ++r) {
    spec.q = P1Point::affine(field.from_rational(r));
    try {
      model = build_example(spec);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::vanishing_at_q) throw;
    }
  }
  if (!model) throw Error(ErrorKind::vanishing_at_q, "no q = (r : 1) with r <= 64 avoids the forms' zeros");

  StabilizedExample out;
  out.model = *model;
  out.g = g2;
  out.h = h2;
  out.lambda = lambda;
  const P1Point p = P1Point::affine(lambda);
  out.swap_case = classify_swap_mechanism(cg, p, g2, false, P1Point::affine(-lambda));
  out.image_fate = fibre_fate(out.model.orbits.front());
  for (auto& o : out.model.orbits)
    if (o.fibre_kind == FibreKind::singular) o.points = orbit(p, cg);
  return out;
}

StabilizedExample build_stabilized_example(const GroupType& kind, const FieldSpec& field, int h_order) {
  FiniteGroup grp = generate_group(standard_generators(kind, field));
  std::string last = "no element pair in " + kind.label() + " over " + field.label();
  for (std::size_t i = 0; i < grp.elements().size(); ++i) {
    const int oh = grp.element_orders()[i];
    if (oh % 2 == 0 || oh == 1 || (h_order && oh != h_order)) continue;
    for (std::size_t j = 0; j < grp.elements().size(); ++j) {
      if (grp.element_orders()[j] != 2) continue;
      try {
        return build_stabilized_example(grp, grp.elements()[i], grp.elements()[j], field);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::hypothesis_failed) throw;
        last = e.what();
      }
    }
  }
  throw Error(ErrorKind::hypothesis_failed, kind.label() + " over " + field.label() + ": " + last);
}

// ------------------------------------------------------------ families

MuSampler random_mu_sampler(std::uint64_t seed, int n, int bound, int conductor) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng, n, bound, conductor]() {
    std::set<int> picked;
    std::uniform_int_distribution<int> dist(1, bound);
    while (static_cast<int>(picked.size()) < n) picked.insert(dist(*rng));
    std::vector<CycloNum> out;
    for (int v : picked) out.push_back(CycloNum::rational(conductor, v));
    return out;
  };
}

std::vector<SurfaceModel> generate_family(const ExampleSpec& base, int count, const MuSampler& sampler) {
  if (count < 1) throw Error(ErrorKind::out_of_range, "family size must be positive");
  std::vector<SurfaceModel> out;
  std::set<std::vector<CycloNum>> seen;
  for (int draw = 0; draw < 50 * count && static_cast<int>(out.size()) < count; ++draw) {
    ExampleSpec spec = base;
    spec.mus = sampler();
    std::vector<CycloNum> key = spec.mus;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    try {
      out.push_back(build_example(spec));
    } catch (const Error& e) {
      const auto kd = e.kind();
      if (kd != ErrorKind::orbit_collision && kd != ErrorKind::stabilizer_not_trivial && kd != ErrorKind::vanishing_at_q)
        throw;
    }
  }
  if (static_cast<int>(out.size()) < count)
    throw Error(ErrorKind::sampler_exhausted, "only " + std::to_string(out.size()) + " admissible members found");
  return out;
}

}  // namespace conicquot
