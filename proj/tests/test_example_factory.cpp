#include <doctest.h>

#include <random>

#include "conicquot/example_factory.hpp"

using namespace conicquot;

namespace {

std::vector<CycloNum> ints(int conductor, std::vector<int> v) {
  std::vector<CycloNum> out;
  for (int x : v) out.push_back(CycloNum::rational(conductor, x));
  return out;
}

// prod_i (t1^2 - u mu_i^2 t0^2), coefficients of t1^j t0^(deg - j)
std::vector<Rational> c2_oracle(const Rational& u, const std::vector<int>& mus) {
  std::vector<Rational> p{1};
  for (int mu : mus) {
    std::vector<Rational> f{-u * mu * mu, 0, 1};
    std::vector<Rational> out(p.size() + 2, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < 3; ++j) out[i + j] += p[i] * f[j];
    p = out;
  }
  return p;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::parse_error;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("C2 example over Q") {
  FieldSpec q = FieldSpec::named("Q");
  auto spec = cyclic_example_spec(q, 2, q.from_rational(2), ints(1, {1, 2, 3, 4}));
  CHECK(spec.c == q.from_rational(Rational(-1, 2)));
  SurfaceModel m = build_example(spec);
  CHECK(m.n == 8);
  int singular = 0;
  for (const auto& o : m.orbits)
    if (o.fibre_kind == FibreKind::singular) {
      ++singular;
      CHECK(o.orbit_length == 2);
      CHECK(o.swap == SwapKind::galois);
    }
  CHECK(singular == 4);
  const auto& p = *m.payload;
  CHECK(p.px.degree() == 8);
  CHECK(p.py.degree() == 8);
  auto oracle = c2_oracle(2, {1, 2, 3, 4});
  REQUIRE(p.px.coeffs.size() == oracle.size());
  for (std::size_t j = 0; j < oracle.size(); ++j) CHECK(p.px.coeffs[j] == q.from_rational(oracle[j]));
  CHECK(p.coefficients_in_field());
  CHECK(p.k_point_on_q_fibre());
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(p.quotient_points[i] == P1Point::affine(q.from_rational(-2 * static_cast<int>((i + 1) * (i + 1)))));

  auto v = verify_example(m);
  CHECK(v.ok());
  CHECK(v.x_rational);
  CHECK(v.quotient.m_lo == 4);
  CHECK(v.quotient.m_hi == 5);
  CHECK(v.quotient.rationality == Verdict::not_rational);
  CHECK(v.family_dimension == 1);
}

TEST_CASE("example edge cases") {
  FieldSpec q = FieldSpec::named("Q");
  auto empty = build_example(cyclic_example_spec(q, 2, q.from_rational(2), {}));
  CHECK(empty.n == 0);
  auto r = quotient_count(empty);
  CHECK(r.m == 0);
  CHECK(r.rationality == Verdict::rational);

  CHECK(kind_of([&] { build_example(cyclic_example_spec(q, 2, q.from_rational(2), ints(1, {1, -1}))); }) ==
        ErrorKind::orbit_collision);
  CHECK(kind_of([&] { build_example(cyclic_example_spec(q, 2, q.from_rational(4), ints(1, {1}))); }) ==
        ErrorKind::not_irreducible);
  // q = (0 : 1) is a zero of no form, q = (1 : 0) kills P_y
  CHECK(kind_of([&] {
          build_example(cyclic_example_spec(q, 2, q.from_rational(2), ints(1, {1}), P1Point::infinity(1)));
        }) == ErrorKind::vanishing_at_q);

  // t -> -1/t fixes (i : 1), so mu = 1 with u = -1 has a nontrivial stabilizer in D4
  FieldSpec q4 = FieldSpec::named("Q", 4);
  ExampleSpec d4;
  d4.field = q4;
  d4.group = generate_group(standard_generators({GroupKind::dihedral, 2}, q4));
  d4.g = Pgl2Elem::diag(q4.one(), -q4.one());
  d4.u = q4.from_rational(-1);
  d4.mus = ints(4, {1});
  d4.b = q4.one();
  d4.c = q4.one();
  d4.q = P1Point::affine(q4.from_rational(3));
  CHECK(kind_of([&] { build_example(d4); }) == ErrorKind::stabilizer_not_trivial);
  d4.require_trivial_stabilizer = false;
  auto dm = build_example(d4);
  CHECK(dm.orbits.front().stabilizer_order == 2);
}

TEST_CASE("random admissible examples are defined over k") {
  std::mt19937_64 rng(11);
  struct Base {
    FieldSpec k;
    int l;
    std::vector<int> us;
  };
  std::vector<Base> bases{{FieldSpec::named("Q"), 2, {2, 3, 5, 6, 7, -1, -2}},
                          {FieldSpec::named("Q(i)"), 4, {2, 3, 5}},
                          {FieldSpec::named("Q(i*sqrt3)", 12), 6, {2, 5}}};
  int built = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Base& b = bases[static_cast<std::size_t>(trial) % bases.size()];
    const int u = b.us[rng() % b.us.size()];
    const int nmu = 1 + static_cast<int>(rng() % 3);
    auto mus = random_mu_sampler(rng(), nmu, 12, b.k.conductor())();
    auto spec = cyclic_example_spec(b.k, b.l, b.k.from_rational(u), mus,
                                    P1Point::affine(b.k.from_rational(Rational(1 + static_cast<int>(rng() % 5), 7))));
    CAPTURE(b.k.label());
    CAPTURE(u);
    SurfaceModel m;
    try {
      m = build_example(spec);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::orbit_collision);
      continue;
    }
    ++built;
    const auto& p = *m.payload;
    CHECK(p.coefficients_in_field());
    CHECK(p.k_point_on_q_fibre());
    CHECK(p.px.degree() == nmu * b.l);
    CHECK(p.py.degree() == nmu * b.l);
    for (const auto& pt : p.quotient_points) CHECK(pt.defined_over(b.k));
    KummerExt ext(b.k, b.k.from_rational(u), b.l);
    auto s = ext.generator_power(1);
    CHECK(ext.galois(b.l / 2, s) == -s);
    auto v = verify_example(m);
    CHECK(v.ok());
  }
  CHECK(built > 20);
}

TEST_CASE("verification at the boundary") {
  FieldSpec q = FieldSpec::named("Q");
  auto m3 = build_example(cyclic_example_spec(q, 2, q.from_rational(2), ints(1, {1, 2, 3})));
  auto v3 = verify_example(m3);
  CHECK(v3.ok());
  CHECK(v3.quotient.m_lo == 3);
  CHECK(v3.quotient.rationality == Verdict::unknown);
  auto m8 = build_example(cyclic_example_spec(q, 2, q.from_rational(2), ints(1, {1, 2, 3, 4, 5, 6, 7, 8})));
  auto v8 = verify_example(m8);
  CHECK(v8.ok());
  CHECK(v8.quotient.m_lo == 8);
  CHECK(v8.family_dimension == 5);
  CHECK(v8.quotient.rationality == Verdict::not_rational);
}

TEST_CASE("stabilized examples") {
  struct Row {
    GroupType t;
    FieldSpec k;
    int h_order;
    int expected_case;
  };
  std::vector<Row> rows{{{GroupKind::dihedral, 3}, FieldSpec::named("Q", 12), 3, 3},
                        {{GroupKind::dihedral, 5}, FieldSpec::named("Q(cos2pi/5)", 20), 5, 3},
                        {{GroupKind::S4, 0}, FieldSpec::named("Q(i*sqrt2)", 24), 3, 4},
                        {{GroupKind::A5, 0}, FieldSpec::named("Q(i,sqrt5)", 60), 5, 5},
                        {{GroupKind::A5, 0}, FieldSpec::named("Q(i,sqrt5)", 60), 3, 6}};
  for (const auto& row : rows) {
    CAPTURE(row.t.label());
    auto ex = build_stabilized_example(row.t, row.k, row.h_order);
    CHECK(ex.swap_case == row.expected_case);
    CHECK(ex.image_fate.fate == Fate::singular);
    CHECK(ex.g == Pgl2Elem::diag(row.k.one(), -row.k.one()));
    CHECK(ex.h.order() == row.h_order);
    CHECK(ex.model.orbits.front().stabilizer_order == row.h_order);
    CHECK(ex.model.payload->coefficients_in_field());
    CHECK(ex.model.payload->k_point_on_q_fibre());
    CHECK(validate_model(ex.model).empty());
    CHECK(quotient_count(ex.model).m_lo >= 1);
  }
  try {
    build_stabilized_example({GroupKind::A4, 0}, FieldSpec::named("Q(i)", 24));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::hypothesis_failed);
  }
  // oracle for the negative control: no involution of A4 normalizes a subgroup of order 3
  FiniteGroup a4 = generate_group(standard_generators({GroupKind::A4, 0}, FieldSpec::named("Q(i)", 24)));
  for (std::size_t i = 0; i < a4.elements().size(); ++i) {
    if (a4.element_orders()[i] != 3) continue;
    const auto& h = a4.elements()[i];
    for (std::size_t j = 0; j < a4.elements().size(); ++j) {
      if (a4.element_orders()[j] != 2) continue;
      const auto& g = a4.elements()[j];
      const auto c = g * h * g.inverse();
      CHECK_FALSE((c == h || c == h.pow(2)));
    }
  }
}

TEST_CASE("families") {
  FieldSpec q = FieldSpec::named("Q");
  auto base = cyclic_example_spec(q, 2, q.from_rational(2), {});
  auto fam = generate_family(base, 6, random_mu_sampler(3, 8, 40, 1));
  CHECK(fam.size() == 6);
  for (const auto& m : fam) CHECK(m.n == 16);
  CHECK(generate_family(base, 1, random_mu_sampler(4, 8, 40, 1)).size() == 1);
  MuSampler fixed = [] { return ints(1, {1, 2, 3}); };
  CHECK(kind_of([&] { generate_family(base, 2, fixed); }) == ErrorKind::sampler_exhausted);
  CHECK(kind_of([&] { generate_family(base, 0, fixed); }) == ErrorKind::out_of_range);
}

TEST_CASE("form text") {
  FieldSpec q = FieldSpec::named("Q");
  auto m = build_example(cyclic_example_spec(q, 2, q.from_rational(2), ints(1, {1})));
  CHECK(m.payload->px.str() == "t1^2 - 2*t0^2");
}
