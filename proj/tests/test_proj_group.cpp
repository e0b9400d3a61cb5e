#include <doctest.h>

#include <complex>
#include <map>
#include <numbers>

#include "conicquot/proj_group.hpp"

using namespace conicquot;

namespace {

std::complex<double> eval(const CycloNum& x) {
  std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi / x.conductor()), acc = 0.0, pw = 1.0;
  for (const auto& c : x.coeffs()) {
    acc += c.get_d() * pw;
    pw *= w;
  }
  return acc;
}

struct Rep {
  GroupType type;
  FieldSpec field;
};

std::vector<Rep> standard_reps() {
  std::vector<Rep> reps;
  for (int k = 2; k <= 12; ++k) {
    GroupType c{GroupKind::cyclic, k};
    reps.push_back({c, FieldSpec::named("Q(xi_" + std::to_string(k) + ")", standard_conductor(c))});
    GroupType d{GroupKind::dihedral, k};
    reps.push_back({d, k == 2 ? FieldSpec::named("Q", standard_conductor(d))
                              : FieldSpec::named("Q(cos2pi/" + std::to_string(k) + ")", standard_conductor(d))});
  }
  reps.push_back({{GroupKind::A4, 0}, FieldSpec::named("Q(i)", 24)});
  reps.push_back({{GroupKind::S4, 0}, FieldSpec::named("Q(i)", 24)});
  reps.push_back({{GroupKind::S4, 0}, FieldSpec::named("Q(i*sqrt2)", 24)});
  reps.push_back({{GroupKind::A5, 0}, FieldSpec::named("Q(i,sqrt5)", 60)});
  return reps;
}

}  // namespace

TEST_CASE("P1 normalization and action") {
  CycloNum two = CycloNum::rational(4, 2);
  P1Point p(two, two);
  CHECK(p == P1Point::affine(CycloNum::rational(4, 1)));
  CHECK(P1Point(two, CycloNum(4)) == P1Point::infinity(4));
  CHECK_THROWS_AS(P1Point(CycloNum(4), CycloNum(4)), Error);
  Pgl2Elem s(CycloNum(4), CycloNum::rational(4, 1), CycloNum::rational(4, 1), CycloNum(4));
  CHECK(s.apply(P1Point::infinity(4)) == P1Point::affine(CycloNum(4)));
  // canonical form: scalar multiples coincide
  Pgl2Elem g1(two, CycloNum::i(4), CycloNum::rational(4, 1), two);
  Pgl2Elem g2(two * CycloNum::i(4), CycloNum::rational(4, -1), CycloNum::i(4), two * CycloNum::i(4));
  CHECK(g1 == g2);
}

TEST_CASE("standard generators") {
  auto c5 = standard_generators({GroupKind::cyclic, 5}, FieldSpec::named("Q(xi_5)"));
  REQUIRE(c5.size() == 1);
  CHECK(c5[0] == Pgl2Elem::diag(CycloNum::root_of_unity(5, 1), CycloNum::rational(5, 1)));

  FieldSpec qis2 = FieldSpec::named("Q(i*sqrt2)", 24);
  auto s4 = standard_generators({GroupKind::S4, 0}, qis2);
  REQUIRE(s4.size() == 3);
  CycloNum is2 = qis2.generators().front();
  CHECK(s4[2] == Pgl2Elem(-is2, qis2.zero(), qis2.from_rational(2), is2));

  try {
    standard_generators({GroupKind::A4, 0}, FieldSpec());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::missing_constant);
  }
  try {
    standard_generators({GroupKind::cyclic, 3}, FieldSpec::named("Q", 12));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::missing_constant);
  }
}

TEST_CASE("generation and classification") {
  for (const auto& rep : standard_reps()) {
    CAPTURE(rep.type.label());
    CAPTURE(rep.field.label());
    FiniteGroup g = generate_group(standard_generators(rep.type, rep.field));
    CHECK(g.order() == rep.type.order());
    CHECK(classify_group(g) == rep.type);
    for (const auto& x : g.elements()) CHECK(x.defined_over(rep.field));
    // closure and inverses
    for (const auto& x : g.elements()) CHECK(g.contains(x.inverse()));
  }
  try {
    generate_group({Pgl2Elem::diag(CycloNum::rational(1, 2), CycloNum::rational(1, 1))});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_finite);
  }
  // D_6 from the explicit dihedral generators with k = 3
  FiniteGroup d6 = generate_group(standard_generators({GroupKind::dihedral, 3}, FieldSpec::named("Q", 12)));
  CHECK(classify_group(d6).label() == "D_6");
}

TEST_CASE("action is a group action") {
  FieldSpec k = FieldSpec::named("Q(i)", 24);
  FiniteGroup g = generate_group(standard_generators({GroupKind::S4, 0}, k));
  std::vector<P1Point> pts{P1Point::infinity(24), P1Point::affine(k.from_rational(Rational(3, 7))),
                           P1Point::affine(k.from_rational(2) + CycloNum::i(24))};
  for (std::size_t a = 0; a < g.elements().size(); a += 5)
    for (std::size_t b = 0; b < g.elements().size(); b += 3)
      for (const auto& p : pts) {
        const auto& x = g.elements()[a];
        const auto& y = g.elements()[b];
        CHECK((x * y).apply(p) == x.apply(y.apply(p)));
      }
}

TEST_CASE("fixed points") {
  FieldSpec q5 = FieldSpec::named("Q(xi_5)");
  auto r5 = standard_generators({GroupKind::cyclic, 5}, q5)[0];
  auto fp = fixed_points(r5);
  REQUIRE(fp.points.size() == 2);
  CHECK(std::count(fp.points.begin(), fp.points.end(), P1Point::infinity(5)) == 1);
  CHECK(std::count(fp.points.begin(), fp.points.end(), P1Point::affine(CycloNum(5))) == 1);
  CHECK(fixed_points_defined_over(r5, q5));

  Pgl2Elem s(CycloNum(1), CycloNum::rational(1, 1), CycloNum::rational(1, 1), CycloNum(1));
  auto fs = fixed_points(s);
  REQUIRE(fs.points.size() == 2);
  CHECK(fs.points[0] == P1Point::affine(CycloNum::rational(1, -1)));
  CHECK(fs.points[1] == P1Point::affine(CycloNum::rational(1, 1)));
  CHECK(fixed_points_defined_over(s, FieldSpec()));

  FieldSpec qis2 = FieldSpec::named("Q(i*sqrt2)", 24);
  auto ij = standard_generators({GroupKind::S4, 0}, qis2)[2];
  auto fij = fixed_points(ij);
  REQUIRE(fij.points.size() == 2);
  CycloNum is2 = qis2.generators().front();
  CHECK(std::count(fij.points.begin(), fij.points.end(), P1Point::affine(qis2.zero())) == 1);
  CHECK(std::count(fij.points.begin(), fij.points.end(), P1Point::affine(-is2)) == 1);

  // rotation of order 5 over the real subfield: fixed points not rational
  FieldSpec c5 = FieldSpec::named("Q(cos2pi/5)", 20);
  auto rt = standard_generators({GroupKind::dihedral, 5}, c5)[0];
  CHECK(rt.order() == 5);
  CHECK_FALSE(fixed_points_defined_over(rt, c5));

  CHECK(fixed_points(Pgl2Elem::identity(4)).all);
  // an element whose fixed points need sqrt 2
  Pgl2Elem need(CycloNum(1), CycloNum::rational(1, 2), CycloNum::rational(1, 1), CycloNum(1));
  try {
    fixed_points(need);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::needs_larger_field);
  }
}

TEST_CASE("fixed points are numerically fixed and shared within cyclic subgroups") {
  for (const auto& rep : standard_reps()) {
    CAPTURE(rep.type.label());
    FiniteGroup g = generate_group(standard_generators(rep.type, rep.field));
    std::map<P1Point, std::vector<int>> owners;
    std::vector<std::vector<P1Point>> fps(g.elements().size());
    for (std::size_t i = 1; i < g.elements().size(); ++i) {
      const auto& x = g.elements()[i];
      auto fp = fixed_points(x);
      REQUIRE(fp.points.size() == 2);
      fps[i] = fp.points;
      for (const auto& p : fp.points) {
        owners[p].push_back(static_cast<int>(i));
        std::complex<double> a = eval(x.a()), b = eval(x.b()), c = eval(x.c()), d = eval(x.d());
        std::complex<double> t1 = eval(p.t1()), t0 = eval(p.t0());
        std::complex<double> u1 = a * t1 + b * t0, u0 = c * t1 + d * t0;
        CHECK(std::abs(u1 * t0 - u0 * t1) < 1e-8 * (1 + std::abs(u1) + std::abs(u0)));
      }
    }
    // elements sharing one fixed point share both
    for (const auto& [p, idx] : owners) {
      for (int i : idx)
        for (int j : idx) CHECK(fps[j] == fps[i]);
    }
  }
}

TEST_CASE("fixed-point definability matches the root-of-unity criterion") {
  for (const auto& rep : standard_reps()) {
    CAPTURE(rep.type.label());
    CAPTURE(rep.field.label());
    FiniteGroup g = generate_group(standard_generators(rep.type, rep.field));
    for (std::size_t i = 0; i < g.elements().size(); ++i) {
      int m = g.element_orders()[i];
      if (m <= 2) continue;
      CHECK(fixed_points_defined_over(g.elements()[i], rep.field) == contains_root_of_unity(rep.field, m));
    }
  }
}

TEST_CASE("special orbit tables") {
  for (const auto& rep : standard_reps()) {
    CAPTURE(rep.type.label());
    FiniteGroup g = generate_group(standard_generators(rep.type, rep.field));
    CHECK(special_orbit_table(g) == expected_orbit_table(rep.type));
    for (const auto& o : special_orbits(g)) {
      CHECK(o.points.size() * o.stabilizer_order == static_cast<std::size_t>(g.order()));
      FiniteGroup st = stabilizer(o.points.front(), g);
      CHECK(st.order() == o.stabilizer_order);
      CHECK(st.type().kind == GroupKind::cyclic);
    }
  }
  FieldSpec k = FieldSpec::named("Q(i)", 24);
  FiniteGroup a4 = generate_group(standard_generators({GroupKind::A4, 0}, k));
  for (std::size_t i = 0; i < a4.elements().size(); ++i) {
    if (a4.element_orders()[i] != 3) continue;
    auto p = fixed_points(a4.elements()[i]).points.front();
    CHECK(orbit(p, a4).size() == 4);
    break;
  }
  FiniteGroup a5 = generate_group(standard_generators({GroupKind::A5, 0}, FieldSpec::named("Q(i,sqrt5)", 60)));
  for (std::size_t i = 0; i < a5.elements().size(); ++i) {
    if (a5.element_orders()[i] != 2) continue;
    auto p = fixed_points(a5.elements()[i]).points.front();
    CHECK(orbit(p, a5).size() == 30);
    break;
  }
  FiniteGroup triv = generate_group({Pgl2Elem::identity(4)});
  CHECK(orbit(P1Point::infinity(4), triv).size() == 1);
}
