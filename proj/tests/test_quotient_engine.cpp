#include <doctest.h>

#include <random>
#include <set>

#include "conicquot/quotient_engine.hpp"

using namespace conicquot;

namespace {

OrbitDatum orbit(int len, int stab, FibreKind kind, SwapKind swap = SwapKind::none, std::optional<int> w = {}) {
  OrbitDatum o;
  o.orbit_length = len;
  o.stabilizer_order = stab;
  o.fibre_kind = kind;
  o.swap = swap;
  o.weight = w;
  return o;
}

SurfaceModel model(GroupType g, std::vector<OrbitDatum> orbits, std::optional<bool> kpt = true) {
  SurfaceModel s;
  s.group = g;
  s.orbits = std::move(orbits);
  s.n = singular_fibre_total(s.orbits);
  s.has_k_point = kpt;
  return s;
}

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == rule; });
}

const GroupType C2{GroupKind::cyclic, 2};
const GroupType D6{GroupKind::dihedral, 3};

}  // namespace

TEST_CASE("model validation") {
  CHECK(validate_model(model(C2, {})).empty());
  CHECK(has_rule(validate_model(model(C2, {orbit(1, 2, FibreKind::singular)})), "even_stabilizer_singular"));
  CHECK(has_rule(validate_model(model(D6, {orbit(2, 3, FibreKind::singular, SwapKind::group_only)})),
                 "group_only_swap"));
  CHECK(has_rule(validate_model(model(D6, {orbit(3, 3, FibreKind::singular)})), "orbit_stabilizer"));
  CHECK(has_rule(validate_model(model({GroupKind::cyclic, 3}, {orbit(1, 3, FibreKind::smooth), orbit(1, 3, FibreKind::smooth),
                                                               orbit(1, 3, FibreKind::smooth)})),
                 "orbit_table"));
  CHECK(has_rule(validate_model(model({GroupKind::cyclic, 5}, {orbit(1, 5, FibreKind::smooth, SwapKind::galois, 1)})),
                 "palindrome") == false);  // odd stabilizer, weight is irrelevant
  CHECK(has_rule(validate_model(model({GroupKind::cyclic, 4}, {orbit(1, 4, FibreKind::smooth, SwapKind::galois, 1)})),
                 "palindrome"));
  auto s = model(C2, {orbit(2, 1, FibreKind::singular, SwapKind::galois)});
  s.n = 3;
  CHECK(has_rule(validate_model(s), "n_mismatch"));
  try {
    quotient_count(s);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_model);
  }
}

TEST_CASE("fibre fates") {
  CHECK(fibre_fate(orbit(2, 3, FibreKind::singular, SwapKind::none, 1)).fate == Fate::singular);
  CHECK(fibre_fate(orbit(1, 5, FibreKind::smooth, SwapKind::none, 2)).fate == Fate::smooth);
  auto f = fibre_fate(orbit(1, 2, FibreKind::smooth, SwapKind::galois, 1));
  CHECK(f.fate == Fate::singular);
  CHECK(f.fate == contract_chain(make_chain({-2, -1, -2}, true)).fate);
  CHECK(fibre_fate(orbit(1, 2, FibreKind::smooth, SwapKind::none, 1)).fate == Fate::smooth);
  CHECK(fibre_fate(orbit(2, 1, FibreKind::singular, SwapKind::galois)).fate == Fate::singular);
  CHECK(fibre_fate(orbit(2, 1, FibreKind::singular, SwapKind::none)).fate == Fate::smooth);
  try {
    fibre_fate(orbit(1, 4, FibreKind::smooth));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::missing_weight);
  }
  // odd stabilizers: fate fixed regardless of weight and swap
  for (int st = 3; st <= 15; st += 2)
    for (int w = 1; w < st; ++w) {
      CHECK(fibre_fate(orbit(1, st, FibreKind::singular, SwapKind::galois, w)).fate == Fate::singular);
      CHECK(fibre_fate(orbit(1, st, FibreKind::smooth, SwapKind::galois, w)).fate == Fate::smooth);
    }
}

TEST_CASE("table rows") {
  auto v = table1_bound({GroupKind::A4, 0}, {2, 1, 1, 0});
  CHECK(v.n == 20);
  CHECK(v.m == 4);
  auto z = table1_bound({GroupKind::cyclic, 5}, {});
  CHECK(z.n == 0);
  CHECK(z.m == 0);
  try {
    table1_bound({GroupKind::S4, 0}, {2, 0, 0, 0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::condition_violated);
  }
  CHECK_THROWS_AS(table1_bound({GroupKind::cyclic, 4}, {0, 0, 1, 0}), Error);
  CHECK(table1_bound({GroupKind::A5, 0}, {1, 1, 1, 2}).n == 12 + 20 + 120);
  CHECK(table1_bound({GroupKind::dihedral, 4}, {1, 2, 1, 0}).n == 8);
  CHECK(table1_bound({GroupKind::dihedral, 5}, {1, 2, 1, 0}).n == 12);
  CHECK(table1_bound({GroupKind::cyclic, 7}, {2, 3, 0, 0}).n == 23);
}

TEST_CASE("quotient count examples") {
  auto s = model(C2, {});
  for (int i = 0; i < 4; ++i) s.orbits.push_back(orbit(2, 1, FibreKind::singular, SwapKind::galois));
  s.n = 8;
  auto r = quotient_count(s);
  CHECK(r.n == 8);
  CHECK(r.m == 4);
  CHECK(r.k_y2 == 4);
  CHECK(r.table1.m == 4);
  CHECK(r.rationality == Verdict::not_rational);

  auto e = quotient_count(model(C2, {}));
  CHECK(e.m == 0);
  CHECK(e.rationality == Verdict::rational);
  CHECK(quotient_count(model(C2, {}, false)).rationality == Verdict::not_rational);
  CHECK(quotient_count(model(C2, {}, std::nullopt)).rationality == Verdict::unknown);

  auto d = quotient_count(model(D6, {orbit(2, 3, FibreKind::singular), orbit(6, 1, FibreKind::singular, SwapKind::galois)}));
  CHECK(d.n == 8);
  CHECK(d.m == 2);
  CHECK(d.counts == Table1Counts{1, 0, 1, 0});
  CHECK(d.table1.n == 8);

  // unknown weights give a range
  auto u = quotient_count(model(C2, {orbit(1, 2, FibreKind::smooth), orbit(1, 2, FibreKind::smooth),
                                     orbit(2, 1, FibreKind::singular, SwapKind::galois),
                                     orbit(2, 1, FibreKind::singular, SwapKind::galois)}));
  CHECK(u.m_lo == 2);
  CHECK(u.m_hi == 4);
  CHECK_FALSE(u.m.has_value());
  CHECK(u.rationality == Verdict::unknown);
}

TEST_CASE("rationality verdict") {
  for (int lo = 0; lo <= 8; ++lo)
    for (int hi = lo; hi <= 8; ++hi)
      for (std::optional<bool> k : {std::optional<bool>(true), std::optional<bool>(false), std::optional<bool>()}) {
        Verdict v = rationality_verdict(lo, hi, k);
        if (lo == hi) {
          const bool rat = lo <= 3 && k == true;
          CHECK((v == Verdict::rational) == rat);
          if (k.has_value()) CHECK((v == Verdict::not_rational) == !rat);
        }
      }
}

TEST_CASE("random valid models stay under the table bound") {
  std::mt19937 rng(7);
  std::vector<GroupType> groups;
  for (int k = 2; k <= 8; ++k) {
    groups.push_back({GroupKind::cyclic, k});
    groups.push_back({GroupKind::dihedral, k});
  }
  groups.push_back({GroupKind::A4, 0});
  groups.push_back({GroupKind::S4, 0});
  groups.push_back({GroupKind::A5, 0});
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const GroupType g = groups[rng() % groups.size()];
    std::vector<OrbitDatum> orbits;
    for (const auto& [len, st] : [&] {
           std::vector<std::pair<int, int>> v;
           for (int len : expected_orbit_table(g)) v.push_back({len, g.order() / len});
           return v;
         }()) {
      if (rng() % 2) continue;
      if (st % 2 == 1) {
        orbits.push_back(orbit(len, st, rng() % 2 ? FibreKind::singular : FibreKind::smooth));
      } else {
        OrbitDatum o = orbit(len, st, FibreKind::smooth);
        const int mode = static_cast<int>(rng() % 3);
        if (mode == 1) o.weight = 1 + static_cast<int>(rng() % static_cast<unsigned>(st - 1));
        if (mode == 2) {
          o.weight = st / 2;
          o.swap = SwapKind::galois;
        }
        orbits.push_back(o);
      }
    }
    const int generic = static_cast<int>(rng() % 3);
    for (int i = 0; i < generic; ++i)
      orbits.push_back(orbit(g.order(), 1, FibreKind::singular, rng() % 2 ? SwapKind::galois : SwapKind::none));
    auto s = model(g, orbits);
    CAPTURE(g.label());
    REQUIRE(validate_model(s).empty());
    auto r = quotient_count(s);
    CHECK(r.m_hi <= r.table1.m);
    CHECK(r.n >= r.table1.n);
    CHECK(theorem_bullets_hold(g, r.table1.n, r.table1.m));
    ++checked;
  }
  CHECK(checked == 3000);
}

TEST_CASE("theorem scan") {
  auto rep = check_theorem_cbundle(10, 12, 4);
  CHECK(rep.instances > 0);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.instances == static_cast<long>(enumerate_table1(10, 12).size()));
  CHECK(theorem_bullets_hold(C2, 4, 4));
  CHECK(theorem_bullets_hold({GroupKind::dihedral, 2}, 4, 4));
  CHECK_FALSE(theorem_bullets_hold({GroupKind::cyclic, 4}, 4, 4));
  CHECK_FALSE(theorem_bullets_hold(C2, 3, 4));
  CHECK_FALSE(theorem_bullets_hold(C2, 5, 6));
  // the equality case is reached
  bool seen = false;
  for (const auto& inst : enumerate_table1(4, 8))
    if (inst.value.n == 4 && inst.value.m == 4) seen = true;
  CHECK(seen);
}

TEST_CASE("swap mechanism, symbolic") {
  SwapQuery q;
  q.group = {GroupKind::dihedral, 5};
  q.stabilizer_order = 5;
  q.g_order = 2;
  CHECK(classify_swap_mechanism(q) == 3);
  q.galois_alone = true;
  CHECK(classify_swap_mechanism(q) == 1);
  q = {{GroupKind::A5, 0}, 3, 2, false, true, true};
  CHECK(classify_swap_mechanism(q) == 6);
  q.stabilizer_order = 5;
  CHECK(classify_swap_mechanism(q) == 5);
  q = {{GroupKind::S4, 0}, 3, 2, false, true, true};
  CHECK(classify_swap_mechanism(q) == 4);
  q = {{GroupKind::cyclic, 4}, 1, 4, false, true, true};
  CHECK(classify_swap_mechanism(q) == 2);
  q = {{GroupKind::A4, 0}, 3, 2, false, true, true};
  try {
    classify_swap_mechanism(q);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_case_matches);
  }
}

TEST_CASE("swap mechanism, concrete groups") {
  struct Rep {
    GroupType t;
    FieldSpec k;
  };
  std::vector<Rep> reps{{{GroupKind::dihedral, 3}, FieldSpec::named("Q", 12)},
                        {{GroupKind::dihedral, 5}, FieldSpec::named("Q(cos2pi/5)", 20)},
                        {{GroupKind::S4, 0}, FieldSpec::named("Q(i)", 24)},
                        {{GroupKind::A5, 0}, FieldSpec::named("Q(i,sqrt5)", 60)}};
  std::set<int> cases;
  for (const auto& rep : reps) {
    FiniteGroup g = generate_group(standard_generators(rep.t, rep.k));
    const int c = g.conductor();
    for (const auto& o : special_orbits(g)) {
      if (o.stabilizer_order % 2 == 0) continue;
      const P1Point& p = o.points.front();
      FiniteGroup st = stabilizer(p, g);
      int tried = 0;
      for (std::size_t i = 0; i < g.elements().size(); ++i) {
        const auto& x = g.elements()[i];
        if (g.element_orders()[i] != 2) continue;
        bool normalizes = true;
        for (const auto& h : st.elements()) normalizes = normalizes && st.contains(x * h * x.inverse());
        if (!normalizes) continue;
        CAPTURE(rep.t.label());
        const int cs = classify_swap_mechanism(g, p, x, false, x.apply(p));
        CHECK(cs >= 3);
        cases.insert(cs);
        ++tried;
      }
      CHECK(tried > 0);
    }
    // trivial stabilizer: gamma p = g^{-1} p
    P1Point gen = P1Point::affine(CycloNum::rational(c, Rational(7, 11)));
    REQUIRE(stabilizer(gen, g).order() == 1);
    for (std::size_t i = 1; i < g.elements().size(); ++i) {
      const auto& x = g.elements()[i];
      const int cs = classify_swap_mechanism(g, gen, x, false, x.inverse().apply(gen));
      CHECK(cs == (g.element_orders()[i] % 2 == 0 ? 2 : 1));
    }
  }
  CHECK(cases == std::set<int>{3, 4, 5, 6});
}

TEST_CASE("reduction to 2-groups") {
  auto group = [](GroupType t) {
    std::string name = t.kind == GroupKind::cyclic ? "Q(xi_" + std::to_string(t.param) + ")"
                       : t.param == 2                ? "Q"
                                                     : "Q(cos2pi/" + std::to_string(t.param) + ")";
    return generate_group(standard_generators(t, FieldSpec::named(name, standard_conductor(t))));
  };
  auto r12 = reduce_group(group({GroupKind::cyclic, 12}));
  CHECK(r12.normal_order == 3);
  CHECK(r12.quotient == GroupType{GroupKind::cyclic, 4});
  auto r8 = reduce_group(group({GroupKind::cyclic, 8}));
  CHECK(r8.normal_order == 1);
  CHECK(r8.quotient == GroupType{GroupKind::cyclic, 8});
  FiniteGroup d12 = group({GroupKind::dihedral, 6});
  auto rd = reduce_group(d12);
  CHECK(rd.normal_order == 3);
  CHECK(rd.quotient == GroupType{GroupKind::dihedral, 2});
  CHECK(coset_quotient_type(d12, rd.normal_subgroup) == rd.quotient);
  for (int k = 2; k <= 12; ++k)
    for (GroupKind kind : {GroupKind::cyclic, GroupKind::dihedral}) {
      FiniteGroup g = group({kind, k});
      auto r = reduce_group(g);
      CAPTURE(g.type().label());
      CHECK(r.normal_order % 2 == 1);
      CHECK(coset_quotient_type(g, r.normal_subgroup) == r.quotient);
      CHECK((r.quotient.order() & (r.quotient.order() - 1)) == 0);
    }
  FiniteGroup a5 = generate_group(standard_generators({GroupKind::A5, 0}, FieldSpec::named("Q(i,sqrt5)", 60)));
  CHECK(reduce_group(a5).normal_order == 1);
}

TEST_CASE("swap parity") {
  CHECK(swap_parity_check(3, true) == std::optional<bool>(true));
  CHECK_FALSE(swap_parity_check(2, true).has_value());
  CHECK(swap_parity_check(5, false) == std::optional<bool>(false));
  for (int o = 1; o <= 15; o += 2) {
    CHECK(swap_parity_check(o, true) == std::optional<bool>(true));
    CHECK(swap_parity_check(o, false) == std::optional<bool>(false));
  }
}
