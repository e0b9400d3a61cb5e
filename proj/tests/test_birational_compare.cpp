#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "conicquot/birational_compare.hpp"

using namespace conicquot;

namespace {

P1Point pt(int n, const Rational& t) { return P1Point::affine(CycloNum::rational(n, t)); }

std::vector<CycloNum> ints(std::vector<int> v) {
  std::vector<CycloNum> out;
  for (int x : v) out.push_back(CycloNum::rational(1, x));
  return out;
}

SurfaceModel c2_model(std::vector<int> mus, int conductor = 1) {
  FieldSpec k = FieldSpec::named("Q", conductor);
  std::vector<CycloNum> m;
  for (int x : mus) m.push_back(k.from_rational(x));
  return build_example(cyclic_example_spec(k, 2, k.from_rational(2), m));
}

Pgl2Elem random_rational_mobius(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> d(-6, 6);
  for (;;) {
    const int a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (a * e - b * c != 0)
      return Pgl2Elem(CycloNum::rational(n, a), CycloNum::rational(n, b), CycloNum::rational(n, c),
                      CycloNum::rational(n, e));
  }
}

// Exhaustive oracle: all ordered triples of A against all of B, no early exit.
int count_matching_maps(const FibreLocus& a, const FibreLocus& b) {
  int hits = 0;
  const auto& pa = a.points();
  const auto& pb = b.points();
  for (std::size_t i = 0; i < pb.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j)
      for (std::size_t l = 0; l < pb.size(); ++l) {
        if (i == j || j == l || i == l) continue;
        auto phi = mobius_from_triples(pa[0], pa[1], pa[2], pb[i], pb[j], pb[l]);
        if (!phi.defined_over(a.field())) continue;
        std::vector<P1Point> img;
        for (const auto& p : pa) img.push_back(phi.apply(p));
        std::sort(img.begin(), img.end());
        if (img == pb) ++hits;
      }
  return hits;
}

}  // namespace

TEST_CASE("moebius from triples") {
  const P1Point z = pt(1, 0), o = pt(1, 1), inf = P1Point::infinity(1);
  CHECK(mobius_from_triples(z, o, inf, z, o, inf).is_identity());
  auto half = mobius_from_triples(z, pt(1, 2), inf, z, o, inf);
  CHECK(half == Pgl2Elem::diag(CycloNum::rational(1, 1), CycloNum::rational(1, 2)));
  auto flip = mobius_from_triples(z, o, inf, o, z, inf);
  CHECK(flip.apply(z) == o);
  CHECK(flip.apply(o) == z);
  CHECK(flip.apply(inf) == inf);
  CHECK(flip.apply(pt(1, 5)) == pt(1, -4));
  CHECK_THROWS_AS(mobius_from_triples(z, z, inf, z, o, inf), Error);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto m = random_rational_mobius(rng, 1);
    P1Point a = pt(1, Rational(1, 3)), b = pt(1, 7), c = inf;
    CHECK(mobius_from_triples(a, b, c, m.apply(a), m.apply(b), m.apply(c)) == m);
  }
}

TEST_CASE("loci equivalence basics") {
  FieldSpec q = FieldSpec::named("Q");
  std::vector<P1Point> pts;
  for (int v : {0, 1, 3, 7, 12, 20, -5, 9}) pts.push_back(pt(1, v));
  FibreLocus a(pts, q);
  auto id = loci_equivalent(a, a);
  REQUIRE(id);
  for (const auto& p : a.points()) CHECK(std::binary_search(a.points().begin(), a.points().end(), id->apply(p)));

  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    auto phi0 = random_rational_mobius(rng, 1);
    std::vector<P1Point> img;
    for (const auto& p : pts) img.push_back(phi0.apply(p));
    FibreLocus b(img, q);
    auto phi = loci_equivalent(a, b);
    REQUIRE(phi);
    std::vector<P1Point> got;
    for (const auto& p : a.points()) got.push_back(phi->apply(p));
    std::sort(got.begin(), got.end());
    CHECK(got == b.points());
  }
  CHECK_FALSE(loci_equivalent(a, FibreLocus({pt(1, 0), pt(1, 1), pt(1, 2)}, q)));
  CHECK_THROWS_AS(loci_equivalent(a, FibreLocus(pts, FieldSpec::named("Q(i)"))), Error);
  // a set missing a conjugate is rejected
  CHECK_THROWS_AS(FibreLocus({P1Point::affine(CycloNum::i(4))}, FieldSpec::named("Q", 4)), Error);
}

TEST_CASE("base loci of two family members") {
  FieldSpec q8 = FieldSpec::named("Q", 8);
  auto m1 = c2_model({1, 2, 3, 4}, 8);
  auto m2 = c2_model({1, 2, 3, 5}, 8);
  auto spec = cyclic_example_spec(q8, 2, q8.from_rational(2), {});
  FibreLocus a = base_locus(m1, spec.group), b = base_locus(m2, spec.group);
  CHECK(a.size() == 8);
  CHECK(b.size() == 8);
  CHECK_FALSE(loci_equivalent(a, b).has_value());
  CHECK(count_matching_maps(a, b) == 0);
  CHECK(count_matching_maps(a, a) >= 1);
  // scaling all mus by 2 is t -> 2t on B
  auto m3 = c2_model({2, 4, 6, 8}, 8);
  auto phi = loci_equivalent(a, base_locus(m3, spec.group));
  REQUIRE(phi);
}

TEST_CASE("equivalence relation and equivariance") {
  FieldSpec q = FieldSpec::named("Q");
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    std::vector<P1Point> pts;
    std::set<int> used;
    while (used.size() < 8) used.insert(static_cast<int>(rng() % 60) - 30);
    for (int v : used) pts.push_back(pt(1, v));
    FibreLocus a(pts, q);
    auto f = random_rational_mobius(rng, 1), g = random_rational_mobius(rng, 1);
    std::vector<P1Point> pb, pc;
    for (const auto& p : pts) pb.push_back(f.apply(p));
    for (const auto& p : pb) pc.push_back(g.apply(p));
    FibreLocus b(pb, q), c(pc, q);
    CHECK(loci_equivalent(a, a));
    auto ab = loci_equivalent(a, b);
    auto ba = loci_equivalent(b, a);
    CHECK(ab.has_value() == ba.has_value());
    CHECK(loci_equivalent(a, c).has_value() == (ab && loci_equivalent(b, c)));
    // equivariance under psi on both sides, with an unrelated target
    std::vector<P1Point> other;
    for (int v = 0; v < 8; ++v) other.push_back(pt(1, v * v + 1));
    FibreLocus d(other, q);
    auto psi = random_rational_mobius(rng, 1);
    auto moved = [&](const FibreLocus& x) {
      std::vector<P1Point> v;
      for (const auto& p : x.points()) v.push_back(psi.apply(p));
      return FibreLocus(v, q);
    };
    CHECK(loci_equivalent(moved(a), moved(b)).has_value() == ab.has_value());
    CHECK(loci_equivalent(moved(a), moved(d)).has_value() == loci_equivalent(a, d).has_value());
  }
}

TEST_CASE("quotient loci and the choice of invariant map") {
  FieldSpec q8 = FieldSpec::named("Q", 8);
  auto spec = cyclic_example_spec(q8, 2, q8.from_rational(2), {});
  auto m1 = c2_model({1, 2, 3, 4, 5, 6, 7, 8}, 8);
  auto m2 = c2_model({1, 2, 3, 4, 5, 6, 7, 9}, 8);
  auto m3 = c2_model({2, 4, 6, 8, 10, 12, 14, 16}, 8);
  for (int r : {0, 1, 3}) {
    CAPTURE(r);
    auto a = quotient_locus(m1, spec.group, r), b = quotient_locus(m2, spec.group, r),
         c = quotient_locus(m3, spec.group, r);
    CHECK(a.size() == 8);
    CHECK(loci_equivalent(a, b).has_value() == loci_equivalent(quotient_locus(m1), quotient_locus(m2)).has_value());
    CHECK(loci_equivalent(a, c).has_value() == loci_equivalent(quotient_locus(m1), quotient_locus(m3)).has_value());
    CHECK(loci_equivalent(a, c).has_value());
  }
  CHECK(quotient_locus(m1).points() == quotient_locus(m1, spec.group, 0).points());
}

TEST_CASE("pairwise inequivalence of families") {
  FieldSpec q = FieldSpec::named("Q");
  auto base = cyclic_example_spec(q, 2, q.from_rational(2), {});
  auto single = pairwise_inequivalence(generate_family(base, 1, random_mu_sampler(1, 8, 40, 1)));
  REQUIRE(single.size() == 1);
  CHECK(single[0][0].verdict == Equivalence::equivalent);

  int equivalent_pairs = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto fam = generate_family(base, 6, random_mu_sampler(seed, 8, 60, 1));
    auto mat = pairwise_inequivalence(fam, 2);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        if (i == j) continue;
        if (mat[i][j].verdict != Equivalence::inequivalent) ++equivalent_pairs;
      }
  }
  CHECK(equivalent_pairs == 0);

  // planted: t -> 3t commutes with the group, so mus scaled by 3 give an equivalent member
  std::vector<SurfaceModel> planted{c2_model({1, 2, 4, 5, 7, 11, 13, 17}), c2_model({3, 6, 12, 15, 21, 33, 39, 51})};
  auto pm = pairwise_inequivalence(planted);
  CHECK(pm[0][1].verdict == Equivalence::equivalent);
  REQUIRE(pm[0][1].witness);
  CHECK(pm[1][0].verdict == Equivalence::equivalent);

  // fewer than 8 points: no conclusion
  auto small = pairwise_inequivalence({c2_model({1, 2, 3, 4}), c2_model({1, 2, 3, 5})});
  CHECK(small[0][1].verdict == Equivalence::no_conclusion);
}
