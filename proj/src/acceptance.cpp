#include "conicquot/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "conicquot/birational_compare.hpp"

namespace conicquot {

namespace {

// Collects sub-checks; a criterion passes when every check holds and the time limit is met.
class Run {
 public:
  Run(int id, std::string title, double limit) {
    r_.id = id;
    r_.title = std::move(title);
    r_.limit_seconds = limit;
    r_.passed = true;
  }

  void check(bool ok, const std::string& what) {
    r_.notes.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    if (!ok) r_.passed = false;
  }
  void info(const std::string& what) { r_.notes.push_back("info  " + what); }

  CriterionResult finish() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (r_.limit_seconds > 0 && r_.seconds > r_.limit_seconds) {
      r_.passed = false;
      r_.notes.push_back("FAIL  time limit exceeded");
    }
    return r_;
  }

 private:
  CriterionResult r_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class F>
void guarded(Run& run, const std::string& what, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    run.check(false, what + ": " + e.what());
  }
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "{" + s + "}";
}

std::vector<GroupType> small_groups() {
  std::vector<GroupType> out;
  for (int k = 2; k <= 12; ++k) {
    out.push_back({GroupKind::cyclic, k});
    out.push_back({GroupKind::dihedral, k});
  }
  out.push_back({GroupKind::A4, 0});
  out.push_back({GroupKind::S4, 0});
  out.push_back({GroupKind::A5, 0});
  return out;
}

// Orbit lengths with nontrivial stabilizer, written out per group.
std::vector<int> hand_orbit_table(const GroupType& t) {
  switch (t.kind) {
    case GroupKind::cyclic: return {1, 1};
    case GroupKind::dihedral:
      if (t.param == 2) return {2, 2, 2};
      return {2, t.param, t.param};
    case GroupKind::A4: return {4, 4, 6};
    case GroupKind::S4: return {6, 8, 12};
    case GroupKind::A5: return {12, 20, 30};
  }
  return {};
}

// Table rows as data: n and m are linear in (a, b, c, d); caps of -1 mean unbounded,
// a column absent from the row has cap 0.
struct HandRow {
  std::array<int, 4> n_coef;
  std::array<int, 4> m_coef;
  std::array<int, 4> cap;
};

HandRow hand_row(const GroupType& t) {
  const int p = t.param;
  switch (t.kind) {
    case GroupKind::cyclic:
      if (p % 2 == 0) return {{0, p, 0, 0}, {1, 1, 0, 0}, {2, -1, 0, 0}};
      return {{1, p, 0, 0}, {1, 1, 0, 0}, {2, -1, 0, 0}};
    case GroupKind::dihedral:
      if (p % 2 == 0) return {{0, 0, 2 * p, 0}, {1, 1, 1, 0}, {1, 2, -1, 0}};
      return {{2, 0, 2 * p, 0}, {1, 1, 1, 0}, {1, 2, -1, 0}};
    case GroupKind::A4: return {{4, 0, 12, 0}, {1, 1, 1, 0}, {2, 1, -1, 0}};
    case GroupKind::S4: return {{8, 0, 0, 24}, {1, 1, 1, 1}, {1, 1, 1, -1}};
    case GroupKind::A5: return {{12, 20, 0, 60}, {1, 1, 1, 1}, {1, 1, 1, -1}};
  }
  return {};
}

bool hand_admissible(const HandRow& row, const std::array<int, 4>& x) {
  for (int i = 0; i < 4; ++i)
    if (row.cap[i] >= 0 && x[i] > row.cap[i]) return false;
  return true;
}

int dot(const std::array<int, 4>& u, const std::array<int, 4>& x) { return u[0] * x[0] + u[1] * x[1] + u[2] * x[2] + u[3] * x[3]; }

// Whether the bullets of the theorem hold, evaluated directly.
bool hand_bullets(const GroupType& t, int n, int m) {
  if (n <= 3) return m <= 3;
  if (m > n) return false;
  if (m == n) {
    const bool c2 = t.kind == GroupKind::cyclic && t.param == 2;
    const bool d4 = t.kind == GroupKind::dihedral && t.param == 2;
    return n == 4 && (c2 || d4);
  }
  return true;
}

SurfaceModel c2_member(const FieldSpec& q, const std::vector<int>& mus) {
  std::vector<CycloNum> m;
  for (int x : mus) m.push_back(q.from_rational(x));
  return build_example(cyclic_example_spec(q, 2, q.from_rational(2), m));
}

}  // namespace

CriterionResult criterion_orbit_tables() {
  Run run(1, "orbit tables", 10);
  int matched = 0;
  const auto groups = small_groups();
  for (const auto& t : groups) {
    guarded(run, t.label(), [&] {
      FiniteGroup g = generate_group(standard_generators(t, standard_field(t)));
      std::vector<int> want = hand_orbit_table(t);
      std::sort(want.begin(), want.end());
      const auto got = special_orbit_table(g);
      if (got == want) {
        ++matched;
      } else {
        run.info(t.label() + ": got " + join(got) + ", want " + join(want));
      }
    });
  }
  run.check(matched == static_cast<int>(groups.size()),
            std::to_string(matched) + " of " + std::to_string(groups.size()) + " groups match the hand-written tables");
  return run.finish();
}

CriterionResult criterion_definability() {
  Run run(2, "fixed-point definability", 0);
  const std::vector<std::string> fields{"Q", "Q(i)", "Q(i*sqrt2)", "Q(sqrt5)", "Q(xi_5)", "Q(xi_12)"};
  long comparisons = 0, disagreements = 0, reps = 0;
  for (const auto& t : small_groups()) {
    for (const auto& name : fields) {
      const int n = std::lcm(standard_conductor(t), FieldSpec::named(name).conductor());
      if (n > kMaxConductor) continue;
      const FieldSpec k = FieldSpec::named(name, n);
      std::vector<Pgl2Elem> gens;
      try {
        gens = standard_generators(t, k);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::missing_constant) throw;
        continue;  // the representation is not defined over k
      }
      ++reps;
      FiniteGroup g = generate_group(gens);
      for (std::size_t i = 0; i < g.elements().size(); ++i) {
        const int m = g.element_orders()[i];
        if (m <= 2) continue;
        ++comparisons;
        if (fixed_points_defined_over(g.elements()[i], k) != contains_root_of_unity(k, m)) {
          ++disagreements;
          run.info(t.label() + " over " + name + ": element " + g.elements()[i].str() + " disagrees");
        }
      }
    }
  }
  run.info(std::to_string(reps) + " representations, " + std::to_string(comparisons) + " elements of order > 2");
  run.check(comparisons > 0 && disagreements == 0, std::to_string(disagreements) + " disagreements");
  return run.finish();
}

CriterionResult criterion_continued_fractions() {
  Run run(3, "continued fractions", 5);
  long pairs = 0, bad = 0;
  for (long k = 2; k <= 200; ++k)
    for (long a = 1; a < k; ++a) {
      if (std::gcd(k, a) != 1) continue;
      ++pairs;
      const HJFraction f = hj_expand(k, a);
      const bool digits_ok = std::all_of(f.digits.begin(), f.digits.end(), [](long s) { return s >= 2; });
      if (!digits_ok || hj_eval(f.digits) != Rational(k, a)) ++bad;
    }
  run.check(bad == 0, "hj_eval(hj_expand(k, a)) = k/a on " + std::to_string(pairs) + " coprime pairs, k <= 200");
  long fam_bad = 0;
  for (long a = 1; a <= 20; ++a) {
    std::vector<long> want{3};
    want.insert(want.end(), static_cast<std::size_t>(a - 1), 2);
    if (hj_expand(2 * a + 1, a).digits != want) ++fam_bad;
  }
  run.check(fam_bad == 0, "(2a+1)/a = [3, 2, ..., 2] for a <= 20");
  return run.finish();
}

CriterionResult criterion_chain_fates() {
  Run run(4, "chain fates", 30);
  const int shuffles = 100;
  int sing_bad = 0, shuffle_bad = 0, chains = 0;
  auto stable = [&](const FibreChain& ch, Fate want) {
    ++chains;
    for (int s = 1; s <= shuffles; ++s)
      if (contract_chain_random(ch, static_cast<std::uint64_t>(s)).fate != want) return false;
    return true;
  };
  for (int a = 1; a <= 8; ++a) {
    const FibreChain ch = singular_fibre_chain(a);
    if (contract_chain(ch).fate != Fate::singular) ++sing_bad;
    if (!stable(ch, Fate::singular)) ++shuffle_bad;
  }
  run.check(sing_bad == 0, "singular_fibre_chain(a) contracts to Singular, 1 <= a <= 8");
  int smooth_bad = 0, pairs = 0;
  for (long k = 2; k <= 15; ++k)
    for (long a = 1; a < k; ++a) {
      if (std::gcd(k, a) != 1) continue;
      ++pairs;
      const FibreChain ch = smooth_fibre_chain(k, a);
      if (ch.galois_swap || contract_chain(ch).fate != Fate::smooth) ++smooth_bad;
      if (!stable(ch, Fate::smooth)) ++shuffle_bad;
    }
  run.check(smooth_bad == 0, "smooth_fibre_chain(k, a) contracts to Smooth on " + std::to_string(pairs) +
                                 " coprime pairs, k <= 15");
  run.check(shuffle_bad == 0, "fate unchanged under " + std::to_string(shuffles) + " random orders on each of " +
                                  std::to_string(chains) + " chains");
  return run.finish();
}

CriterionResult criterion_table1(int jobs) {
  Run run(5, "table rows and the theorem scan", 60);
  const int k_max = 10, n_max = 12;
  std::vector<GroupType> groups;
  for (int k = 2; k <= k_max; ++k) {
    groups.push_back({GroupKind::cyclic, k});
    groups.push_back({GroupKind::dihedral, k});
  }
  groups.push_back({GroupKind::A4, 0});
  groups.push_back({GroupKind::S4, 0});
  groups.push_back({GroupKind::A5, 0});

  long admissible = 0, mismatches = 0;
  std::set<std::tuple<std::string, int, int, int, int>> hand_set;
  for (const auto& t : groups) {
    const HandRow row = hand_row(t);
    std::array<int, 4> x{};
    for (x[0] = 0; x[0] <= n_max; ++x[0])
      for (x[1] = 0; x[1] <= n_max; ++x[1])
        for (x[2] = 0; x[2] <= n_max; ++x[2])
          for (x[3] = 0; x[3] <= n_max; ++x[3]) {
            const Table1Counts c{x[0], x[1], x[2], x[3]};
            const bool ok = hand_admissible(row, x);
            std::optional<Table1Value> got;
            try {
              got = table1_bound(t, c);
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::condition_violated) throw;
            }
            if (ok != got.has_value()) {
              ++mismatches;
              continue;
            }
            if (!ok) continue;
            const int n = dot(row.n_coef, x), m = dot(row.m_coef, x);
            if (got->n != n || got->m != m) ++mismatches;
            if (n <= n_max) {
              ++admissible;
              hand_set.insert({t.label(), x[0], x[1], x[2], x[3]});
            }
          }
  }
  run.check(mismatches == 0, "table1_bound agrees with the hand-coded rows on " + std::to_string(admissible) +
                                 " admissible instances with n <= 12 (" + std::to_string(mismatches) + " mismatches)");

  std::set<std::tuple<std::string, int, int, int, int>> lib_set;
  int hand_violations = 0, equality_cases = 0;
  for (const auto& s : enumerate_table1(k_max, n_max)) {
    lib_set.insert({s.group.label(), s.counts.a, s.counts.b, s.counts.c, s.counts.d});
    if (!hand_bullets(s.group, s.value.n, s.value.m)) ++hand_violations;
    if (s.value.n > 3 && s.value.m == s.value.n) ++equality_cases;
  }
  run.check(lib_set == hand_set, "the scan enumerates exactly the hand-coded admissible instances");
  const ScanReport rep = check_theorem_cbundle(k_max, n_max, jobs);
  run.check(rep.counterexamples.empty() && hand_violations == 0,
            "theorem scan over " + std::to_string(rep.instances) + " instances: " +
                std::to_string(rep.counterexamples.size()) + " counterexamples");
  run.check(equality_cases > 0, std::to_string(equality_cases) + " instances with m = n > 3, all at n = 4 in C_2 or D_4");
  return run.finish();
}

CriterionResult criterion_key_example() {
  Run run(6, "C_2 example over Q, u = 2, mu = (1,2,3,4)", 10);
  guarded(run, "build", [&] {
    const FieldSpec q = FieldSpec::named("Q");
    const SurfaceModel m = c2_member(q, {1, 2, 3, 4});
    const ExampleVerification v = verify_example(m);
    const QuotientReport& r = v.quotient;
    run.check(m.n == 8, "n = " + std::to_string(m.n) + " (want 8)");
    run.check(v.coefficients_in_field, "coefficient forms are Galois-stable");
    run.check(v.k_point_on_q_fibre, "k-point on the fibre over q");
    run.check(v.x_rational, "X is Rational");
    const std::string range = "[" + std::to_string(r.m_lo) + ", " + std::to_string(r.m_hi) + "]";
    run.check(r.m && *r.m == 8, "quotient m = 8 (computed m in " + range + ")");
    run.check(r.k_y2 && *r.k_y2 == 0,
              "K_Y^2 = 0 (computed K_Y^2 in [" + std::to_string(8 - r.m_hi) + ", " + std::to_string(8 - r.m_lo) + "])");
    run.check(r.rationality == Verdict::not_rational, "verdict " + to_string(r.rationality) + " (want NotRational)");
    run.info("four mus give four Galois-swapped orbits of length 2, so m = 8 is out of reach");

    const SurfaceModel m8 = c2_member(q, {1, 2, 3, 4, 5, 6, 7, 8});
    const QuotientReport r8 = quotient_count(m8);
    run.info("eight mus: n = " + std::to_string(m8.n) + ", m in [" + std::to_string(r8.m_lo) + ", " +
             std::to_string(r8.m_hi) + "], " + to_string(r8.rationality));
  });
  return run.finish();
}

CriterionResult criterion_unboundedness(int jobs) {
  Run run(7, "pairwise inequivalence of a family", 60);
  guarded(run, "family", [&] {
    const FieldSpec q = FieldSpec::named("Q");
    const auto base = cyclic_example_spec(q, 2, q.from_rational(2), {});
    const auto fam = generate_family(base, 6, random_mu_sampler(2024, 8, 60, 1));
    bool all_rigid = true;
    for (const auto& m : fam) all_rigid = all_rigid && quotient_locus(m).size() == 8;
    run.check(fam.size() == 6 && all_rigid, "6 members, 8 singular fibres on each quotient");
    const auto mat = pairwise_inequivalence(fam, jobs);
    int inequivalent = 0;
    for (std::size_t i = 0; i < mat.size(); ++i)
      for (std::size_t j = 0; j < mat.size(); ++j)
        if (i != j && mat[i][j].verdict == Equivalence::inequivalent) ++inequivalent;
    run.check(inequivalent == 30, std::to_string(inequivalent) + " of 30 ordered pairs Inequivalent");

    const auto planted = pairwise_inequivalence(
        {c2_member(q, {1, 2, 4, 5, 7, 11, 13, 17}), c2_member(q, {3, 6, 12, 15, 21, 33, 39, 51})}, jobs);
    const auto& pv = planted[0][1];
    bool witness_ok = false;
    if (pv.witness) {
      const auto a = quotient_locus(c2_member(q, {1, 2, 4, 5, 7, 11, 13, 17}));
      const auto b = quotient_locus(c2_member(q, {3, 6, 12, 15, 21, 33, 39, 51}));
      std::vector<P1Point> img;
      for (const auto& p : a.points()) img.push_back(pv.witness->apply(p));
      std::sort(img.begin(), img.end());
      witness_ok = img == b.points();
    }
    run.check(pv.verdict == Equivalence::equivalent && witness_ok,
              "planted pair (mus scaled by 3) is " + to_string(pv.verdict) + " with a checked witness");
  });
  return run.finish();
}

CriterionResult criterion_stabilized() {
  Run run(8, "stabilized examples", 30);
  struct Row {
    GroupType t;
    std::string field;
    int conductor;
    int h_order;
    int want_case;
  };
  const std::vector<Row> rows{{{GroupKind::dihedral, 3}, "Q(cos2pi/3)", 12, 3, 3},
                              {{GroupKind::S4, 0}, "Q(i*sqrt2)", 24, 3, 4},
                              {{GroupKind::A5, 0}, "Q(i,sqrt5)", 60, 5, 5},
                              {{GroupKind::A5, 0}, "Q(i,sqrt5)", 60, 3, 6}};
  for (const auto& row : rows) {
    const std::string what = row.t.label() + " over " + row.field + ", ord h = " + std::to_string(row.h_order);
    guarded(run, what, [&] {
      const auto ex = build_stabilized_example(row.t, FieldSpec::named(row.field, row.conductor), row.h_order);
      run.check(ex.swap_case == row.want_case && ex.image_fate.fate == Fate::singular,
                what + ": case " + std::to_string(ex.swap_case) + ", image " + to_string(ex.image_fate.fate));
    });
  }
  try {
    build_stabilized_example({GroupKind::A4, 0}, FieldSpec::named("Q(i)", 24));
    run.check(false, "A4 over Q(i) should fail its hypothesis");
  } catch (const Error& e) {
    run.check(e.kind() == ErrorKind::hypothesis_failed, "A4 over Q(i): " + std::string(to_string(e.kind())));
  }
  return run.finish();
}

CriterionResult criterion_swap_parity() {
  Run run(9, "swap parity for odd ord g", 1);
  int bad = 0;
  for (int r = 1; r <= 9; ++r)
    for (bool swaps : {false, true}) {
      const auto got = swap_parity_check(r, swaps);
      // an odd-order g cannot swap, so g*gamma swaps iff gamma does, iff gamma^r does
      const std::optional<bool> want = r % 2 == 1 ? std::optional<bool>(swaps) : std::nullopt;
      if (got != want) ++bad;
    }
  run.check(bad == 0, "ord g in 1..9, both swap states: " + std::to_string(bad) + " mismatches");
  return run.finish();
}

std::vector<CriterionResult> run_acceptance(int jobs) {
  return {criterion_orbit_tables(), criterion_definability(),      criterion_continued_fractions(),
          criterion_chain_fates(),  criterion_table1(jobs),        criterion_key_example(),
          criterion_unboundedness(jobs), criterion_stabilized(),   criterion_swap_parity()};
}

std::string summary_line(const CriterionResult& r) {
  char buf[64];
  if (r.limit_seconds > 0) {
    std::snprintf(buf, sizeof buf, "(%.2f s / %g s)", r.seconds, r.limit_seconds);
  } else {
    std::snprintf(buf, sizeof buf, "(%.2f s)", r.seconds);
  }
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.title << "  " << buf;
  return os.str();
}

}  // namespace conicquot
