#include "conicquot/quotient_engine.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

namespace conicquot {

std::string to_string(FibreKind k) { return k == FibreKind::smooth ? "Smooth" : "Singular"; }

std::string to_string(SwapKind s) {
  switch (s) {
    case SwapKind::none: return "none";
    case SwapKind::galois: return "galois";
    case SwapKind::group_only: return "group_only";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::rational: return "Rational";
    case Verdict::not_rational: return "NotRational";
    case Verdict::unknown: return "Unknown";
  }
  return "?";
}

int singular_fibre_total(const std::vector<OrbitDatum>& orbits) {
  int n = 0;
  for (const auto& o : orbits)
    if (o.fibre_kind == FibreKind::singular) n += o.orbit_length;
  return n;
}

namespace {

bool even_invariant_smooth(const OrbitDatum& o) {
  return o.fibre_kind == FibreKind::smooth && o.stabilizer_order > 1 && o.stabilizer_order % 2 == 0;
}

}  // namespace

std::vector<Violation> validate_model(const SurfaceModel& s) {
  std::vector<Violation> out;
  const int order = s.group.order();
  std::multiset<int> special;
  for (std::size_t i = 0; i < s.orbits.size(); ++i) {
    const auto& o = s.orbits[i];
    const int idx = static_cast<int>(i);
    if (o.orbit_length < 1 || o.stabilizer_order < 1 || o.orbit_length * o.stabilizer_order != order)
      out.push_back({"orbit_stabilizer", idx,
                     "orbit length " + std::to_string(o.orbit_length) + " times stabilizer " +
                         std::to_string(o.stabilizer_order) + " is not " + std::to_string(order)});
    if (o.fibre_kind == FibreKind::singular && o.stabilizer_order % 2 == 0)
      out.push_back({"even_stabilizer_singular", idx, "a singular fibre cannot have an even stabilizer"});
    if (o.swap == SwapKind::group_only)
      out.push_back({"group_only_swap", idx, "components exchanged by the group alone"});
    if (even_invariant_smooth(o) && o.weight) {
      if (*o.weight % o.stabilizer_order == 0) {
        out.push_back({"weight", idx, "weight divisible by the stabilizer order"});
      } else if (o.swap != SwapKind::none && !smooth_fibre_chain(o.stabilizer_order, *o.weight).is_palindrome()) {
        out.push_back({"palindrome", idx, "swapped chain is not symmetric"});
      }
    }
    if (o.stabilizer_order > 1) special.insert(o.orbit_length);
  }
  auto expected = expected_orbit_table(s.group);
  std::multiset<int> allowed(expected.begin(), expected.end());
  for (int len : std::set<int>(special.begin(), special.end()))
    if (special.count(len) > allowed.count(len))
      out.push_back({"orbit_table", -1,
                     "too many special orbits of length " + std::to_string(len) + " for " + s.group.label()});
  if (singular_fibre_total(s.orbits) != s.n)
    out.push_back({"n_mismatch", -1,
                   "n = " + std::to_string(s.n) + " but singular orbits give " +
                       std::to_string(singular_fibre_total(s.orbits))});
  return out;
}

FibreFate fibre_fate(const OrbitDatum& o) {
  const int st = o.stabilizer_order;
  if (o.swap == SwapKind::group_only) throw Error(ErrorKind::invalid_model, "group-only swap");
  if (o.fibre_kind == FibreKind::singular) {
    if (st % 2 == 0) throw Error(ErrorKind::invalid_model, "singular fibre with even stabilizer");
    if (st > 1) return contract_chain(singular_fibre_chain((st - 1) / 2));
    FibreFate f;
    f.fate = o.swap == SwapKind::galois ? Fate::singular : Fate::smooth;
    f.trace = {{-1, -1}};
    if (f.fate == Fate::smooth) {
      f.trace.push_back({0});
      f.contractions = 1;
    }
    return f;
  }
  if (st % 2 == 1) {
    FibreFate f;
    f.trace = {{0}};
    return f;
  }
  if (!o.weight) throw Error(ErrorKind::missing_weight, "even-stabilizer smooth fibre needs its weight");
  FibreChain ch = smooth_fibre_chain(st, *o.weight);
  ch.galois_swap = o.swap != SwapKind::none;
  return contract_chain(ch);
}

Verdict rationality_verdict(int m_lo, int m_hi, std::optional<bool> has_k_point) {
  if (has_k_point && !*has_k_point) return Verdict::not_rational;
  if (m_lo >= 4) return Verdict::not_rational;
  if (m_hi <= 3 && has_k_point && *has_k_point) return Verdict::rational;
  return Verdict::unknown;
}

// ------------------------------------------------------------ table rows

namespace {

// Empty when the counts satisfy the row's conditions.
std::string row_violation(const GroupType& t, const Table1Counts& x) {
  if (x.a < 0 || x.b < 0 || x.c < 0 || x.d < 0) return "counts must be non-negative";
  switch (t.kind) {
    case GroupKind::cyclic:
      if (t.param < 2) return "group must be nontrivial";
      if (x.a > 2) return "a <= 2";
      if (x.c != 0 || x.d != 0) return "only columns a, b";
      return {};
    case GroupKind::dihedral:
      if (t.param < 2) return row_violation({GroupKind::cyclic, 2}, x);
      if (x.a > 1) return "a <= 1";
      if (x.b > 2) return "b <= 2";
      if (x.d != 0) return "only columns a, b, c";
      return {};
    case GroupKind::A4:
      if (x.a > 2) return "a <= 2";
      if (x.b > 1) return "b <= 1";
      if (x.d != 0) return "only columns a, b, c";
      return {};
    case GroupKind::S4:
    case GroupKind::A5:
      if (x.a > 1 || x.b > 1 || x.c > 1) return "a, b, c <= 1";
      return {};
  }
  return "unknown group";
}

Table1Value row_value(const GroupType& t, const Table1Counts& x) {
  const int p = t.param;
  switch (t.kind) {
    case GroupKind::cyclic: return {p % 2 == 0 ? p * x.b : x.a + p * x.b, x.a + x.b};
    case GroupKind::dihedral:
      if (p < 2) return row_value({GroupKind::cyclic, 2}, x);
      return {p % 2 == 0 ? 2 * p * x.c : 2 * x.a + 2 * p * x.c, x.a + x.b + x.c};
    case GroupKind::A4: return {4 * x.a + 12 * x.c, x.a + x.b + x.c};
    case GroupKind::S4: return {8 * x.a + 24 * x.d, x.a + x.b + x.c + x.d};
    case GroupKind::A5: return {12 * x.a + 20 * x.b + 60 * x.d, x.a + x.b + x.c + x.d};
  }
  return {};
}

}  // namespace

Table1Value table1_bound(const GroupType& t, const Table1Counts& x) {
  if (auto why = row_violation(t, x); !why.empty())
    throw Error(ErrorKind::condition_violated, t.label() + ": " + why);
  return row_value(t, x);
}

std::optional<char> table1_column(const GroupType& t, const OrbitDatum& o) {
  const int st = o.stabilizer_order;
  const bool sing = o.fibre_kind == FibreKind::singular;
  // only orbits that can have a singular image
  if (!(sing ? st % 2 == 1 : st % 2 == 0 && st > 1)) return std::nullopt;
  const char generic = t.kind == GroupKind::cyclic ? 'b' : t.kind == GroupKind::S4 || t.kind == GroupKind::A5 ? 'd' : 'c';
  if (st == 1) return generic;
  switch (t.kind) {
    case GroupKind::cyclic: return 'a';
    case GroupKind::dihedral:
      if (t.param < 2) return 'a';
      if (o.orbit_length == 2 && (t.param % 2 == 1 || st == t.param)) return 'a';
      return 'b';
    case GroupKind::A4: return st == 3 ? 'a' : 'b';
    case GroupKind::S4: return st == 3 ? 'a' : st == 4 ? 'b' : 'c';
    case GroupKind::A5: return st == 5 ? 'a' : st == 3 ? 'b' : 'c';
  }
  return std::nullopt;
}

namespace {

void bump(Table1Counts& c, char col) {
  switch (col) {
    case 'a': ++c.a; break;
    case 'b': ++c.b; break;
    case 'c': ++c.c; break;
    default: ++c.d; break;
  }
}

// D_4 has three orbits of length 2 with stabilizer C_2; the row allows a <= 1, b <= 2.
void rebalance(const GroupType& t, Table1Counts& c) {
  if (t.kind == GroupKind::dihedral && t.param == 2 && c.a > 1 && c.b < 2) {
    const int move = std::min(c.a - 1, 2 - c.b);
    c.a -= move;
    c.b += move;
  }
}

}  // namespace

QuotientReport quotient_count(const SurfaceModel& s) {
  auto v = validate_model(s);
  if (!v.empty()) {
    std::string msg;
    for (const auto& x : v) msg += (msg.empty() ? "" : "; ") + x.rule + ": " + x.message;
    throw Error(ErrorKind::invalid_model, msg);
  }
  QuotientReport r;
  r.n = s.n;
  r.k_x2 = 8 - s.n;
  for (const auto& o : s.orbits) {
    std::optional<FibreFate> f;
    bool maybe_singular = false;
    try {
      f = fibre_fate(o);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::missing_weight) throw;
      maybe_singular = true;
    }
    if (f && f->fate == Fate::singular) {
      ++r.m_lo;
      ++r.m_hi;
    } else if (maybe_singular) {
      ++r.m_hi;
    }
    if ((f && f->fate == Fate::singular) || maybe_singular)
      if (auto col = table1_column(s.group, o)) bump(r.counts, *col);
    r.fates.push_back(std::move(f));
  }
  rebalance(s.group, r.counts);
  r.table1 = table1_bound(s.group, r.counts);
  if (r.m_lo == r.m_hi) {
    r.m = r.m_lo;
    r.k_y2 = 8 - r.m_lo;
  }
  r.rationality = rationality_verdict(r.m_lo, r.m_hi, s.has_k_point);
  return r;
}

// ------------------------------------------------------------ theorem scan

bool theorem_bullets_hold(const GroupType& g, int n, int m) {
  if (n <= 3 && m > 3) return false;
  if (n > 3 && m > n) return false;
  if (m == n && n > 3) {
    const bool c2 = g.kind == GroupKind::cyclic && g.param == 2;
    const bool d4 = g.kind == GroupKind::dihedral && g.param == 2;
    if (n != 4 || !(c2 || d4)) return false;
  }
  return true;
}

namespace {

std::vector<GroupType> scan_groups(int k_max) {
  std::vector<GroupType> gs;
  for (int k = 2; k <= k_max; ++k) gs.push_back({GroupKind::cyclic, k});
  for (int k = 2; k <= k_max; ++k) gs.push_back({GroupKind::dihedral, k});
  gs.push_back({GroupKind::A4, 0});
  gs.push_back({GroupKind::S4, 0});
  gs.push_back({GroupKind::A5, 0});
  return gs;
}

std::vector<ScanInstance> enumerate_group(const GroupType& g, int n_max) {
  std::vector<ScanInstance> out;
  // small bounds cover every admissible value: unbounded columns add at least 1 to n
  const int lim = n_max + 2;
  for (int a = 0; a <= lim; ++a)
    for (int b = 0; b <= lim; ++b)
      for (int c = 0; c <= lim; ++c)
        for (int d = 0; d <= lim; ++d) {
          Table1Counts x{a, b, c, d};
          if (!row_violation(g, x).empty()) continue;
          const Table1Value v = row_value(g, x);
          if (v.n <= n_max) out.push_back({g, x, v});
        }
  return out;
}

}  // namespace

std::vector<ScanInstance> enumerate_table1(int k_max, int n_max) {
  std::vector<ScanInstance> out;
  for (const auto& g : scan_groups(k_max)) {
    auto part = enumerate_group(g, n_max);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

ScanReport check_theorem_cbundle(int k_max, int n_max, int jobs) {
  auto groups = scan_groups(k_max);
  std::vector<std::vector<ScanInstance>> parts(groups.size());
  auto work = [&](std::size_t lo, std::size_t step) {
    for (std::size_t i = lo; i < groups.size(); i += step) parts[i] = enumerate_group(groups[i], n_max);
  };
  const std::size_t nj = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::future<void>> fs;
  for (std::size_t j = 0; j < nj; ++j) fs.push_back(std::async(std::launch::async, work, j, nj));
  for (auto& f : fs) f.get();
  ScanReport r;
  for (const auto& part : parts)
    for (const auto& inst : part) {
      ++r.instances;
      if (!theorem_bullets_hold(inst.group, inst.value.n, inst.value.m)) r.counterexamples.push_back(inst);
    }
  return r;
}

// ------------------------------------------------------------ swap mechanism

int classify_swap_mechanism(const SwapQuery& q) {
  if (q.galois_alone || q.g_order % 2 == 1) return 1;
  if (!q.gamma_relation)
    throw Error(ErrorKind::no_case_matches, "no Galois element swaps alone and gamma p is not g p");
  if (q.stabilizer_order == 1) return 2;
  if (q.g_order != 2 || !q.normalizes_stabilizer)
    throw Error(ErrorKind::no_case_matches, "g must be an involution normalizing the stabilizer");
  const auto& t = q.group;
  if (t.kind == GroupKind::dihedral && t.param % 2 == 1 && q.stabilizer_order == t.param) return 3;
  if (t.kind == GroupKind::S4 && q.stabilizer_order == 3) return 4;
  if (t.kind == GroupKind::A5 && q.stabilizer_order == 5) return 5;
  if (t.kind == GroupKind::A5 && q.stabilizer_order == 3) return 6;
  throw Error(ErrorKind::no_case_matches,
              t.label() + " with stabilizer of order " + std::to_string(q.stabilizer_order));
}

int classify_swap_mechanism(const FiniteGroup& g, const P1Point& p, const Pgl2Elem& elem, bool galois_alone,
                            const P1Point& gamma_p) {
  const int c = g.conductor();
  const P1Point pp = p.embed(c), gp = gamma_p.embed(c);
  const Pgl2Elem e = elem.embed(c);
  if (!g.contains(e)) throw Error(ErrorKind::no_case_matches, "g is not in the group");
  SwapQuery q;
  q.group = g.type();
  q.g_order = e.order();
  q.galois_alone = galois_alone;
  FiniteGroup st = stabilizer(pp, g);
  q.stabilizer_order = st.order();
  if (q.stabilizer_order == 1) {
    q.gamma_relation = gp == e.inverse().apply(pp);
  } else {
    q.gamma_relation = gp == e.apply(pp);
    const Pgl2Elem ei = e.inverse();
    q.normalizes_stabilizer = std::all_of(st.elements().begin(), st.elements().end(),
                                          [&](const Pgl2Elem& h) { return st.contains(e * h * ei); });
  }
  return classify_swap_mechanism(q);
}

// ------------------------------------------------------------ reduction

Reduction reduce_group(const FiniteGroup& g) {
  Reduction r;
  const GroupType t = g.type();
  r.normal_subgroup = {0};
  if (t.kind != GroupKind::cyclic && t.kind != GroupKind::dihedral) {
    r.quotient = t;
    return r;
  }
  // cyclic part has order k; its odd part is the normal subgroup
  const int k = t.kind == GroupKind::cyclic ? t.param : std::max(t.param, 1);
  int odd = k;
  while (odd % 2 == 0) odd /= 2;
  r.normal_subgroup.clear();
  for (int i = 0; i < g.order(); ++i)
    if (odd % g.element_orders()[static_cast<std::size_t>(i)] == 0) r.normal_subgroup.push_back(i);
  r.normal_order = static_cast<int>(r.normal_subgroup.size());
  const int two = k / odd;
  if (t.kind == GroupKind::cyclic || t.param < 2) {
    r.quotient = {GroupKind::cyclic, t.kind == GroupKind::cyclic ? two : 2};
  } else {
    r.quotient = two == 1 ? GroupType{GroupKind::cyclic, 2} : GroupType{GroupKind::dihedral, two};
  }
  return r;
}

GroupType coset_quotient_type(const FiniteGroup& g, const std::vector<int>& normal) {
  const int n = g.order();
  std::vector<int> coset(static_cast<std::size_t>(n), -1);
  std::vector<int> reps;
  for (int i = 0; i < n; ++i) {
    if (coset[static_cast<std::size_t>(i)] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(i);
    for (int j : normal) {
      int x = g.index_of(g.elements()[static_cast<std::size_t>(i)] * g.elements()[static_cast<std::size_t>(j)]);
      coset[static_cast<std::size_t>(x)] = id;
    }
  }
  const int q = static_cast<int>(reps.size());
  auto mul = [&](int a, int b) {
    return coset[static_cast<std::size_t>(g.index_of(g.elements()[static_cast<std::size_t>(reps[a])] *
                                                     g.elements()[static_cast<std::size_t>(reps[b])]))];
  };
  const int e = coset[0];
  std::map<int, int> hist;
  int max_order = 1;
  for (int a = 0; a < q; ++a) {
    int o = 1, x = a;
    while (x != e) {
      x = mul(x, a);
      ++o;
    }
    ++hist[o];
    max_order = std::max(max_order, o);
  }
  if (max_order == q) return {GroupKind::cyclic, q};
  if (q % 2 == 0 && max_order == q / 2) return {GroupKind::dihedral, q / 2};
  throw Error(ErrorKind::unclassifiable, "quotient of order " + std::to_string(q) + " is neither cyclic nor dihedral");
}

std::optional<bool> swap_parity_check(int g_order, bool g_gamma_swaps) {
  if (g_order < 1) throw Error(ErrorKind::out_of_range, "order must be positive");
  if (g_order % 2 == 0) return std::nullopt;
  // homomorphisms C_{ord g} x C_2 -> Z/2 given by (phi(g), phi(gamma))
  std::optional<bool> answer;
  for (int pg = 0; pg < 2; ++pg)
    for (int pc = 0; pc < 2; ++pc) {
      if ((g_order * pg) % 2 != 0) continue;
      if (((pg + pc) % 2 == 1) != g_gamma_swaps) continue;
      const bool v = (g_order * pc) % 2 == 1;
      if (answer && *answer != v) return std::nullopt;
      answer = v;
    }
  return answer;
}

}  // namespace conicquot
