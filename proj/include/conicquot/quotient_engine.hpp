#pragma once

// Fibre bookkeeping for quotients of conic bundles by groups acting on the base.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conicquot/hj_chains.hpp"
#include "conicquot/proj_group.hpp"

namespace conicquot {

struct EquationPayload;  // example_factory.hpp

enum class FibreKind { smooth, singular };
/// How the two components of a singular fibre (or the ends of a chain) are exchanged.
enum class SwapKind { none, galois, group_only };

std::string to_string(FibreKind k);
std::string to_string(SwapKind s);

struct OrbitDatum {
  int orbit_length = 1;
  int stabilizer_order = 1;
  FibreKind fibre_kind = FibreKind::smooth;
  std::optional<int> weight;  // eigenweight a of an invariant smooth fibre
  SwapKind swap = SwapKind::none;
  std::vector<P1Point> points;  // optional concrete base points
};

struct SurfaceModel {
  GroupType group;
  FieldSpec field;
  std::vector<OrbitDatum> orbits;
  int n = 0;  // singular fibres over the algebraic closure
  std::optional<bool> has_k_point;
  std::shared_ptr<const EquationPayload> payload;
};

/// n = sum of orbit lengths over singular orbits.
int singular_fibre_total(const std::vector<OrbitDatum>& orbits);

struct Violation {
  std::string rule;
  int orbit_index = -1;
  std::string message;
};

std::vector<Violation> validate_model(const SurfaceModel& s);

/// Fate of the image of one orbit of fibres. MissingWeight for an even-stabilizer
/// smooth fibre without weight.
FibreFate fibre_fate(const OrbitDatum& o);

enum class Verdict { rational, not_rational, unknown };
std::string to_string(Verdict v);

struct Table1Counts {
  int a = 0, b = 0, c = 0, d = 0;
  friend bool operator==(const Table1Counts&, const Table1Counts&) = default;
};

struct Table1Value {
  int n = 0;
  int m = 0;
};

/// Closed forms of the table row for `type`; ConditionViolated when a count
/// exceeds the row's bound or uses a column the row does not have.
Table1Value table1_bound(const GroupType& type, const Table1Counts& counts);
/// Table column of an orbit whose image is singular, or nullopt if the row has none.
std::optional<char> table1_column(const GroupType& type, const OrbitDatum& o);

struct QuotientReport {
  int m_lo = 0;  // orbits known to give singular fibres
  int m_hi = 0;  // plus orbits whose fate needs missing weight data
  std::optional<int> m;
  std::optional<int> k_y2;  // 8 - m
  int n = 0;
  int k_x2 = 8;
  std::vector<std::optional<FibreFate>> fates;
  Table1Counts counts;  // assuming every undetermined orbit is singular
  Table1Value table1;
  Verdict rationality = Verdict::unknown;
};

/// InvalidModel when validate_model reports violations.
QuotientReport quotient_count(const SurfaceModel& s);

Verdict rationality_verdict(int m_lo, int m_hi, std::optional<bool> has_k_point);

// ------------------------------------------------------------ theorem scan

struct ScanInstance {
  GroupType group;
  Table1Counts counts;
  Table1Value value;
};

/// The three consequences (n <= 3 => m <= 3; n > 3 => m <= n; m = n > 3 =>
/// n = 4 and the group is C_2 or D_4) for one instance.
bool theorem_bullets_hold(const GroupType& g, int n, int m);

struct ScanReport {
  long instances = 0;
  std::vector<ScanInstance> counterexamples;
};

/// All groups C_k, D_2k with k <= k_max plus A4, S4, A5; all admissible counts with n <= n_max.
std::vector<ScanInstance> enumerate_table1(int k_max, int n_max);
ScanReport check_theorem_cbundle(int k_max, int n_max, int jobs = 1);

// ------------------------------------------------------------ swap mechanism

struct SwapQuery {
  GroupType group;
  int stabilizer_order = 1;
  int g_order = 1;
  bool galois_alone = false;  // some delta in Gal exchanges the components by itself
  bool gamma_relation = true;  // gamma p = g^{-1} p (trivial stabilizer) or gamma p = g p
  bool normalizes_stabilizer = true;  // g <h> g^{-1} = <h>
};

/// Case 1..6; NoCaseMatches on inconsistent input.
int classify_swap_mechanism(const SwapQuery& q);

/// Concrete form: gamma_p is the image of p under the Galois element.
int classify_swap_mechanism(const FiniteGroup& g, const P1Point& p, const Pgl2Elem& elem, bool galois_alone,
                            const P1Point& gamma_p);

// ------------------------------------------------------------ reduction

struct Reduction {
  std::vector<int> normal_subgroup;  // indices into G
  int normal_order = 1;
  GroupType quotient;
};

/// Maximal odd cyclic normal subgroup of C_k or D_2k and the 2-group quotient;
/// trivial for A4, S4, A5.
Reduction reduce_group(const FiniteGroup& g);
/// Type of G/N computed from explicit cosets.
GroupType coset_quotient_type(const FiniteGroup& g, const std::vector<int>& normal_subgroup);

/// If g*gamma swaps (or not) and ord g is odd, whether gamma^{ord g} swaps;
/// nullopt when ord g is even.
std::optional<bool> swap_parity_check(int g_order, bool g_gamma_swaps);

}  // namespace conicquot
