#pragma once

// The acceptance suite: one result per criterion, each with a pinned time limit.

#include <string>
#include <vector>

namespace conicquot {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no limit
  std::vector<std::string> notes;  // one line per sub-check
};

CriterionResult criterion_orbit_tables();
CriterionResult criterion_definability();
CriterionResult criterion_continued_fractions();
CriterionResult criterion_chain_fates();
CriterionResult criterion_table1(int jobs = 1);
CriterionResult criterion_key_example();
CriterionResult criterion_unboundedness(int jobs = 1);
CriterionResult criterion_stabilized();
CriterionResult criterion_swap_parity();

std::vector<CriterionResult> run_acceptance(int jobs = 1);

/// "PASS  1  orbit tables  (0.41 s / 10 s)"
std::string summary_line(const CriterionResult& r);

}  // namespace conicquot
