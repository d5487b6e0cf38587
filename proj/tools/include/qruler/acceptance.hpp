#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qruler::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs every acceptance criterion in order. Each result is printed as one
/// "PASS"/"FAIL" line on `log` as soon as it is known.
std::vector<CriterionResult> run_all(std::ostream& log);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace qruler::acceptance
