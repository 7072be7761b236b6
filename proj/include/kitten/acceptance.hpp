#pragma once

// The project's exit criteria, shared by the acceptance test binary and
// `kitten verify`.

#include <ostream>
#include <string>
#include <vector>

#include "kitten/fock.hpp"

namespace kitten {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Measured values against expectations, one clause per check.
  std::string detail;
};

std::vector<CriterionResult> run_acceptance(const TruncationPolicy& policy = {});

/// One "[PASS]/[FAIL] #id title: detail" line per criterion.
void print_results(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace kitten
