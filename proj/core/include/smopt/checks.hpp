#pragma once

#include <string>
#include <vector>

namespace smopt {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Property suites behind `check --suite <name>`. Each builds its own seeded
// instances; suites: gradients, sandwich, prox, rates.
std::vector<CheckResult> run_check_suite(const std::string& suite);

}  // namespace smopt
