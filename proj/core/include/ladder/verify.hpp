#pragma once

#include <string>
#include <vector>

namespace ladder {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  // Test-harness hook: additively perturbs one steady weight before the
  // route-equivalence comparisons. Zero in normal operation.
  double weight_perturbation = 0.0;
  int max_oracle_atoms = 4;
};

// Commutator identities, partition-function identity, route equivalences,
// oracle-vs-closed-form comparisons and limit-formula regressions.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace ladder
