#ifndef WILLMORE_VERIFICATION_HPP
#define WILLMORE_VERIFICATION_HPP

#include <string>
#include <vector>

namespace willmore::verification {

struct CheckResult {
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass = true;
  double total_seconds = 0.0;
};

/// Runs the acceptance checks whose names contain `only` as a substring
/// (all of them when empty). A non-empty rep_path prepends a check that
/// loads and validates that representation file. Checks never throw; all
/// failures land in the report.
VerificationReport run_verification(const std::string& only = std::string(),
                                    const std::string& rep_path = std::string());

}  // namespace willmore::verification

#endif
