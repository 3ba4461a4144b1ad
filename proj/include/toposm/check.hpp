#pragma once

#include <string>
#include <vector>

namespace toposm {

// One verdict row, shared between library-level axiom reports and the CLI
// report schema. status is "pass", "fail" or "n/a"; "n/a" never fails a run.
struct CheckResult {
  std::string name;
  std::string status;
  std::string witness;      // offending object/map/orbit, empty on pass
  double deviation = 0.0;   // |lhs - rhs| where a comparison was made

  static CheckResult pass(std::string name) { return {std::move(name), "pass", "", 0.0}; }
  static CheckResult fail(std::string name, std::string witness, double deviation = 0.0) {
    return {std::move(name), "fail", std::move(witness), deviation};
  }
  static CheckResult not_applicable(std::string name, std::string reason) {
    return {std::move(name), "n/a", std::move(reason), 0.0};
  }
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (c.status == "fail") return false;
  return true;
}

}  // namespace toposm
