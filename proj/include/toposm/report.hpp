#pragma once

#include <map>
#include <string>
#include <vector>

#include "toposm/check.hpp"

namespace toposm {

// One CLI run produces one report.  Renderings are deterministic for a fixed
// seed: the only field that varies between identical runs is wall_time_ms,
// which consumers strip before comparing.
struct Report {
  std::string command;
  std::map<std::string, std::string> inputs;   // flag name -> value as given
  std::vector<CheckResult> checks;             // sorted by name on render
  std::map<std::string, std::string> results;  // command-specific outputs
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void add(std::vector<CheckResult> cs);
  bool passed() const;  // no "fail" rows; "n/a" rows are ignored

  std::string to_json() const;  // pretty-printed, trailing newline
  std::string to_text() const;
};

// Doubles rendered shortest-round-trip (up to 17 significant digits), the
// same way the JSON renderer prints them.
std::string format_number(double v);

}  // namespace toposm
