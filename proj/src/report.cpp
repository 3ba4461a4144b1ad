#include "toposm/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace toposm {

using ordered_json = nlohmann::ordered_json;

void Report::add(std::vector<CheckResult> cs) {
  for (auto& c : cs) checks.push_back(std::move(c));
}

bool Report::passed() const { return all_passed(checks); }

namespace {

std::vector<CheckResult> sorted_checks(const Report& r) {
  std::vector<CheckResult> cs = r.checks;
  std::stable_sort(cs.begin(), cs.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     return a.name < b.name;
                   });
  return cs;
}

}  // namespace

std::string Report::to_json() const {
  ordered_json doc;
  doc["command"] = command;
  doc["seed"] = seed;
  ordered_json in = ordered_json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  doc["inputs"] = in;
  ordered_json rows = ordered_json::array();
  for (const CheckResult& c : sorted_checks(*this)) {
    ordered_json row;
    row["name"] = c.name;
    row["status"] = c.status;
    row["witness"] = c.witness;
    row["deviation"] = c.deviation;
    rows.push_back(std::move(row));
  }
  doc["checks"] = rows;
  ordered_json res = ordered_json::object();
  for (const auto& [k, v] : results) res[k] = v;
  doc["results"] = res;
  doc["passed"] = passed();
  doc["wall_time_ms"] = wall_time_ms;
  return doc.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  out << "seed: " << seed << "\n";
  for (const auto& [k, v] : inputs) out << "input " << k << ": " << v << "\n";
  for (const CheckResult& c : sorted_checks(*this)) {
    out << "[" << (c.status == "pass"  ? "PASS"
                   : c.status == "n/a" ? " N/A"
                                       : "FAIL")
        << "] " << c.name;
    if (c.deviation != 0.0) out << "  deviation=" << format_number(c.deviation);
    if (!c.witness.empty()) out << "  (" << c.witness << ")";
    out << "\n";
  }
  for (const auto& [k, v] : results) out << k << ": " << v << "\n";
  out << "result: " << (passed() ? "pass" : "fail") << "\n";
  out << "wall_time_ms: " << format_number(wall_time_ms) << "\n";
  return out.str();
}

std::string format_number(double v) {
  return ordered_json(v).dump();
}

}  // namespace toposm
