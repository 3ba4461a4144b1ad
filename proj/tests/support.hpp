#pragma once

#include <map>
#include <string>
#include <vector>

#include "toposm/action.hpp"
#include "toposm/groupoid.hpp"

namespace toposm::testing {

inline std::string fixture(const std::string& name) {
  return std::string(TOPOSM_FIXTURE_DIR) + "/" + name;
}

// one object A, morphisms {e, s}, s self-inverse
inline GroupoidPtr z2_groupoid() {
  GroupoidSpec spec;
  spec.objects = {"A"};
  spec.morphisms = {{"e", "A", "A"}, {"s", "A", "A"}};
  spec.compose = {{"e", "e", "e"}, {"e", "s", "s"}, {"s", "e", "s"}, {"s", "s", "e"}};
  return validate_groupoid(spec);
}

// {a, b, c} with s swapping a and b; orbits {a,b} and {c}
inline ActionPtr z2_three(const GroupoidPtr& g) {
  ActionSpec spec;
  spec.fibers = {{"A", {"a", "b", "c"}}};
  spec.transport = {{"s", {{"a", "b"}, {"b", "a"}, {"c", "c"}}}};
  return FiniteAction::validate(g, spec);
}

inline GroupoidPtr trivial_groupoid() {
  GroupoidSpec spec;
  spec.objects = {"pt"};
  spec.morphisms = {{"id", "pt", "pt"}};
  spec.compose = {{"id", "id", "id"}};
  return validate_groupoid(spec);
}

inline ActionPtr points(const GroupoidPtr& trivial, int n) {
  ActionSpec spec;
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i + 1));
  spec.fibers = {{"pt", ids}};
  return FiniteAction::validate(trivial, spec);
}

}  // namespace toposm::testing
