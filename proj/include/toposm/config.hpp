#pragma once

#include <map>
#include <string>
#include <vector>

#include "toposm/action.hpp"
#include "toposm/groupoid.hpp"
#include "toposm/measure.hpp"
#include "toposm/operator.hpp"
#include "toposm/valuation.hpp"

namespace toposm {

// A config file describes one groupoid, a family of actions on it, named
// weight tables (usable as valuations, sections, or global measures depending
// on the subcommand), and named operators on action carriers.
//
// Schema:
//   {
//     "groupoid": {
//       "objects":   ["A", ...],
//       "morphisms": [{"name": "g", "src": "A", "dst": "B"}, ...],
//       "compose":   [["g", "h", "gh"], ...]       // g after h
//     },
//     "actions": {
//       "X": {
//         "fibers": {"A": ["x1", ...], ...},
//         "maps":   {"g": {"x1": "x2", ...}, ...}  // identities may be omitted
//       }, ...
//     },
//     "measures": {
//       "mu": {"on": "X", "weights": {"x1": 2.0, ...}}, ...   // orbit reps
//     },
//     "operators": {
//       "u": {"carrier": "X", "entries": [["x1","x2",re,im], ...]},  // inline
//       "w": "relative/path.json", ...                               // or file
//     }
//   }
//
// Parse failures carry a JSON-pointer-style location, e.g. a morphism whose
// src names no object reports ValidationError at /groupoid/morphisms/3.

struct MeasureConfig {
  std::string on;                         // action name
  std::map<std::string, double> weights;  // keyed by orbit representative id
};

struct OperatorConfig {
  std::string carrier;  // action name
  std::vector<OperatorMatrix::Entry> entries;
};

struct ModelConfig {
  GroupoidPtr groupoid;
  std::map<std::string, ActionPtr> actions;
  std::map<std::string, MeasureConfig> measures;
  std::map<std::string, OperatorConfig> operators;

  const ActionPtr& action(const std::string& name) const;
  const MeasureConfig& measure(const std::string& name) const;

  // Weight table as a valuation / strictly positive section on its carrier.
  Valuation valuation(const std::string& name) const;
  ChiSection section(const std::string& name) const;

  // Weight table as a measure on the whole component lattice.  The carrier
  // must have one orbit per groupoid component, orbit reps matching component
  // reps (e.g. an action with one point over every object).
  InvariantMeasure global_measure(const std::string& name) const;

  OperatorMatrix operator_matrix(const std::string& name) const;
};

// Reads and fully validates a config file.  Relative operator paths resolve
// against the config file's directory.
ModelConfig parse_config(const std::string& path);

// Parses a config from an in-memory JSON string (used by tests; `origin`
// seeds relative-path resolution and error messages).
ModelConfig parse_config_text(const std::string& text, const std::string& origin);

}  // namespace toposm
