#include "toposm/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "toposm/error.hpp"

namespace toposm {
namespace {

using nlohmann::json;

[[noreturn]] void fail_at(ErrorKind kind, const std::string& path,
                          const std::string& what) {
  fail(kind, what + " at " + path);
}

const json& require(const json& node, const std::string& key,
                    const std::string& path) {
  auto it = node.find(key);
  if (it == node.end())
    fail_at(ErrorKind::ParseError, path, "missing required key \"" + key + "\"");
  return *it;
}

void expect_object(const json& node, const std::string& path) {
  if (!node.is_object())
    fail_at(ErrorKind::ParseError, path, "expected an object");
}

void expect_array(const json& node, const std::string& path) {
  if (!node.is_array())
    fail_at(ErrorKind::ParseError, path, "expected an array");
}

std::string expect_string(const json& node, const std::string& path) {
  if (!node.is_string())
    fail_at(ErrorKind::ParseError, path, "expected a string");
  return node.get<std::string>();
}

double expect_number(const json& node, const std::string& path) {
  if (!node.is_number())
    fail_at(ErrorKind::ParseError, path, "expected a number");
  return node.get<double>();
}

GroupoidPtr parse_groupoid(const json& node) {
  expect_object(node, "/groupoid");
  GroupoidSpec spec;

  const json& objects = require(node, "objects", "/groupoid");
  expect_array(objects, "/groupoid/objects");
  for (std::size_t i = 0; i < objects.size(); ++i)
    spec.objects.push_back(
        expect_string(objects[i], "/groupoid/objects/" + std::to_string(i)));

  const json& morphisms = require(node, "morphisms", "/groupoid");
  expect_array(morphisms, "/groupoid/morphisms");
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const std::string path = "/groupoid/morphisms/" + std::to_string(i);
    const json& m = morphisms[i];
    expect_object(m, path);
    MorphismSpec ms;
    ms.id = expect_string(require(m, "name", path), path + "/name");
    ms.src = expect_string(require(m, "src", path), path + "/src");
    ms.dst = expect_string(require(m, "dst", path), path + "/dst");
    bool src_ok = false, dst_ok = false;
    for (const auto& o : spec.objects) {
      src_ok |= o == ms.src;
      dst_ok |= o == ms.dst;
    }
    if (!src_ok)
      fail_at(ErrorKind::ValidationError, path,
              "morphism \"" + ms.id + "\" has unknown src \"" + ms.src + "\"");
    if (!dst_ok)
      fail_at(ErrorKind::ValidationError, path,
              "morphism \"" + ms.id + "\" has unknown dst \"" + ms.dst + "\"");
    spec.morphisms.push_back(std::move(ms));
  }

  const json& compose = require(node, "compose", "/groupoid");
  expect_array(compose, "/groupoid/compose");
  for (std::size_t i = 0; i < compose.size(); ++i) {
    const std::string path = "/groupoid/compose/" + std::to_string(i);
    const json& row = compose[i];
    expect_array(row, path);
    if (row.size() != 3)
      fail_at(ErrorKind::ParseError, path, "expected [g, h, g∘h]");
    spec.compose.push_back({expect_string(row[0], path + "/0"),
                            expect_string(row[1], path + "/1"),
                            expect_string(row[2], path + "/2")});
  }

  try {
    return validate_groupoid(spec);
  } catch (const Error& e) {
    fail_at(e.kind(), "/groupoid", e.what());
  }
}

ActionPtr parse_action(const GroupoidPtr& g, const std::string& name,
                       const json& node) {
  const std::string base = "/actions/" + name;
  expect_object(node, base);
  ActionSpec spec;

  const json& fibers = require(node, "fibers", base);
  expect_object(fibers, base + "/fibers");
  for (auto it = fibers.begin(); it != fibers.end(); ++it) {
    const std::string path = base + "/fibers/" + it.key();
    expect_array(it.value(), path);
    std::vector<std::string>& ids = spec.fibers[it.key()];
    for (std::size_t i = 0; i < it.value().size(); ++i)
      ids.push_back(expect_string(it.value()[i], path + "/" + std::to_string(i)));
  }

  if (auto it = node.find("maps"); it != node.end()) {
    expect_object(*it, base + "/maps");
    for (auto mit = it->begin(); mit != it->end(); ++mit) {
      const std::string path = base + "/maps/" + mit.key();
      expect_object(mit.value(), path);
      std::map<std::string, std::string>& images = spec.transport[mit.key()];
      for (auto eit = mit.value().begin(); eit != mit.value().end(); ++eit)
        images[eit.key()] = expect_string(eit.value(), path + "/" + eit.key());
    }
  }

  try {
    return FiniteAction::validate(g, spec);
  } catch (const Error& e) {
    fail_at(e.kind(), base, e.what());
  }
}

MeasureConfig parse_measure(const ModelConfig& cfg, const std::string& name,
                            const json& node) {
  const std::string base = "/measures/" + name;
  expect_object(node, base);
  MeasureConfig mc;
  mc.on = expect_string(require(node, "on", base), base + "/on");
  if (!cfg.actions.count(mc.on))
    fail_at(ErrorKind::ValidationError, base + "/on",
            "unknown action \"" + mc.on + "\"");
  const json& weights = require(node, "weights", base);
  expect_object(weights, base + "/weights");
  for (auto it = weights.begin(); it != weights.end(); ++it)
    mc.weights[it.key()] =
        expect_number(it.value(), base + "/weights/" + it.key());
  // Key and positivity validation happens when the table is materialized;
  // here we only pin the carrier.
  return mc;
}

OperatorConfig parse_operator_body(const ModelConfig& cfg, const json& node,
                                   const std::string& base) {
  expect_object(node, base);
  OperatorConfig oc;
  oc.carrier = expect_string(require(node, "carrier", base), base + "/carrier");
  if (!cfg.actions.count(oc.carrier))
    fail_at(ErrorKind::ValidationError, base + "/carrier",
            "unknown action \"" + oc.carrier + "\"");
  const json& entries = require(node, "entries", base);
  expect_array(entries, base + "/entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = base + "/entries/" + std::to_string(i);
    const json& row = entries[i];
    expect_array(row, path);
    if (row.size() != 4)
      fail_at(ErrorKind::ParseError, path, "expected [x, y, re, im]");
    OperatorMatrix::Entry e;
    e.x = expect_string(row[0], path + "/0");
    e.y = expect_string(row[1], path + "/1");
    e.re = expect_number(row[2], path + "/2");
    e.im = expect_number(row[3], path + "/3");
    oc.entries.push_back(std::move(e));
  }
  return oc;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  json parsed = json::parse(buf.str(), nullptr, false);
  if (parsed.is_discarded())
    fail(ErrorKind::ParseError, "\"" + path + "\" is not valid JSON");
  return parsed;
}

ModelConfig parse_root(const json& root, const std::string& origin) {
  expect_object(root, "/");
  ModelConfig cfg;
  cfg.groupoid = parse_groupoid(require(root, "groupoid", "/"));

  if (auto it = root.find("actions"); it != root.end()) {
    expect_object(*it, "/actions");
    for (auto ait = it->begin(); ait != it->end(); ++ait)
      cfg.actions[ait.key()] =
          parse_action(cfg.groupoid, ait.key(), ait.value());
  }

  if (auto it = root.find("measures"); it != root.end()) {
    expect_object(*it, "/measures");
    for (auto mit = it->begin(); mit != it->end(); ++mit)
      cfg.measures[mit.key()] = parse_measure(cfg, mit.key(), mit.value());
  }

  if (auto it = root.find("operators"); it != root.end()) {
    expect_object(*it, "/operators");
    for (auto oit = it->begin(); oit != it->end(); ++oit) {
      const std::string base = "/operators/" + oit.key();
      if (oit.value().is_string()) {
        std::filesystem::path rel(oit.value().get<std::string>());
        std::filesystem::path full =
            rel.is_absolute()
                ? rel
                : std::filesystem::path(origin).parent_path() / rel;
        json body;
        try {
          body = load_json_file(full.string());
        } catch (const Error& e) {
          fail_at(e.kind(), base, e.what());
        }
        cfg.operators[oit.key()] = parse_operator_body(cfg, body, base);
      } else {
        cfg.operators[oit.key()] = parse_operator_body(cfg, oit.value(), base);
      }
    }
  }
  return cfg;
}

}  // namespace

const ActionPtr& ModelConfig::action(const std::string& name) const {
  auto it = actions.find(name);
  if (it == actions.end())
    fail(ErrorKind::ValidationError, "unknown action \"" + name + "\"");
  return it->second;
}

const MeasureConfig& ModelConfig::measure(const std::string& name) const {
  auto it = measures.find(name);
  if (it == measures.end())
    fail(ErrorKind::ValidationError, "unknown measure \"" + name + "\"");
  return it->second;
}

Valuation ModelConfig::valuation(const std::string& name) const {
  const MeasureConfig& mc = measure(name);
  return Valuation::create(action(mc.on), mc.weights);
}

ChiSection ModelConfig::section(const std::string& name) const {
  const MeasureConfig& mc = measure(name);
  return ChiSection::create(action(mc.on), mc.weights);
}

InvariantMeasure ModelConfig::global_measure(const std::string& name) const {
  const MeasureConfig& mc = measure(name);
  const ActionPtr& carrier = action(mc.on);
  const FiniteGroupoid& g = *carrier->groupoid();
  if (carrier->orbit_count() != g.component_count())
    fail(ErrorKind::ValidationError,
         "measure \"" + name + "\": carrier \"" + mc.on + "\" has " +
             std::to_string(carrier->orbit_count()) + " orbits but the " +
             "groupoid has " + std::to_string(g.component_count()) +
             " components; a global measure needs exactly one orbit per "
             "component");
  std::map<std::string, double> by_component;
  for (std::size_t o = 0; o < carrier->orbit_count(); ++o) {
    const std::string& rep = carrier->orbit_representative(o);
    std::size_t c = carrier->orbit_component(o);
    auto it = mc.weights.find(rep);
    if (it == mc.weights.end())
      fail(ErrorKind::MissingOrbitWeight,
           "measure \"" + name + "\": no weight for orbit representative \"" +
               rep + "\"");
    by_component[g.component_representative(c)] = it->second;
  }
  return InvariantMeasure::create(carrier->groupoid(), by_component);
}

OperatorMatrix ModelConfig::operator_matrix(const std::string& name) const {
  auto it = operators.find(name);
  if (it == operators.end())
    fail(ErrorKind::ValidationError, "unknown operator \"" + name + "\"");
  return OperatorMatrix::from_entries(action(it->second.carrier),
                                      it->second.entries);
}

ModelConfig parse_config(const std::string& path) {
  return parse_root(load_json_file(path), path);
}

ModelConfig parse_config_text(const std::string& text,
                              const std::string& origin) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded())
    fail(ErrorKind::ParseError, "\"" + origin + "\" is not valid JSON");
  return parse_root(parsed, origin);
}

}  // namespace toposm
