#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "support.hpp"
#include "toposm/config.hpp"
#include "toposm/error.hpp"
#include "toposm/measure.hpp"
#include "toposm/operator.hpp"

using namespace toposm;

namespace {

// expect parsing to fail with `kind` and a message carrying the given
// JSON-pointer location
void expect_fail_at(const std::string& text, ErrorKind kind, const std::string& pointer) {
  try {
    parse_config_text(text, "inline");
    FAIL_CHECK("no error raised; expected pointer " << pointer);
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
    CHECK(std::string(e.what()).find(pointer) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("fixture files parse to the expected inventory") {
  ModelConfig z2 = parse_config(testing::fixture("z2_three.json"));
  CHECK(z2.groupoid->object_count() == 1);
  CHECK(z2.groupoid->morphism_count() == 2);
  CHECK(z2.actions.size() == 3);
  CHECK(z2.measures.size() == 5);
  CHECK(z2.operators.size() == 2);
  CHECK(z2.action("X")->size() == 3);
  CHECK(z2.action("X")->orbit_count() == 2);
  CHECK(z2.measure("mu").on == "X");

  ModelConfig minimal = parse_config(testing::fixture("minimal.json"));
  CHECK(minimal.actions.size() == 1);
  CHECK(minimal.action("X")->size() == 1);

  ModelConfig kms = parse_config(testing::fixture("kms_pair.json"));
  CHECK(kms.operators.size() == 2);
  OperatorMatrix u = kms.operator_matrix("u");
  CHECK(u.carrier()->size() == 2);
}

TEST_CASE("weight tables convert to valuations, sections, and measures") {
  ModelConfig z2 = parse_config(testing::fixture("z2_three.json"));
  Valuation mu = z2.valuation("mu");
  CHECK(mu.total() == 8.0);  // orbit {a,b} weight 2, orbit {c} weight 6
  ChiSection lam = z2.section("lam");
  CHECK(lam.carrier() == z2.action("X"));

  ModelConfig minimal = parse_config(testing::fixture("minimal.json"));
  InvariantMeasure m = minimal.global_measure("mu");
  CHECK(m.weights().size() == 1);
  CHECK(m.weight(0) == 1.0);
}

TEST_CASE("global measures require one orbit per component") {
  // X has 2 orbits but the groupoid has 1 component
  ModelConfig z2 = parse_config(testing::fixture("z2_three.json"));
  CHECK_THROWS_AS(z2.global_measure("mu"), Error);
  // P (a single fixed point) is a valid component carrier
  InvariantMeasure h = z2.global_measure("half");
  CHECK(h.weight(0) == 0.5);
}

TEST_CASE("lookups by unknown name fail cleanly") {
  ModelConfig z2 = parse_config(testing::fixture("z2_three.json"));
  CHECK_THROWS_AS(z2.action("nope"), Error);
  CHECK_THROWS_AS(z2.measure("nope"), Error);
  CHECK_THROWS_AS(z2.valuation("nope"), Error);
  CHECK_THROWS_AS(z2.operator_matrix("nope"), Error);
  CHECK_THROWS_AS(parse_config("/nonexistent/config.json"), Error);
}

TEST_CASE("structural mistakes report their JSON pointer") {
  // morphism with a dangling src
  expect_fail_at(R"({
    "groupoid": {
      "objects": ["A"],
      "morphisms": [{"name": "e", "src": "A", "dst": "A"},
                    {"name": "f", "src": "B", "dst": "A"}],
      "compose": [["e","e","e"]]
    }
  })",
                 ErrorKind::ValidationError, "/groupoid/morphisms/1");

  // missing required key
  expect_fail_at(R"({
    "groupoid": {
      "objects": ["A"],
      "morphisms": [{"name": "e", "src": "A"}],
      "compose": [["e","e","e"]]
    }
  })",
                 ErrorKind::ParseError, "/groupoid/morphisms/0");

  // compose rows are triples
  expect_fail_at(R"({
    "groupoid": {
      "objects": ["A"],
      "morphisms": [{"name": "e", "src": "A", "dst": "A"}],
      "compose": [["e","e"]]
    }
  })",
                 ErrorKind::ParseError, "/groupoid/compose/0");
}

TEST_CASE("measure and operator references are validated with locations") {
  std::string base = R"({
    "groupoid": {
      "objects": ["A"],
      "morphisms": [{"name": "e", "src": "A", "dst": "A"}],
      "compose": [["e","e","e"]]
    },
    "actions": {"X": {"fibers": {"A": ["x"]}, "maps": {}}},
  )";

  expect_fail_at(base + R"("measures": {"m": {"on": "Y", "weights": {"x": 1}}}})",
                 ErrorKind::ValidationError, "/measures/m/on");
  expect_fail_at(base + R"("measures": {"m": {"on": "X", "weights": {"x": "one"}}}})",
                 ErrorKind::ParseError, "/measures/m/weights/x");
  expect_fail_at(base + R"("operators": {"u": {"carrier": "Y", "entries": []}}})",
                 ErrorKind::ValidationError, "/operators/u/carrier");
  expect_fail_at(base + R"("operators": {"u": {"carrier": "X", "entries": [["x","x",1]]}}})",
                 ErrorKind::ParseError, "/operators/u/entries/0");
  // a fiber over an unknown object fails action validation at the action
  expect_fail_at(R"({
    "groupoid": {
      "objects": ["A"],
      "morphisms": [{"name": "e", "src": "A", "dst": "A"}],
      "compose": [["e","e","e"]]
    },
    "actions": {"X": {"fibers": {"B": ["x"]}, "maps": {}}}
  })",
                 ErrorKind::ValidationError, "/actions/X");
}

TEST_CASE("identity transport maps may be omitted") {
  std::string text = R"({
    "groupoid": {
      "objects": ["A"],
      "morphisms": [{"name": "e", "src": "A", "dst": "A"},
                    {"name": "s", "src": "A", "dst": "A"}],
      "compose": [["e","e","e"],["e","s","s"],["s","e","s"],["s","s","e"]]
    },
    "actions": {"X": {"fibers": {"A": ["a","b"]}, "maps": {"s": {"a":"b","b":"a"}}}}
  })";
  ModelConfig cfg = parse_config_text(text, "inline");
  ActionPtr X = cfg.action("X");
  CHECK(X->size() == 2);
  CHECK(X->orbit_count() == 1);
}

TEST_CASE("operators load from a relative file next to the config") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "toposm_cfg_test";
  fs::create_directories(dir);
  {
    std::ofstream op(dir / "op_u.json");
    op << R"({"carrier": "X", "entries": [["a","b",1,0]]})";
  }
  {
    std::ofstream cfg(dir / "main.json");
    cfg << R"({
      "groupoid": {
        "objects": ["A"],
        "morphisms": [{"name": "e", "src": "A", "dst": "A"}],
        "compose": [["e","e","e"]]
      },
      "actions": {"X": {"fibers": {"A": ["a","b"]}, "maps": {}}},
      "operators": {"u": "op_u.json"}
    })";
  }
  ModelConfig cfg = parse_config((dir / "main.json").string());
  OperatorMatrix u = cfg.operator_matrix("u");
  CHECK(u.carrier()->size() == 2);
  CHECK(u.dense()[0 * 2 + 1] == cd(1, 0));

  // a dangling operator path reports where it was referenced
  {
    std::ofstream cfg2(dir / "broken.json");
    cfg2 << R"({
      "groupoid": {
        "objects": ["A"],
        "morphisms": [{"name": "e", "src": "A", "dst": "A"}],
        "compose": [["e","e","e"]]
      },
      "actions": {"X": {"fibers": {"A": ["a"]}, "maps": {}}},
      "operators": {"u": "missing.json"}
    })";
  }
  try {
    parse_config((dir / "broken.json").string());
    FAIL_CHECK("no error raised for a dangling operator path");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/operators/u") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("text parser rejects malformed JSON with a parse error") {
  CHECK_THROWS_AS(parse_config_text("{ not json", "inline"), Error);
  try {
    parse_config_text("[1,2,3]", "inline");
    FAIL_CHECK("arrays are not configs");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}
