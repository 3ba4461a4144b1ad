// topos-measure: checks finite groupoid actions and their invariant
// measures, modular sections, and modular flow from a JSON config.
//
// Exit codes: 0 all checks pass (n/a rows do not count), 1 at least one
// check failed, 2 bad invocation.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "toposm/config.hpp"
#include "toposm/error.hpp"
#include "toposm/report.hpp"
#include "toposm/suites.hpp"

namespace {

std::uint64_t seed_from_env() {
  const char* raw = std::getenv("TOPOS_MEASURE_SEED");
  if (!raw || !*raw) return 0;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(raw, &end, 10);
  return (end && *end == '\0') ? v : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant measures and modular flow on finite groupoid actions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = seed_from_env();
  double tolerance = 1e-9;
  std::string t_grid = "-5:5:0.5";
  bool as_json = false, as_text = false;

  app.add_option("--config", config_path, "model config file")->required();
  app.add_option("--seed", seed,
                 "RNG seed (default: TOPOS_MEASURE_SEED or 0)");
  app.add_option("--tolerance", tolerance, "relative comparison tolerance")
      ->capture_default_str();
  app.add_option("--t-grid", t_grid, "flow parameter grid a:b:step")
      ->capture_default_str();
  auto* jf = app.add_flag("--json", as_json, "JSON report (default)");
  app.add_flag("--text", as_text, "plain text report")->excludes(jf);

  std::string action, measure, from, to, target, section, onto;
  std::string mu_name, nu_name, u_name, v_name, op_name;

  app.add_subcommand("validate", "validate the groupoid, actions, and operators");

  auto* c_orbits = app.add_subcommand("orbits", "orbit decomposition of an action");
  c_orbits->add_option("--action", action, "action name")->required();

  auto* c_measure = app.add_subcommand(
      "measure-check", "invariant-measure axioms for a global measure");
  c_measure->add_option("--measure", measure, "global measure name")->required();

  auto* c_cov = app.add_subcommand(
      "change-of-vars", "pushforward identity along equivariant maps");
  c_cov->add_option("--measure", measure, "global measure name")->required();
  c_cov->add_option("--from", from, "source action")->required();
  c_cov->add_option("--to", to, "target action (default: one point per object)");

  auto* c_extend = app.add_subcommand(
      "extend", "extend a measure from the other objects to a target");
  c_extend->add_option("--measure", measure, "global measure name")->required();
  c_extend->add_option("--target", target, "action to extend to")->required();

  auto* c_glue = app.add_subcommand(
      "glue", "descend a section along an epimorphism");
  c_glue->add_option("--section", section, "section name")->required();
  c_glue->add_option("--onto", onto, "target action")->required();

  auto* c_chi = app.add_subcommand(
      "chi", "sections as invariant measures on the slice groupoid");
  c_chi->add_option("--action", action, "action name")->required();

  auto* c_rn = app.add_subcommand("rn", "density of one valuation against another");
  c_rn->add_option("--mu", mu_name, "numerator valuation")->required();
  c_rn->add_option("--nu", nu_name, "denominator valuation")->required();

  auto* c_flow = app.add_subcommand(
      "modular-flow", "flow generated by a section, against unitary conjugation");
  c_flow->add_option("--section", section, "section name")->required();
  c_flow->add_option("--operator", op_name, "operator to flow (default: seeded random)");

  auto* c_kms = app.add_subcommand(
      "kms", "boundary condition for the flow's equilibrium");
  c_kms->add_option("--u", u_name, "left operator")->required();
  c_kms->add_option("--v", v_name, "right operator")->required();
  c_kms->add_option("--section", section, "section name")->required();

  auto* c_trace = app.add_subcommand(
      "trace", "trace property of the weight for a constant density");
  c_trace->add_option("--section", section, "section name")->required();
  c_trace->add_option("--u", u_name, "left operator (default: seeded random)");
  c_trace->add_option("--v", v_name, "right operator (default: seeded random)");

  auto* c_state = app.add_subcommand(
      "state", "normalized measure as a state on the algebra");
  c_state->add_option("--measure", measure, "measure name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  toposm::Report report;
  report.command = app.get_subcommands().front()->get_name();
  report.seed = seed;
  report.inputs["config"] = config_path;
  report.inputs["tolerance"] = toposm::format_number(tolerance);
  auto note = [&](const std::string& key, const std::string& value) {
    if (!value.empty()) report.inputs[key] = value;
  };
  note("action", action);
  note("measure", measure);
  note("from", from);
  note("to", to);
  note("target", target);
  note("section", section);
  note("onto", onto);
  note("mu", mu_name);
  note("nu", nu_name);
  note("u", u_name);
  note("v", v_name);
  note("operator", op_name);

  toposm::suites::Options opt;
  opt.seed = seed;
  opt.tolerance = tolerance;
  try {
    opt.t_grid = toposm::suites::parse_t_grid(t_grid);
  } catch (const toposm::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (c_flow->parsed() || c_kms->parsed() || c_trace->parsed())
    report.inputs["t_grid"] = t_grid;

  auto start = std::chrono::steady_clock::now();
  try {
    toposm::ModelConfig cfg = [&] {
      try {
        return toposm::parse_config(config_path);
      } catch (const toposm::Error& e) {
        throw toposm::Error(toposm::ErrorKind::ParseError,
                            std::string("config: ") + e.what());
      }
    }();
    using namespace toposm::suites;
    if (report.command == "validate") run_validate(cfg, report);
    else if (c_orbits->parsed()) run_orbits(cfg, action, report);
    else if (c_measure->parsed()) run_measure_check(cfg, measure, opt, report);
    else if (c_cov->parsed()) run_change_of_vars(cfg, measure, from, to, opt, report);
    else if (c_extend->parsed()) run_extend(cfg, measure, target, opt, report);
    else if (c_glue->parsed()) run_glue(cfg, section, onto, opt, report);
    else if (c_chi->parsed()) run_chi(cfg, action, opt, report);
    else if (c_rn->parsed()) run_rn(cfg, mu_name, nu_name, opt, report);
    else if (c_flow->parsed()) run_modular_flow(cfg, section, op_name, opt, report);
    else if (c_kms->parsed()) run_kms(cfg, u_name, v_name, section, opt, report);
    else if (c_trace->parsed()) run_trace(cfg, section, u_name, v_name, opt, report);
    else if (c_state->parsed()) run_state(cfg, measure, opt, report);
  } catch (const toposm::Error& e) {
    report.add(toposm::CheckResult::fail("error", e.what()));
  } catch (const std::exception& e) {
    report.add(toposm::CheckResult::fail("error", e.what()));
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(elapsed).count();

  std::cout << (as_text ? report.to_text() : report.to_json());
  return report.passed() ? 0 : 1;
}
