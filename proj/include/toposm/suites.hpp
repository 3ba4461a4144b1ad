#pragma once

#include <string>
#include <vector>

#include "toposm/config.hpp"
#include "toposm/report.hpp"

namespace toposm::suites {

// Shared knobs for every subcommand.  The grid applies to the flow-dependent
// suites (modular-flow, kms, trace); others ignore it.
struct Options {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::vector<double> t_grid;  // from parse_t_grid, default -5:5:0.5
};

// "a:b:step" with step > 0 and a <= b, inclusive endpoints; UsageError
std::vector<double> parse_t_grid(const std::string& text);

// Each suite appends check rows and results entries to the report.  Rows
// report failures; exceptions escape only for misuse (unknown names, wrong
// carriers), which the CLI maps to a failing "error" row.
void run_validate(const ModelConfig& cfg, Report& out);
void run_orbits(const ModelConfig& cfg, const std::string& action, Report& out);
void run_measure_check(const ModelConfig& cfg, const std::string& measure,
                       const Options& opt, Report& out);
// `to` empty means the one-point target over every object
void run_change_of_vars(const ModelConfig& cfg, const std::string& measure,
                        const std::string& from, const std::string& to,
                        const Options& opt, Report& out);
void run_extend(const ModelConfig& cfg, const std::string& measure,
                const std::string& target, const Options& opt, Report& out);
void run_glue(const ModelConfig& cfg, const std::string& section,
              const std::string& onto, const Options& opt, Report& out);
void run_chi(const ModelConfig& cfg, const std::string& action,
             const Options& opt, Report& out);
void run_rn(const ModelConfig& cfg, const std::string& mu, const std::string& nu,
            const Options& opt, Report& out);
// `op` empty draws a seeded random algebra element on the section's carrier
void run_modular_flow(const ModelConfig& cfg, const std::string& section,
                      const std::string& op, const Options& opt, Report& out);
void run_kms(const ModelConfig& cfg, const std::string& u, const std::string& v,
             const std::string& section, const Options& opt, Report& out);
// `u`/`v` empty draw seeded random algebra elements
void run_trace(const ModelConfig& cfg, const std::string& section,
               const std::string& u, const std::string& v, const Options& opt,
               Report& out);
void run_state(const ModelConfig& cfg, const std::string& measure,
               const Options& opt, Report& out);

}  // namespace toposm::suites
