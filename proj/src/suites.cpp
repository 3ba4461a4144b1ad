#include "toposm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "toposm/error.hpp"
#include "toposm/kernels.hpp"
#include "toposm/models.hpp"
#include "toposm/modular.hpp"
#include "toposm/operator.hpp"
#include "toposm/rng.hpp"

namespace toposm::suites {

using models::fattening_projection;
using models::fold_map;
using models::random_algebra_element;
using models::random_dyadic_section;
using models::random_orbit_function;

namespace {

double rel_gap(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) / scale;
}

CheckResult gap_row(const std::string& name, double a, double b, double tol,
                    const std::string& witness = "") {
  double d = rel_gap(a, b);
  if (d <= tol) {
    CheckResult r = CheckResult::pass(name);
    r.deviation = d;
    return r;
  }
  CheckResult r = CheckResult::fail(
      name, witness.empty() ? format_number(a) + " vs " + format_number(b)
                            : witness);
  r.deviation = d;
  return r;
}

std::string orbit_summary(const FiniteAction& X) {
  std::ostringstream out;
  for (int o = 0; o < X.orbit_count(); ++o) {
    if (o) out << " ";
    out << X.orbit_representative(o) << ":"
        << X.orbit_elements(o).size();
  }
  return out.str();
}

}  // namespace

std::vector<double> parse_t_grid(const std::string& text) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0, tail = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
      (in >> tail))
    fail(ErrorKind::UsageError,
         "t-grid must be a:b:step, got \"" + text + "\"");
  if (!(step > 0) || b < a)
    fail(ErrorKind::UsageError,
         "t-grid needs step > 0 and a <= b, got \"" + text + "\"");
  std::vector<double> grid;
  // inclusive endpoints; the epsilon absorbs accumulated rounding at b
  for (int k = 0; a + k * step <= b + step * 1e-9; ++k)
    grid.push_back(a + k * step);
  return grid;
}

void run_validate(const ModelConfig& cfg, Report& out) {
  const FiniteGroupoid& g = *cfg.groupoid;
  CheckResult row = CheckResult::pass("validate/groupoid");
  row.witness = std::to_string(g.object_count()) + " objects, " +
                std::to_string(g.morphism_count()) + " morphisms, " +
                std::to_string(g.component_count()) + " components";
  out.add(row);
  for (const auto& [name, X] : cfg.actions) {
    CheckResult r = CheckResult::pass("validate/action/" + name);
    r.witness = std::to_string(X->size()) + " elements, " +
                std::to_string(X->orbit_count()) + " orbits";
    out.add(r);
  }
  for (const auto& [name, mc] : cfg.measures)
    out.add(CheckResult::pass("validate/measure/" + name));
  for (const auto& [name, oc] : cfg.operators) {
    OperatorMatrix a = cfg.operator_matrix(name);
    if (a.is_in_algebra(0.0)) {
      out.add(CheckResult::pass("validate/operator/" + name));
    } else {
      out.add(CheckResult::fail("validate/operator/" + name,
                                "entries are not transport-invariant"));
    }
  }
  out.results["objects"] = std::to_string(g.object_count());
  out.results["morphisms"] = std::to_string(g.morphism_count());
  out.results["components"] = std::to_string(g.component_count());
}

void run_orbits(const ModelConfig& cfg, const std::string& action, Report& out) {
  const ActionPtr& X = cfg.action(action);
  // partition sanity: every element in exactly one orbit, orbits closed
  // under transport
  std::vector<int> seen(X->size(), 0);
  for (int o = 0; o < X->orbit_count(); ++o)
    for (int x : X->orbit_elements(o)) seen[x]++;
  bool partition = std::all_of(seen.begin(), seen.end(),
                               [](int n) { return n == 1; });
  out.add(partition
              ? CheckResult::pass("orbits/partition")
              : CheckResult::fail("orbits/partition",
                                  "orbits do not partition the carrier"));
  bool closed = true;
  const FiniteGroupoid& g = *X->groupoid();
  for (int m = 0; m < g.morphism_count() && closed; ++m)
    for (int x = X->fiber_begin(g.src(m)); x < X->fiber_end(g.src(m)); ++x)
      if (X->orbit_of(X->act(m, x)) != X->orbit_of(x)) {
        closed = false;
        break;
      }
  out.add(closed ? CheckResult::pass("orbits/transport-closed")
                 : CheckResult::fail("orbits/transport-closed",
                                     "transport leaves an orbit"));
  out.results["orbits"] = orbit_summary(*X);
  std::ostringstream stabs;
  for (int o = 0; o < X->orbit_count(); ++o) {
    if (o) stabs << " ";
    stabs << X->orbit_representative(o) << ":"
          << stabilizer_order(*X, X->orbit_representative_index(o));
  }
  out.results["stabilizer_orders"] = stabs.str();
  std::vector<int> card = internal_cardinal(*X);
  std::ostringstream cards;
  for (int c = 0; c < g.component_count(); ++c) {
    if (c) cards << " ";
    cards << g.component_representative(c) << ":" << card[c];
  }
  out.results["cardinal"] = cards.str();
}

void run_measure_check(const ModelConfig& cfg, const std::string& measure,
                       const Options& opt, Report& out) {
  InvariantMeasure mu = cfg.global_measure(measure);
  InvariantMeasureAssignment assignment(mu);

  std::vector<SampleObject> objects;
  std::vector<SampleMap> maps;
  for (const auto& [name, X] : cfg.actions) {
    objects.push_back({name, X});
    maps.push_back({name + "/identity", EquivariantMap::identity(X)});
    if (X->size() > 0) {
      maps.push_back({name + "/fold2", fold_map(X, 2)});
      maps.push_back({name + "/fatten2", fattening_projection(X, 2)});
      maps.push_back({name + "/to-point", terminal_map(X)});
    }
  }
  Rng rng(opt.seed);
  out.add(check_axioms(assignment, objects, maps, rng, opt.tolerance));
  out.results["total_mass"] =
      format_number(evaluate(mu, *terminal_action(cfg.groupoid)));
}

void run_change_of_vars(const ModelConfig& cfg, const std::string& measure,
                        const std::string& from, const std::string& to,
                        const Options& opt, Report& out) {
  InvariantMeasure mu = cfg.global_measure(measure);
  const ActionPtr& Y = cfg.action(from);
  ActionPtr X = to.empty() ? terminal_action(cfg.groupoid) : cfg.action(to);

  std::vector<EquivariantMap> fs;
  if (to.empty()) {
    fs.push_back(terminal_map(Y));
  } else {
    fs = enumerate_maps(Y, X, /*epi_only=*/false, /*limit=*/24);
  }
  if (fs.empty()) {
    out.add(CheckResult::not_applicable(
        "change-of-vars/maps",
        "no equivariant maps from " + from + " to " + (to.empty() ? "point" : to)));
    return;
  }
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const std::string base = "change-of-vars/" + std::to_string(k);
    std::vector<std::pair<std::string, OrbitFunction>> hs;
    hs.emplace_back("indicator", OrbitFunction::indicator(Y, 0));
    hs.emplace_back("constant", OrbitFunction::constant(Y, 1.0));
    hs.emplace_back("random", random_orbit_function(Y, rng, /*positive=*/false));
    for (const auto& [kind, h] : hs) {
      ChangeOfVariables cv = change_of_variables(fs[k], h, mu);
      out.add(gap_row(base + "/" + kind, cv.lhs, cv.rhs, opt.tolerance));
    }
  }
  out.results["maps_checked"] = std::to_string(fs.size());
}

void run_extend(const ModelConfig& cfg, const std::string& measure,
                const std::string& target, const Options& opt, Report& out) {
  InvariantMeasure mu = cfg.global_measure(measure);
  const ActionPtr& X = cfg.action(target);

  std::vector<ClassMember> cls;
  for (const auto& [name, A] : cfg.actions) {
    if (name == target || A->size() == 0) continue;
    cls.push_back({name, A, restrict_to(mu, A)});
  }
  if (cls.empty()) {
    out.add(CheckResult::not_applicable("extend/class",
                                        "no other objects in the config"));
    return;
  }

  double value = 0;
  try {
    value = extend_from_class(cls, X, opt.tolerance);
  } catch (const Error& e) {
    out.add(CheckResult::fail(e.kind() == ErrorKind::NoCover
                                  ? "extend/cover"
                                  : "extend/consistent",
                              e.what()));
    return;
  }
  out.add(CheckResult::pass("extend/cover"));
  out.add(CheckResult::pass("extend/consistent"));
  out.add(gap_row("extend/agrees-with-direct", value, evaluate(mu, *X),
                  opt.tolerance));

  // value must not depend on which member covers X
  std::vector<double> per_cover;
  for (const ClassMember& m : cls) {
    auto epis = enumerate_maps(m.action, X, /*epi_only=*/true, /*limit=*/1);
    if (!epis.empty())
      per_cover.push_back(class_mass_via(epis.front(), m.valuation));
  }
  if (per_cover.size() >= 2) {
    double lo = *std::min_element(per_cover.begin(), per_cover.end());
    double hi = *std::max_element(per_cover.begin(), per_cover.end());
    CheckResult r = gap_row("extend/well-defined", lo, hi, opt.tolerance);
    r.witness = std::to_string(per_cover.size()) + " covers";
    out.add(r);
  } else {
    out.add(CheckResult::not_applicable("extend/well-defined",
                                        "only one cover available"));
  }
  out.results["value"] = format_number(value);
}

void run_glue(const ModelConfig& cfg, const std::string& section,
              const std::string& onto, const Options& opt, Report& out) {
  ChiSection lambda = cfg.section(section);
  const ActionPtr& Y = cfg.action(onto);

  auto epis = enumerate_maps(lambda.carrier(), Y, /*epi_only=*/true, /*limit=*/1);
  if (epis.empty()) {
    out.add(CheckResult::fail(
        "glue/cover", "no epimorphism from the section's carrier onto " + onto));
    return;
  }
  out.add(CheckResult::pass("glue/cover"));
  std::optional<ChiSection> glued;
  try {
    glued = glue_sections(epis.front(), lambda, opt.tolerance);
  } catch (const Error& e) {
    out.add(CheckResult::fail("glue/descent", e.what()));
    return;
  }
  out.add(CheckResult::pass("glue/descent"));

  ChiSection back = pullback_section(epis.front(), *glued);
  double dev = 0;
  for (int o = 0; o < lambda.carrier()->orbit_count(); ++o)
    dev = std::max(dev, rel_gap(back.value(o), lambda.value(o)));
  CheckResult rt = dev <= opt.tolerance
                       ? CheckResult::pass("glue/round-trip")
                       : CheckResult::fail("glue/round-trip",
                                           "pullback of the glued section "
                                           "differs from the original");
  rt.deviation = dev;
  out.add(rt);

  std::ostringstream vals;
  for (int o = 0; o < Y->orbit_count(); ++o) {
    if (o) vals << " ";
    vals << Y->orbit_representative(o) << ":" << format_number(glued->value(o));
  }
  out.results["glued"] = vals.str();
}

void run_chi(const ModelConfig& cfg, const std::string& action,
             const Options& opt, Report& out) {
  const ActionPtr& X = cfg.action(action);
  GroupoidPtr slice = slice_groupoid(*X);

  bool match = slice->component_count() == X->orbit_count();
  for (int o = 0; o < X->orbit_count() && match; ++o)
    match = slice->component_representative(o) == X->orbit_representative(o);
  out.add(match
              ? CheckResult::pass("chi/slice-components-are-orbits")
              : CheckResult::fail("chi/slice-components-are-orbits",
                                  "component/orbit mismatch"));

  Rng rng(opt.seed);
  ChiSection lambda = random_dyadic_section(X, rng);
  ChiSection lambda_back = slice_measure_to_chi(X, chi_to_slice_measure(lambda));
  out.add(lambda == lambda_back
              ? CheckResult::pass("chi/section-round-trip")
              : CheckResult::fail("chi/section-round-trip",
                                  "section changed under the round trip"));

  std::vector<double> weights;
  for (int c = 0; c < slice->component_count(); ++c)
    weights.push_back(rng.next_dyadic());
  InvariantMeasure m = InvariantMeasure::from_weights(slice, weights);
  InvariantMeasure m_back = chi_to_slice_measure(slice_measure_to_chi(X, m));
  bool m_eq = m.weights() == m_back.weights();
  out.add(m_eq ? CheckResult::pass("chi/measure-round-trip")
               : CheckResult::fail("chi/measure-round-trip",
                                   "slice measure changed under the round trip"));
  out.results["slice_components"] = std::to_string(slice->component_count());
}

void run_rn(const ModelConfig& cfg, const std::string& mu, const std::string& nu,
            const Options& opt, Report& out) {
  Valuation vmu = cfg.valuation(mu);
  Valuation vnu = cfg.valuation(nu);
  std::optional<OrbitFunction> density;
  try {
    density = radon_nikodym(vmu, vnu);
  } catch (const Error& e) {
    out.add(CheckResult::fail("rn/defined", e.what()));
    return;
  }
  const OrbitFunction& f = *density;
  out.add(CheckResult::pass("rn/defined"));

  const ActionPtr& X = vmu.carrier();
  // μ(S) = ∫_S f dν, checked on every orbit atom and on the whole carrier
  double dev = 0;
  for (int o = 0; o < X->orbit_count(); ++o) {
    Subobject atom = Subobject::orbit(X, o);
    double lhs = vmu.measure_of(atom);
    double rhs = f.value(o) * vnu.measure_of(atom);
    dev = std::max(dev, rel_gap(lhs, rhs));
  }
  dev = std::max(dev, rel_gap(vmu.total(), integrate(f, vnu)));
  CheckResult r = dev <= opt.tolerance
                      ? CheckResult::pass("rn/reconstructs")
                      : CheckResult::fail("rn/reconstructs",
                                          "mu differs from (dmu/dnu) dnu");
  r.deviation = dev;
  out.add(r);

  std::ostringstream vals;
  for (int o = 0; o < X->orbit_count(); ++o) {
    if (o) vals << " ";
    vals << X->orbit_representative(o) << ":" << format_number(f.value(o));
  }
  out.results["density"] = vals.str();
}

void run_modular_flow(const ModelConfig& cfg, const std::string& section,
                      const std::string& op, const Options& opt, Report& out) {
  ChiSection lambda = cfg.section(section);
  DensitySection lam_hat = density(lambda);
  const ActionPtr& X = lambda.carrier();

  Rng rng(opt.seed);
  OperatorMatrix a = op.empty() ? random_algebra_element(X, rng)
                                : cfg.operator_matrix(op);
  if (a.carrier() != X)
    fail(ErrorKind::CarrierMismatch,
         "operator \"" + op + "\" does not live on the section's carrier");

  double conj_dev = 0, alg_dev = 0, weight_dev = 0;
  cd w0 = weight_density(a, lam_hat);
  for (double t : opt.t_grid) {
    OperatorMatrix flowed = theta(a, t, lam_hat);
    conj_dev = std::max(conj_dev,
                        flowed.max_abs_diff(theta_by_conjugation(a, t, lam_hat)));
    if (!flowed.is_in_algebra(1e-12)) alg_dev = std::max(alg_dev, 1.0);
    weight_dev = std::max(weight_dev, std::abs(weight_density(flowed, lam_hat) - w0));
  }
  CheckResult conj = conj_dev <= opt.tolerance
                         ? CheckResult::pass("modular-flow/matches-conjugation")
                         : CheckResult::fail("modular-flow/matches-conjugation",
                                             "flow disagrees with unitary "
                                             "conjugation");
  conj.deviation = conj_dev;
  out.add(conj);
  out.add(alg_dev == 0
              ? CheckResult::pass("modular-flow/algebra-preserved")
              : CheckResult::fail("modular-flow/algebra-preserved",
                                  "flowed operator leaves the algebra"));
  CheckResult wi = weight_dev <= opt.tolerance
                       ? CheckResult::pass("modular-flow/weight-invariance")
                       : CheckResult::fail("modular-flow/weight-invariance",
                                           "weight moved under the flow");
  wi.deviation = weight_dev;
  out.add(wi);

  out.add(theta(a, 0.0, lam_hat) == a
              ? CheckResult::pass("modular-flow/identity-at-zero")
              : CheckResult::fail("modular-flow/identity-at-zero",
                                  "theta_0 is not the identity"));

  double law_dev = 0;
  std::vector<double> ts = {0.5, -1.25, 2.0};
  for (double s : ts)
    for (double t : ts)
      law_dev = std::max(law_dev, theta(theta(a, t, lam_hat), s, lam_hat)
                                      .max_abs_diff(theta(a, s + t, lam_hat)));
  CheckResult law = law_dev <= opt.tolerance
                        ? CheckResult::pass("modular-flow/group-law")
                        : CheckResult::fail("modular-flow/group-law",
                                            "theta_s theta_t != theta_{s+t}");
  law.deviation = law_dev;
  out.add(law);
  out.results["grid_points"] = std::to_string(opt.t_grid.size());
}

void run_kms(const ModelConfig& cfg, const std::string& u, const std::string& v,
             const std::string& section, const Options& opt, Report& out) {
  ChiSection lambda = cfg.section(section);
  DensitySection lam_hat = density(lambda);
  OperatorMatrix ou = cfg.operator_matrix(u);
  OperatorMatrix ov = cfg.operator_matrix(v);
  out.add(kms_check(ou, ov, opt.t_grid, lam_hat.to_valuation(), lam_hat,
                    opt.tolerance));
  cd f0 = kms_function(ou, ov, cd(0, 0), lam_hat);
  cd fi = kms_function(ou, ov, cd(0, -1), lam_hat);
  out.results["F(0)"] = format_number(f0.real()) + (f0.imag() < 0 ? "-" : "+") +
                        format_number(std::abs(f0.imag())) + "i";
  out.results["F(-i)"] = format_number(fi.real()) + (fi.imag() < 0 ? "-" : "+") +
                         format_number(std::abs(fi.imag())) + "i";
}

void run_trace(const ModelConfig& cfg, const std::string& section,
               const std::string& u, const std::string& v, const Options& opt,
               Report& out) {
  ChiSection lambda = cfg.section(section);
  DensitySection lam_hat = density(lambda);
  const ActionPtr& X = lambda.carrier();

  Rng rng(opt.seed);
  OperatorMatrix ou = u.empty() ? random_algebra_element(X, rng)
                                : cfg.operator_matrix(u);
  OperatorMatrix ov = v.empty() ? random_algebra_element(X, rng)
                                : cfg.operator_matrix(v);

  if (!lam_hat.is_component_constant()) {
    out.add(CheckResult::fail("trace/component-constant",
                              "the density varies inside a component; the "
                              "weight cannot be a trace"));
    // exhibit the failure concretely on a non-constant orbit pair
    cd uv = weight_density(ou.multiply(ov), lam_hat);
    cd vu = weight_density(ov.multiply(ou), lam_hat);
    CheckResult wit = CheckResult::fail(
        "trace/witness", "weight(uv) = " + format_number(uv.real()) +
                             " but weight(vu) = " + format_number(vu.real()));
    wit.deviation = std::abs(uv - vu);
    out.add(wit);
    return;
  }
  out.add(CheckResult::pass("trace/component-constant"));
  out.add(trace_check(lam_hat, ou, ov, opt.t_grid, opt.tolerance));
}

void run_state(const ModelConfig& cfg, const std::string& measure,
               const Options& opt, Report& out) {
  Valuation raw = cfg.valuation(measure);
  const ActionPtr& X = raw.carrier();
  double total = raw.total();
  if (!(total > 0)) {
    out.add(CheckResult::fail("state/normalizable",
                              "the measure has zero total mass"));
    return;
  }
  std::vector<double> w = raw.weights();
  for (double& x : w) x /= total;
  Valuation mu = Valuation::from_weights(X, w);
  CheckResult norm = CheckResult::pass("state/normalizable");
  norm.witness = "total mass " + format_number(total);
  out.add(norm);

  EquivariantVectorField field = EquivariantVectorField::standard(X);
  StateFunctional eta = state_from_measure(field, mu, opt.tolerance);

  cd unit = eta.apply(OperatorMatrix::identity(X));
  out.add(gap_row("state/unit", unit.real(), 1.0, opt.tolerance));

  Rng rng(opt.seed);
  double neg = 0;
  for (int k = 0; k < 8; ++k) {
    OperatorMatrix a = random_algebra_element(X, rng);
    cd val = eta.apply(a.adjoint().multiply(a));
    neg = std::min(neg, val.real());
  }
  CheckResult pos = -neg <= opt.tolerance
                        ? CheckResult::pass("state/positive")
                        : CheckResult::fail("state/positive",
                                            "eta(a* a) dips negative");
  pos.deviation = -neg;
  out.add(pos);

  OperatorMatrix a = random_algebra_element(X, rng);
  OperatorMatrix b = random_algebra_element(X, rng);
  cd lin = eta.apply(a.scale(cd(2, 0)).add(b.scale(cd(0, 1)))) -
           (cd(2, 0) * eta.apply(a) + cd(0, 1) * eta.apply(b));
  CheckResult linear = std::abs(lin) <= opt.tolerance
                           ? CheckResult::pass("state/linear")
                           : CheckResult::fail("state/linear",
                                               "eta is not linear");
  linear.deviation = std::abs(lin);
  out.add(linear);

  Valuation back = measure_from_state(eta, X);
  double dev = 0;
  for (int o = 0; o < X->orbit_count(); ++o)
    dev = std::max(dev, rel_gap(back.weight(o), mu.weight(o)));
  CheckResult rt = dev <= opt.tolerance
                       ? CheckResult::pass("state/round-trip")
                       : CheckResult::fail("state/round-trip",
                                           "recovered measure differs");
  rt.deviation = dev;
  out.add(rt);

  std::ostringstream vals;
  for (int o = 0; o < X->orbit_count(); ++o) {
    if (o) vals << " ";
    vals << X->orbit_representative(o) << ":" << format_number(back.weight(o));
  }
  out.results["recovered"] = vals.str();
}

}  // namespace toposm::suites
