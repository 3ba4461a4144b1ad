#include "toposm/modular.hpp"

#include <algorithm>
#include <cmath>

#include "toposm/error.hpp"

namespace toposm {

namespace {

double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double rel_gap(cd a, cd b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

OperatorMatrix theta(const OperatorMatrix& a, double t, const DensitySection& lambda_hat) {
  if (a.carrier() != lambda_hat.carrier())
    fail(ErrorKind::CarrierMismatch, "operator and density live on different actions");
  const auto layout = kernels::BlockLayout::of(*a.carrier());
  std::vector<cd> out(a.dense().size());
  kernels::modular_phase(layout, lambda_hat.values().data(), t, a.dense().data(), out.data());
  return OperatorMatrix::from_dense(a.carrier(), std::move(out));
}

OperatorMatrix modular_unitary(double t, const DensitySection& lambda_hat) {
  const ActionPtr& X = lambda_hat.carrier();
  const std::size_t n = X->size();
  std::vector<cd> data(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const double phase = t * std::log(lambda_hat.at(static_cast<int>(x)));
    data[x * n + x] = cd(std::cos(phase), std::sin(phase));
  }
  return OperatorMatrix::from_dense(X, std::move(data));
}

OperatorMatrix theta_by_conjugation(const OperatorMatrix& a, double t,
                                    const DensitySection& lambda_hat) {
  const OperatorMatrix u = modular_unitary(t, lambda_hat);
  return u.adjoint().multiply(a).multiply(u);
}

LineBundleChar tensor_char(const LineBundleChar& a, const LineBundleChar& b) {
  if (a.reference.carrier() != b.reference.carrier() ||
      a.reference.values() != b.reference.values())
    fail(ErrorKind::CarrierMismatch, "tensoring characters over different references");
  return {a.t + b.t, a.reference};
}

cd kms_function(const OperatorMatrix& u, const OperatorMatrix& v, cd z,
                const DensitySection& lambda_hat) {
  if (u.carrier() != v.carrier() || u.carrier() != lambda_hat.carrier())
    fail(ErrorKind::CarrierMismatch, "operators and density live on different actions");
  if (z.imag() < -1.0 || z.imag() > 0.0)
    fail(ErrorKind::DomainError, "evaluation outside the strip Im(z) in [-1, 0]");
  if (!u.is_in_algebra(1e-12))
    fail(ErrorKind::NotInAlgebra, "left operator does not commute with the transports");
  if (!v.is_in_algebra(1e-12))
    fail(ErrorKind::NotInAlgebra, "right operator does not commute with the transports");
  const auto layout = kernels::BlockLayout::of(*u.carrier());
  return kernels::kms_sum(layout, lambda_hat.values().data(), z, u.dense().data(),
                          v.dense().data());
}

std::vector<CheckResult> kms_check(const OperatorMatrix& u, const OperatorMatrix& v,
                                   const std::vector<double>& t_grid, const Valuation& mu,
                                   const DensitySection& lambda_hat, double tol) {
  std::vector<CheckResult> out;
  auto guarded = [&out](const std::string& name, auto&& body) {
    try {
      body(name);
    } catch (const Error& e) {
      out.push_back(CheckResult::fail(name, e.what()));
    }
  };

  guarded("kms/weight-invariance", [&](const std::string& name) {
    const cd base = weight(u, mu);
    double worst = 0.0;
    std::string at;
    for (double t : t_grid) {
      const cd flowed = weight(theta(u, t, lambda_hat), mu);
      const double gap = std::abs(flowed - base);
      if (gap > worst) {
        worst = gap;
        at = format_double(t);
      }
    }
    if (worst > 0.0)
      out.push_back(CheckResult::fail(name, "weight drifts under the flow at t = " + at, worst));
    else
      out.push_back(CheckResult::pass(name));
  });

  guarded("kms/boundary-real", [&](const std::string& name) {
    double worst = 0.0;
    std::string at;
    for (double t : t_grid) {
      const cd direct = kms_function(u, v, cd(t, 0.0), lambda_hat);
      const cd via_weight = weight(theta(u, t, lambda_hat).multiply(v), mu);
      const double gap = rel_gap(direct, via_weight);
      if (gap > worst) {
        worst = gap;
        at = format_double(t);
      }
    }
    if (worst > tol)
      out.push_back(CheckResult::fail(name, "F(t) differs from the weight form at t = " + at,
                                      worst));
    else
      out.push_back(CheckResult::pass(name));
  });

  guarded("kms/boundary-shifted", [&](const std::string& name) {
    double worst = 0.0;
    std::string at;
    for (double t : t_grid) {
      const cd direct = kms_function(u, v, cd(t, -1.0), lambda_hat);
      const cd via_weight = weight(v.multiply(theta(u, t, lambda_hat)), mu);
      const double gap = rel_gap(direct, via_weight);
      if (gap > worst) {
        worst = gap;
        at = format_double(t);
      }
    }
    if (worst > tol)
      out.push_back(CheckResult::fail(name,
                                      "F(t-i) differs from the weight form at t = " + at, worst));
    else
      out.push_back(CheckResult::pass(name));
  });

  return out;
}

std::vector<CheckResult> kms_check(const OperatorMatrix& u, const OperatorMatrix& v,
                                   const std::vector<double>& t_grid, const Valuation& mu,
                                   double tol) {
  return kms_check(u, v, t_grid, mu, DensitySection::from_valuation(mu), tol);
}

std::vector<CheckResult> trace_check(const DensitySection& lambda_hat, const OperatorMatrix& u,
                                     const OperatorMatrix& v, const std::vector<double>& t_grid,
                                     double tol) {
  if (!lambda_hat.is_component_constant())
    fail(ErrorKind::NotComponentConstant,
         "trace requires the density to be constant on each component");
  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    std::string at;
    for (double t : t_grid)
      for (const OperatorMatrix* a : {&u, &v}) {
        const double gap = theta(*a, t, lambda_hat).max_abs_diff(*a);
        if (gap > worst) {
          worst = gap;
          at = format_double(t);
        }
      }
    if (worst > 0.0)
      out.push_back(CheckResult::fail("trace/flow-is-identity",
                                      "the flow moves an operator at t = " + at, worst));
    else
      out.push_back(CheckResult::pass("trace/flow-is-identity"));
  }

  {
    const Valuation mu = lambda_hat.to_valuation();
    const cd uv = weight(u.multiply(v), mu);
    const cd vu = weight(v.multiply(u), mu);
    const double gap = rel_gap(uv, vu);
    if (gap > tol)
      out.push_back(CheckResult::fail("trace/commutativity",
                                      "weight(uv) differs from weight(vu)", std::abs(uv - vu)));
    else
      out.push_back(CheckResult::pass("trace/commutativity"));
  }

  return out;
}

EquivariantVectorField::EquivariantVectorField(ActionPtr X, ActionPtr Y,
                                               std::vector<std::vector<cd>> vectors)
    : X_(std::move(X)), Y_(std::move(Y)), vectors_(std::move(vectors)) {}

EquivariantVectorField EquivariantVectorField::create(ActionPtr X, ActionPtr Y,
                                                      std::vector<std::vector<cd>> vectors) {
  if (!same_groupoid(X->groupoid(), Y->groupoid()))
    fail(ErrorKind::GroupoidMismatch, "vector field between actions of different groupoids");
  if (static_cast<int>(vectors.size()) != X->size())
    fail(ErrorKind::ValidationError, "one vector per element required");
  for (int x = 0; x < X->size(); ++x)
    if (static_cast<int>(vectors[x].size()) != Y->fiber_size(X->base_object(x)))
      fail(ErrorKind::ValidationError, "vector at '" + X->element_id(x) +
                                           "' has the wrong dimension for its fiber");
  // v(g·x)[g·y] = v(x)[y], coordinates in fiber order
  const auto& g = *X->groupoid();
  for (int m = 0; m < g.morphism_count(); ++m) {
    const int s = g.src(m);
    for (int x = X->fiber_begin(s); x < X->fiber_end(s); ++x) {
      const int gx = X->act(m, x);
      for (int y = Y->fiber_begin(s); y < Y->fiber_end(s); ++y) {
        const int gy = Y->act(m, y);
        const cd lhs = vectors[gx][gy - Y->fiber_begin(X->base_object(gx))];
        const cd rhs = vectors[x][y - Y->fiber_begin(s)];
        if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs)))
          fail(ErrorKind::NotEquivariant,
               "vector field does not commute with transport along '" + g.morphism_id(m) +
                   "' at element '" + X->element_id(x) + "'");
      }
    }
  }
  return EquivariantVectorField(std::move(X), std::move(Y), std::move(vectors));
}

EquivariantVectorField EquivariantVectorField::standard(ActionPtr X) {
  std::vector<std::vector<cd>> vectors(X->size());
  for (int x = 0; x < X->size(); ++x) {
    const int lo = X->fiber_begin(X->base_object(x));
    const int hi = X->fiber_end(X->base_object(x));
    vectors[x].assign(hi - lo, cd{});
    vectors[x][x - lo] = cd(1.0, 0.0);
  }
  return EquivariantVectorField(X, X, std::move(vectors));
}

StateFunctional::StateFunctional(ActionPtr Y, std::vector<Term> terms)
    : Y_(std::move(Y)), terms_(std::move(terms)) {}

cd StateFunctional::apply(const OperatorMatrix& h) const {
  if (h.carrier() != Y_)
    fail(ErrorKind::CarrierMismatch, "state applied to an operator on a different action");
  cd sum{};
  for (const auto& term : terms_) {
    const int lo = Y_->fiber_begin(term.object);
    const int d = static_cast<int>(term.vector.size());
    cd quad{};
    for (int i = 0; i < d; ++i) {
      cd row{};
      for (int j = 0; j < d; ++j) row += h.at(lo + i, lo + j) * term.vector[j];
      quad += std::conj(term.vector[i]) * row;
    }
    sum += term.weight * quad;
  }
  return sum;
}

StateFunctional state_from_measure(const EquivariantVectorField& v, const Valuation& mu,
                                   double tol) {
  if (v.source() != mu.carrier())
    fail(ErrorKind::CarrierMismatch, "vector field and valuation live on different actions");
  const ActionPtr& X = v.source();
  double norm = 0.0;
  for (int o = 0; o < X->orbit_count(); ++o) {
    const auto& vec = v.vector_at(X->orbit_representative_index(o));
    double sq = 0.0;
    for (const cd& c : vec) sq += std::norm(c);
    norm += mu.weight(o) * sq;
  }
  if (std::abs(norm - 1.0) > tol)
    fail(ErrorKind::NotNormalized,
         "the field's mass under the valuation is " + format_double(norm) + ", not 1");
  std::vector<StateFunctional::Term> terms;
  terms.reserve(X->orbit_count());
  for (int o = 0; o < X->orbit_count(); ++o) {
    const int rep = X->orbit_representative_index(o);
    terms.push_back({mu.weight(o), X->base_object(rep), v.vector_at(rep)});
  }
  return StateFunctional(v.target(), std::move(terms));
}

Valuation measure_from_state(const StateFunctional& eta, const ActionPtr& X) {
  if (eta.algebra_carrier() != X)
    fail(ErrorKind::CarrierMismatch, "state does not act on operators over the given action");
  const std::size_t n = X->size();
  std::vector<double> weights(X->orbit_count());
  for (int o = 0; o < X->orbit_count(); ++o) {
    std::vector<cd> data(n * n);
    for (int x : X->orbit_elements(o)) data[static_cast<std::size_t>(x) * n + x] = cd(1.0, 0.0);
    const cd m = eta.apply(OperatorMatrix::from_dense(X, std::move(data)));
    // positivity of the state puts η(P) in [0, 1] up to roundoff
    weights[o] = std::max(0.0, m.real());
  }
  return Valuation::from_weights(X, std::move(weights));
}

}  // namespace toposm
