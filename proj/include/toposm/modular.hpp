#pragma once

#include <complex>
#include <vector>

#include "toposm/check.hpp"
#include "toposm/operator.hpp"

namespace toposm {

// Modular time evolution: θ_t(a)[x][y] = (λ̂(x)/λ̂(y))^{-it} · a[x][y].
// Equals Ad(U_t*) for U_t = diag(λ̂^{it}); the diagonal is copied untouched,
// so the induced weight is invariant bit for bit.
OperatorMatrix theta(const OperatorMatrix& a, double t, const DensitySection& lambda_hat);

// U_t = diag(λ̂(x)^{it}); unitary, U_s U_t = U_{s+t}
OperatorMatrix modular_unitary(double t, const DensitySection& lambda_hat);

// conjugation form θ_t(a) = U_t* a U_t, the independent oracle for theta
OperatorMatrix theta_by_conjugation(const OperatorMatrix& a, double t,
                                    const DensitySection& lambda_hat);

// Character of the line bundle attached to modular parameter t, relative to
// a fixed reference density. Tensoring adds parameters.
struct LineBundleChar {
  double t;
  DensitySection reference;
};
LineBundleChar tensor_char(const LineBundleChar& a, const LineBundleChar& b);

// F(z) = Σ_{x,y same fiber} (λ̂(y)/λ̂(x))^{iz} · u[x][y] · v[y][x] · λ̂(x),
// holomorphic in the strip; F(t) = weight(θ_t(u)·v) and
// F(t−i) = weight(v·θ_t(u)) on the boundaries.
// Errors: DomainError (Im z outside [−1,0]), NotInAlgebra, CarrierMismatch.
cd kms_function(const OperatorMatrix& u, const OperatorMatrix& v, cd z,
                const DensitySection& lambda_hat);

// Verifies across the t grid, against the valuation mu whose density is
// lambda_hat (pass a corrupted density to probe the negative direction):
//   weight-invariance  weight(θ_t(u), mu) = weight(u, mu), exactly
//   boundary-real      F(t)   = weight(θ_t(u)·v, mu)
//   boundary-shifted   F(t−i) = weight(v·θ_t(u), mu)
// Failures (including thrown precondition errors) come back as rows.
std::vector<CheckResult> kms_check(const OperatorMatrix& u, const OperatorMatrix& v,
                                   const std::vector<double>& t_grid, const Valuation& mu,
                                   const DensitySection& lambda_hat, double tol = 1e-9);
// same, with λ̂ derived from mu
std::vector<CheckResult> kms_check(const OperatorMatrix& u, const OperatorMatrix& v,
                                   const std::vector<double>& t_grid, const Valuation& mu,
                                   double tol = 1e-9);

// With a component-constant density the weight is a trace and the flow is
// trivial: θ_t = id exactly and weight(uv) = weight(vu).
// Errors: NotComponentConstant.
std::vector<CheckResult> trace_check(const DensitySection& lambda_hat, const OperatorMatrix& u,
                                     const OperatorMatrix& v, const std::vector<double>& t_grid,
                                     double tol = 1e-9);

// Internal map X → l²(Y): a vector over the fiber of Y at base(x) for each
// element x, commuting with transport: v(g·x) = ρ(g) v(x).
class EquivariantVectorField {
 public:
  // vectors[x][j]: coordinate of v(x) at the j-th element of Y's fiber over
  // base(x) (fiber order). Errors: GroupoidMismatch, ValidationError (sizes),
  // NotEquivariant.
  static EquivariantVectorField create(ActionPtr X, ActionPtr Y,
                                       std::vector<std::vector<cd>> vectors);
  // v(x) = e_x on Y = X
  static EquivariantVectorField standard(ActionPtr X);

  const ActionPtr& source() const { return X_; }
  const ActionPtr& target() const { return Y_; }
  const std::vector<cd>& vector_at(int x) const { return vectors_[x]; }

 private:
  EquivariantVectorField(ActionPtr X, ActionPtr Y, std::vector<std::vector<cd>> vectors);
  ActionPtr X_, Y_;
  std::vector<std::vector<cd>> vectors_;
};

// η(h) = Σ_orbits w(o) ⟨v(rep_o), h v(rep_o)⟩: positive, linear, η(1) = 1
class StateFunctional {
 public:
  cd apply(const OperatorMatrix& h) const;  // CarrierMismatch
  const ActionPtr& algebra_carrier() const { return Y_; }

 private:
  friend StateFunctional state_from_measure(const EquivariantVectorField& v, const Valuation& mu,
                                            double tol);
  struct Term {
    double weight;
    int object;               // base object of the representative
    std::vector<cd> vector;   // over the fiber of Y at that object
  };
  StateFunctional(ActionPtr Y, std::vector<Term> terms);
  ActionPtr Y_;
  std::vector<Term> terms_;
};

// requires ∫‖v(x)‖² dμ = 1 within tol; NotNormalized otherwise
StateFunctional state_from_measure(const EquivariantVectorField& v, const Valuation& mu,
                                   double tol = 1e-9);

// μ(S) := η(P_S), recovered through the orbit projections of X
Valuation measure_from_state(const StateFunctional& eta, const ActionPtr& X);

}  // namespace toposm
