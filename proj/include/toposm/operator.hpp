#pragma once

#include <complex>
#include <string>
#include <vector>

#include "toposm/action.hpp"
#include "toposm/kernels.hpp"
#include "toposm/measure.hpp"
#include "toposm/valuation.hpp"

namespace toposm {

using cd = std::complex<double>;

// Bounded operator on l²(X), stored dense with the convention
// a[x][y] = ⟨e_x, a e_y⟩. Entries outside the per-object diagonal blocks
// are structurally zero. Membership in the equivariant algebra A means
// commuting with every transport unitary.
class OperatorMatrix {
 public:
  static OperatorMatrix zero(ActionPtr carrier);
  static OperatorMatrix identity(ActionPtr carrier);
  // entries as (x, y, re, im); omitted entries are zero; errors:
  // UnknownElement, ValidationError (entry outside the blocks, duplicate)
  struct Entry {
    std::string x, y;
    double re, im;
  };
  static OperatorMatrix from_entries(ActionPtr carrier, const std::vector<Entry>& entries);
  // dense row-major data; off-block entries must be exactly zero
  static OperatorMatrix from_dense(ActionPtr carrier, std::vector<cd> data);

  const ActionPtr& carrier() const { return carrier_; }
  int dim() const { return dim_; }
  cd at(int x, int y) const { return data_[static_cast<std::size_t>(x) * dim_ + y]; }
  const std::vector<cd>& dense() const { return data_; }

  OperatorMatrix multiply(const OperatorMatrix& other) const;  // CarrierMismatch
  OperatorMatrix add(const OperatorMatrix& other) const;
  OperatorMatrix scale(cd factor) const;
  OperatorMatrix adjoint() const;

  // a ρ(g) = ρ(g) a for every morphism g, i.e. a[g·x][g·y] = a[x][y];
  // tol = 0 demands exact equality
  bool is_in_algebra(double tol = 0.0) const;

  bool operator==(const OperatorMatrix& other) const {
    return carrier_ == other.carrier_ && data_ == other.data_;
  }

  double max_abs_diff(const OperatorMatrix& other) const;  // CarrierMismatch

 private:
  OperatorMatrix(ActionPtr carrier, std::vector<cd> data);
  ActionPtr carrier_;
  int dim_;
  std::vector<cd> data_;
  kernels::BlockLayout layout_;
};

// Basis of the commutant {a block-diagonal : aρ(g) = ρ(g)a}: the indicator
// matrices of the diagonal orbits of same-fiber pairs. Deterministic order.
std::vector<OperatorMatrix> commutant_basis(const ActionPtr& X);

// μ(a) = Σ_orbits weight(o)·a[rep_o][rep_o]; requires the diagonal to be
// orbit-constant (tolerance rel_tol, relative), NotEquivariant otherwise
cd weight(const OperatorMatrix& a, const Valuation& mu, double rel_tol = 1e-9);

// Pointwise positive density on elements, constant on orbits when honest.
// The unchecked constructor exists so negative controls can feed the modular
// machinery a density that deliberately breaks orbit-constancy.
class DensitySection {
 public:
  // λ̂(x) = section value of orbit(x) / |orbit(x)|
  static DensitySection from_section(const ChiSection& lambda);
  static DensitySection from_valuation(const Valuation& mu);  // NotWellSupported on zero weights
  static DensitySection unchecked(ActionPtr carrier, std::vector<double> per_element);

  const ActionPtr& carrier() const { return carrier_; }
  double at(int x) const { return values_[x]; }
  const std::vector<double>& values() const { return values_; }

  bool is_orbit_constant() const;
  bool is_component_constant() const;

  // the valuation with weight(o) = λ̂(rep_o)·|o|; requires orbit-constancy
  Valuation to_valuation() const;

 private:
  DensitySection(ActionPtr carrier, std::vector<double> values);
  ActionPtr carrier_;
  std::vector<double> values_;
};

// the density normalization of a section: λ̂(x) = λ(orbit(x)) / |orbit(x)|
DensitySection density(const ChiSection& lambda);

// Σ_x λ̂(x)·a[x][x]; the dense form of weight(a, μ) when λ̂ = density of μ
cd weight_density(const OperatorMatrix& a, const DensitySection& lambda_hat);

}  // namespace toposm
