#include "toposm/operator.hpp"

#include <algorithm>
#include <cmath>

#include "toposm/error.hpp"

namespace toposm {

OperatorMatrix::OperatorMatrix(ActionPtr carrier, std::vector<cd> data)
    : carrier_(std::move(carrier)),
      dim_(carrier_->size()),
      data_(std::move(data)),
      layout_(kernels::BlockLayout::of(*carrier_)) {}

OperatorMatrix OperatorMatrix::zero(ActionPtr carrier) {
  const std::size_t n = carrier->size();
  return OperatorMatrix(std::move(carrier), std::vector<cd>(n * n));
}

OperatorMatrix OperatorMatrix::identity(ActionPtr carrier) {
  const std::size_t n = carrier->size();
  std::vector<cd> data(n * n);
  for (std::size_t x = 0; x < n; ++x) data[x * n + x] = cd(1.0, 0.0);
  return OperatorMatrix(std::move(carrier), std::move(data));
}

OperatorMatrix OperatorMatrix::from_entries(ActionPtr carrier,
                                            const std::vector<Entry>& entries) {
  const std::size_t n = carrier->size();
  std::vector<cd> data(n * n);
  std::vector<char> set(n * n, 0);
  for (const auto& e : entries) {
    auto x = carrier->element_index(e.x);
    if (!x) fail(ErrorKind::UnknownElement, "operator entry names unknown element '" + e.x + "'");
    auto y = carrier->element_index(e.y);
    if (!y) fail(ErrorKind::UnknownElement, "operator entry names unknown element '" + e.y + "'");
    if (carrier->base_object(*x) != carrier->base_object(*y))
      fail(ErrorKind::ValidationError, "operator entry (" + e.x + ", " + e.y +
                                           ") crosses fibers of different objects");
    const std::size_t idx = static_cast<std::size_t>(*x) * n + *y;
    if (set[idx])
      fail(ErrorKind::ValidationError, "duplicate operator entry (" + e.x + ", " + e.y + ")");
    set[idx] = 1;
    data[idx] = cd(e.re, e.im);
  }
  return OperatorMatrix(std::move(carrier), std::move(data));
}

OperatorMatrix OperatorMatrix::from_dense(ActionPtr carrier, std::vector<cd> data) {
  const std::size_t n = carrier->size();
  if (data.size() != n * n)
    fail(ErrorKind::ValidationError, "dense operator data has the wrong size");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (carrier->base_object(static_cast<int>(x)) != carrier->base_object(static_cast<int>(y)) &&
          data[x * n + y] != cd{})
        fail(ErrorKind::ValidationError,
             "operator has a nonzero entry outside the diagonal blocks at (" +
                 carrier->element_id(static_cast<int>(x)) + ", " +
                 carrier->element_id(static_cast<int>(y)) + ")");
  return OperatorMatrix(std::move(carrier), std::move(data));
}

OperatorMatrix OperatorMatrix::multiply(const OperatorMatrix& other) const {
  if (carrier_ != other.carrier_)
    fail(ErrorKind::CarrierMismatch, "product of operators on different actions");
  std::vector<cd> out(data_.size());
  kernels::block_multiply(layout_, data_.data(), other.data_.data(), out.data());
  return OperatorMatrix(carrier_, std::move(out));
}

OperatorMatrix OperatorMatrix::add(const OperatorMatrix& other) const {
  if (carrier_ != other.carrier_)
    fail(ErrorKind::CarrierMismatch, "sum of operators on different actions");
  std::vector<cd> out(data_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i] + other.data_[i];
  return OperatorMatrix(carrier_, std::move(out));
}

OperatorMatrix OperatorMatrix::scale(cd factor) const {
  std::vector<cd> out(data_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = factor * data_[i];
  return OperatorMatrix(carrier_, std::move(out));
}

OperatorMatrix OperatorMatrix::adjoint() const {
  const std::size_t n = dim_;
  std::vector<cd> out(data_.size());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out[y * n + x] = std::conj(data_[x * n + y]);
  return OperatorMatrix(carrier_, std::move(out));
}

bool OperatorMatrix::is_in_algebra(double tol) const {
  const auto& X = *carrier_;
  const auto& g = *X.groupoid();
  for (int m = 0; m < g.morphism_count(); ++m) {
    const int s = g.src(m);
    for (int x = X.fiber_begin(s); x < X.fiber_end(s); ++x)
      for (int y = X.fiber_begin(s); y < X.fiber_end(s); ++y) {
        const cd lhs = at(X.act(m, x), X.act(m, y));
        const cd rhs = at(x, y);
        if (tol == 0.0 ? lhs != rhs : std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(rhs)))
          return false;
      }
  }
  return true;
}

double OperatorMatrix::max_abs_diff(const OperatorMatrix& other) const {
  if (carrier_ != other.carrier_)
    fail(ErrorKind::CarrierMismatch, "comparing operators on different actions");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    m = std::max(m, std::abs(data_[i] - other.data_[i]));
  return m;
}

std::vector<OperatorMatrix> commutant_basis(const ActionPtr& X) {
  // a block matrix commutes with all transports iff it is constant on the
  // diagonal orbits of same-fiber pairs; one indicator matrix per pair orbit
  SpanResult pairs = product(X, X);
  const std::size_t n = X->size();
  std::vector<OperatorMatrix> basis;
  basis.reserve(pairs.action->orbit_count());
  for (int o = 0; o < pairs.action->orbit_count(); ++o) {
    std::vector<cd> data(n * n);
    for (int p : pairs.action->orbit_elements(o))
      data[static_cast<std::size_t>(pairs.proj1.apply(p)) * n + pairs.proj2.apply(p)] =
          cd(1.0, 0.0);
    basis.push_back(OperatorMatrix::from_dense(X, std::move(data)));
  }
  return basis;
}

cd weight(const OperatorMatrix& a, const Valuation& mu, double rel_tol) {
  if (a.carrier() != mu.carrier())
    fail(ErrorKind::CarrierMismatch, "operator and valuation live on different actions");
  const auto& X = *a.carrier();
  cd sum{};
  for (int o = 0; o < X.orbit_count(); ++o) {
    const int rep = X.orbit_representative_index(o);
    const cd d = a.at(rep, rep);
    for (int x : X.orbit_elements(o))
      if (std::abs(a.at(x, x) - d) > rel_tol * std::max(1.0, std::abs(d)))
        fail(ErrorKind::NotEquivariant,
             "operator diagonal is not constant on orbit '" + X.orbit_representative(o) + "'");
    sum += mu.weight(o) * d;
  }
  return sum;
}

DensitySection::DensitySection(ActionPtr carrier, std::vector<double> values)
    : carrier_(std::move(carrier)), values_(std::move(values)) {}

DensitySection DensitySection::from_section(const ChiSection& lambda) {
  const auto& X = *lambda.carrier();
  std::vector<double> values(X.size());
  for (int x = 0; x < X.size(); ++x) {
    const int o = X.orbit_of(x);
    values[x] = lambda.value(o) / static_cast<double>(X.orbit_elements(o).size());
  }
  return DensitySection(lambda.carrier(), std::move(values));
}

DensitySection DensitySection::from_valuation(const Valuation& mu) {
  if (!mu.is_well_supported())
    fail(ErrorKind::NotWellSupported, "density of a valuation with a zero weight");
  const auto& X = *mu.carrier();
  std::vector<double> values(X.size());
  for (int x = 0; x < X.size(); ++x) {
    const int o = X.orbit_of(x);
    values[x] = mu.weight(o) / static_cast<double>(X.orbit_elements(o).size());
  }
  return DensitySection(mu.carrier(), std::move(values));
}

DensitySection DensitySection::unchecked(ActionPtr carrier, std::vector<double> per_element) {
  if (static_cast<int>(per_element.size()) != carrier->size())
    fail(ErrorKind::ValidationError, "density has the wrong number of values");
  for (double v : per_element)
    if (!(v > 0.0)) fail(ErrorKind::NotPositive, "density values must be strictly positive");
  return DensitySection(std::move(carrier), std::move(per_element));
}

bool DensitySection::is_orbit_constant() const {
  const auto& X = *carrier_;
  for (int o = 0; o < X.orbit_count(); ++o) {
    const double ref = values_[X.orbit_representative_index(o)];
    for (int x : X.orbit_elements(o))
      if (values_[x] != ref) return false;
  }
  return true;
}

bool DensitySection::is_component_constant() const {
  const auto& X = *carrier_;
  const auto& g = *X.groupoid();
  std::vector<double> ref(g.component_count(), 0.0);
  std::vector<char> seen(g.component_count(), 0);
  for (int x = 0; x < X.size(); ++x) {
    const int c = g.component_of(X.base_object(x));
    if (!seen[c]) {
      ref[c] = values_[x];
      seen[c] = 1;
    } else if (values_[x] != ref[c]) {
      return false;
    }
  }
  return true;
}

Valuation DensitySection::to_valuation() const {
  if (!is_orbit_constant())
    fail(ErrorKind::NotEquivariant, "density is not constant on orbits");
  const auto& X = *carrier_;
  std::vector<double> weights(X.orbit_count());
  for (int o = 0; o < X.orbit_count(); ++o)
    weights[o] = values_[X.orbit_representative_index(o)] *
                 static_cast<double>(X.orbit_elements(o).size());
  return Valuation::from_weights(carrier_, std::move(weights));
}

DensitySection density(const ChiSection& lambda) { return DensitySection::from_section(lambda); }

cd weight_density(const OperatorMatrix& a, const DensitySection& lambda_hat) {
  if (a.carrier() != lambda_hat.carrier())
    fail(ErrorKind::CarrierMismatch, "operator and density live on different actions");
  cd sum{};
  for (int x = 0; x < a.dim(); ++x) sum += lambda_hat.at(x) * a.at(x, x);
  return sum;
}

}  // namespace toposm
