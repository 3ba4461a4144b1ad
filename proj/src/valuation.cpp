#include "toposm/valuation.hpp"

#include <algorithm>
#include <cmath>

#include "toposm/error.hpp"

namespace toposm {

namespace {

// resolve a map keyed by orbit representative into an orbit-indexed vector;
// every orbit must be covered, no stray keys
std::vector<double> by_rep_to_values(const FiniteAction& X,
                                     const std::map<std::string, double>& by_rep,
                                     ErrorKind missing_kind, const char* what) {
  std::vector<double> values(X.orbit_count());
  std::vector<char> seen(X.orbit_count(), 0);
  for (const auto& [rep, v] : by_rep) {
    auto x = X.element_index(rep);
    if (!x || X.element_id(X.orbit_representative_index(X.orbit_of(*x))) != rep)
      fail(ErrorKind::ValidationError,
           std::string(what) + " keyed by '" + rep + "', which is not an orbit representative");
    const int o = X.orbit_of(*x);
    values[o] = v;
    seen[o] = 1;
  }
  for (int o = 0; o < X.orbit_count(); ++o)
    if (!seen[o])
      fail(missing_kind, std::string(what) + " missing a value for orbit '" +
                             X.orbit_representative(o) + "'");
  return values;
}

}  // namespace

OrbitFunction::OrbitFunction(ActionPtr carrier, std::vector<double> values)
    : carrier_(std::move(carrier)), values_(std::move(values)) {}

OrbitFunction OrbitFunction::create(ActionPtr carrier,
                                    const std::map<std::string, double>& by_rep) {
  auto values = by_rep_to_values(*carrier, by_rep, ErrorKind::ValidationError, "orbit function");
  return OrbitFunction(std::move(carrier), std::move(values));
}

OrbitFunction OrbitFunction::from_values(ActionPtr carrier, std::vector<double> values) {
  if (static_cast<int>(values.size()) != carrier->orbit_count())
    fail(ErrorKind::ValidationError, "orbit function has the wrong number of values");
  return OrbitFunction(std::move(carrier), std::move(values));
}

OrbitFunction OrbitFunction::constant(ActionPtr carrier, double v) {
  std::vector<double> values(carrier->orbit_count(), v);
  return OrbitFunction(std::move(carrier), std::move(values));
}

OrbitFunction OrbitFunction::indicator(ActionPtr carrier, int orbit) {
  std::vector<double> values(carrier->orbit_count(), 0.0);
  values.at(orbit) = 1.0;
  return OrbitFunction(std::move(carrier), std::move(values));
}

Valuation::Valuation(ActionPtr carrier, std::vector<double> weights)
    : carrier_(std::move(carrier)), weights_(std::move(weights)) {}

Valuation Valuation::create(ActionPtr carrier, const std::map<std::string, double>& by_rep) {
  auto weights = by_rep_to_values(*carrier, by_rep, ErrorKind::MissingOrbitWeight, "valuation");
  for (int o = 0; o < carrier->orbit_count(); ++o)
    if (weights[o] < 0.0 || std::isnan(weights[o]))
      fail(ErrorKind::NegativeWeight, "valuation weight for orbit '" +
                                          carrier->orbit_representative(o) + "' is negative");
  return Valuation(std::move(carrier), std::move(weights));
}

Valuation Valuation::from_weights(ActionPtr carrier, std::vector<double> weights) {
  if (static_cast<int>(weights.size()) != carrier->orbit_count())
    fail(ErrorKind::ValidationError, "valuation has the wrong number of weights");
  for (int o = 0; o < carrier->orbit_count(); ++o)
    if (weights[o] < 0.0 || std::isnan(weights[o]))
      fail(ErrorKind::NegativeWeight, "valuation weight for orbit '" +
                                          carrier->orbit_representative(o) + "' is negative");
  return Valuation(std::move(carrier), std::move(weights));
}

Valuation Valuation::counting(ActionPtr carrier) {
  std::vector<double> weights(carrier->orbit_count());
  for (int o = 0; o < carrier->orbit_count(); ++o)
    weights[o] = static_cast<double>(carrier->orbit_elements(o).size());
  return Valuation(std::move(carrier), std::move(weights));
}

double Valuation::total() const {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum;
}

bool Valuation::is_well_supported() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
}

double Valuation::measure_of(const Subobject& S) const {
  if (S.carrier() != carrier_)
    fail(ErrorKind::CarrierMismatch, "subobject lives in a different action");
  double sum = 0.0;
  for (int o : S.orbit_indices()) sum += weights_[o];
  return sum;
}

double Valuation::measure_of_elements(const std::vector<std::string>& ids) const {
  const auto& X = *carrier_;
  std::vector<char> member(X.size(), 0);
  for (const auto& id : ids) {
    auto x = X.element_index(id);
    if (!x) fail(ErrorKind::UnknownElement, "no element '" + id + "' in the carrier");
    member[*x] = 1;
  }
  const auto& g = *X.groupoid();
  for (int x = 0; x < X.size(); ++x) {
    if (!member[x]) continue;
    for (int m : g.morphisms_from(X.base_object(x)))
      if (!member[X.act(m, x)])
        fail(ErrorKind::NotInvariant, "subset is not invariant: morphism '" + g.morphism_id(m) +
                                          "' carries '" + X.element_id(x) + "' outside it");
  }
  double sum = 0.0;
  for (int o = 0; o < X.orbit_count(); ++o)
    if (member[X.orbit_elements(o).front()]) sum += weights_[o];
  return sum;
}

double integrate(const OrbitFunction& h, const Valuation& mu) {
  if (h.carrier() != mu.carrier())
    fail(ErrorKind::CarrierMismatch, "integrand and valuation live on different actions");
  double sum = 0.0;
  for (int o = 0; o < static_cast<int>(h.values().size()); ++o)
    sum += h.value(o) * mu.weight(o);
  return sum;
}

OrbitFunction radon_nikodym(const Valuation& mu, const Valuation& nu) {
  if (mu.carrier() != nu.carrier())
    fail(ErrorKind::CarrierMismatch, "valuations live on different actions");
  if (!mu.is_well_supported() || !nu.is_well_supported())
    fail(ErrorKind::NotWellSupported, "derivative requires both valuations well-supported");
  std::vector<double> values(mu.weights().size());
  for (std::size_t o = 0; o < values.size(); ++o) values[o] = mu.weight(o) / nu.weight(o);
  return OrbitFunction::from_values(mu.carrier(), std::move(values));
}

}  // namespace toposm
