#pragma once

#include <map>
#include <string>
#include <vector>

#include "toposm/action.hpp"

namespace toposm {

// Function constant on orbits, the finite-scale form of an internal
// real-valued function. Values are indexed by orbit.
class OrbitFunction {
 public:
  // keys must be exactly the orbit representatives of the carrier
  static OrbitFunction create(ActionPtr carrier, const std::map<std::string, double>& by_rep);
  static OrbitFunction from_values(ActionPtr carrier, std::vector<double> values);
  static OrbitFunction constant(ActionPtr carrier, double v);
  static OrbitFunction indicator(ActionPtr carrier, int orbit);

  const ActionPtr& carrier() const { return carrier_; }
  double value(int orbit) const { return values_[orbit]; }
  const std::vector<double>& values() const { return values_; }
  double at_element(int x) const { return values_[carrier_->orbit_of(x)]; }

 private:
  OrbitFunction(ActionPtr carrier, std::vector<double> values);
  ActionPtr carrier_;
  std::vector<double> values_;
};

// Valuation on Sub(X), stored atomically by orbit weight. Monotonicity and
// the modular law hold by construction; tests assert them anyway.
class Valuation {
 public:
  // keys must be exactly the orbit representatives; errors:
  // MissingOrbitWeight, NegativeWeight, ValidationError (unknown key)
  static Valuation create(ActionPtr carrier, const std::map<std::string, double>& by_rep);
  static Valuation from_weights(ActionPtr carrier, std::vector<double> weights);
  // weight(o) = |o|; the integrability witness: nonzero and finite on any
  // nonzero object
  static Valuation counting(ActionPtr carrier);

  const ActionPtr& carrier() const { return carrier_; }
  double weight(int orbit) const { return weights_[orbit]; }
  const std::vector<double>& weights() const { return weights_; }
  double total() const;
  bool is_well_supported() const;   // all weights strictly positive
  bool is_finite() const { return true; }  // finite scale

  // sum of weights of orbits inside S; S is closed by construction
  double measure_of(const Subobject& S) const;
  // raw-id entry point: checks transport closure, NotInvariant otherwise
  double measure_of_elements(const std::vector<std::string>& ids) const;

 private:
  Valuation(ActionPtr carrier, std::vector<double> weights);
  ActionPtr carrier_;
  std::vector<double> weights_;
};

// Σ_orbits h(o) · weight(o); CarrierMismatch when carriers differ
double integrate(const OrbitFunction& h, const Valuation& mu);

// f(o) = weight_mu(o) / weight_nu(o); requires both well-supported,
// NotWellSupported otherwise. Satisfies mu(S) = ∫_S f dnu for invariant S.
OrbitFunction radon_nikodym(const Valuation& mu, const Valuation& nu);

}  // namespace toposm
