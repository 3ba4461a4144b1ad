#pragma once

#include <map>
#include <string>
#include <vector>

#include "toposm/action.hpp"
#include "toposm/check.hpp"
#include "toposm/rng.hpp"
#include "toposm/valuation.hpp"

namespace toposm {

// Invariant measure on the topos of actions of a groupoid, parameterized by
// strictly positive component weights. Evaluation: μ̃(X) = Σ_c |X|_c · w(c).
// The parameterization is a candidate; check_axioms re-verifies (IM1)-(IM3)
// instead of trusting it.
class InvariantMeasure {
 public:
  // keys = component representative object ids; errors: ValidationError
  // (unknown/duplicate key), MissingOrbitWeight (component without weight),
  // NotPositive
  static InvariantMeasure create(GroupoidPtr topos, const std::map<std::string, double>& by_rep);
  static InvariantMeasure from_weights(GroupoidPtr topos, std::vector<double> weights);

  const GroupoidPtr& topos() const { return topos_; }
  double weight(int component) const { return weights_[component]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  InvariantMeasure(GroupoidPtr topos, std::vector<double> weights);
  GroupoidPtr topos_;
  std::vector<double> weights_;
};

// μ̃(X) = Σ_c |X|_c · w(c); GroupoidMismatch
double evaluate(const InvariantMeasure& mu, const FiniteAction& X);

// induced valuation on Sub(X): an orbit over component c contributes its
// per-object share |o| / #objects(c) times w(c); the division is exact
Valuation restrict_to(const InvariantMeasure& mu, const ActionPtr& X);

// Candidate mass assignment, the thing (IM1)-(IM3) quantify over. The
// interface exists so tests can feed deliberately broken assignments to the
// axiom checker; InvariantMeasureAssignment is the honest implementation.
class MassAssignment {
 public:
  virtual ~MassAssignment() = default;
  virtual GroupoidPtr topos() const = 0;
  // candidate mass of an invariant subset
  virtual double mass(const Subobject& S) const = 0;
  double total(const ActionPtr& X) const { return mass(Subobject::whole(X)); }
};

class InvariantMeasureAssignment : public MassAssignment {
 public:
  explicit InvariantMeasureAssignment(InvariantMeasure mu) : mu_(std::move(mu)) {}
  GroupoidPtr topos() const override { return mu_.topos(); }
  double mass(const Subobject& S) const override;

 private:
  InvariantMeasure mu_;
};

struct SampleObject {
  std::string label;
  ActionPtr action;
};
struct SampleMap {
  std::string label;
  EquivariantMap map;
};

// Verifies the three invariant-measure axioms on a sample:
//   IM1: the restriction of the assignment to Sub(X) is a finite valuation
//        (zero on empty, monotone, modular law)
//   IM2: restrictions to the representable generating family are
//        well-supported
//   IM3: every n-to-1 sample map f: Y → X satisfies mass(X) = mass(Y)/n;
//        the n = ∞ branch has no finite instance and reports "n/a"
// Failures come back as report rows, never exceptions.
std::vector<CheckResult> check_axioms(const MassAssignment& mu,
                                      const std::vector<SampleObject>& objects,
                                      const std::vector<SampleMap>& maps, Rng& rng,
                                      double tol = 1e-12);

struct ChangeOfVariables {
  double lhs;  // ∫_Y h dμ|_Y
  double rhs;  // ∫_X (Σ_{f(y)=x} h(y)) dμ|_X
};
// errors: NotOrbitConstant (defensive: the pushforward failed
// orbit-constancy, impossible for valid maps), CarrierMismatch,
// GroupoidMismatch
ChangeOfVariables change_of_variables(const EquivariantMap& f, const OrbitFunction& h,
                                      const InvariantMeasure& mu);

// ∫_Y 1/|f⁻¹(f(y))| dμ for an epi f; equals evaluate(mu, target); NotEpi
double epi_mass(const EquivariantMap& f, const InvariantMeasure& mu);

// generating class with a partial measure on it
struct ClassMember {
  std::string label;
  ActionPtr action;
  Valuation valuation;
};

// mass of the target of an epi f computed from a valuation on its source:
// Σ_orbits weight(o) / fiber_size(o); NotEpi
double class_mass_via(const EquivariantMap& f, const Valuation& on_source);

// Extension of a partial measure to X: find the first class member with an
// epi onto X and evaluate class_mass_via. Consistency of the class is
// checked pairwise on the sample (one epi per ordered pair); the value is
// independent of the chosen cover. Errors: NoCover, ValidationError
// (inconsistent class valuations).
double extend_from_class(const std::vector<ClassMember>& cls, const ActionPtr& X,
                         double tol = 1e-9);

// Section of the modular bundle over X: strictly positive orbit values,
// equivalently an invariant measure on the slice topos over X.
class ChiSection {
 public:
  // keys = orbit representatives; errors: MissingOrbitWeight, NotPositive,
  // ValidationError
  static ChiSection create(ActionPtr carrier, const std::map<std::string, double>& by_rep);
  static ChiSection from_values(ActionPtr carrier, std::vector<double> values);

  const ActionPtr& carrier() const { return carrier_; }
  double value(int orbit) const { return values_[orbit]; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const ChiSection& other) const {
    return carrier_ == other.carrier_ && values_ == other.values_;
  }

 private:
  ChiSection(ActionPtr carrier, std::vector<double> values);
  ActionPtr carrier_;
  std::vector<double> values_;
};

// section on the source induced by composition with f: an orbit o of Y picks
// up its target orbit's value scaled by the integer fiber count |o| / |f(o)|
ChiSection pullback_section(const EquivariantMap& f, const ChiSection& lambda);

// Descent along an epi f: X ↠ Y: when the two pullbacks of lambda to
// X ×_Y X agree (within tol), the unique section on Y pulling back to lambda.
// Errors: NotEpi, DescentFailure (witness orbit of the fiber product).
ChiSection glue_sections(const EquivariantMap& f, const ChiSection& lambda, double tol = 1e-12);

// the two sides of Hom(X, χ) ≅ M(X): a section of χ over X is exactly an
// invariant measure on the slice groupoid (components = orbits, shared keys)
InvariantMeasure chi_to_slice_measure(const ChiSection& lambda);
ChiSection slice_measure_to_chi(const ActionPtr& X, const InvariantMeasure& m);

// multiplicative ℝ^>0 structure on sections over a fixed carrier
ChiSection principal_action(const ChiSection& lambda, const OrbitFunction& f);
OrbitFunction principal_ratio(const ChiSection& lambda, const ChiSection& lambda_prime);
// pointwise addition (χ has addition but no zero section)
ChiSection section_add(const ChiSection& a, const ChiSection& b);

}  // namespace toposm
