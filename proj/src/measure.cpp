#include "toposm/measure.hpp"

#include <algorithm>
#include <cmath>

#include "toposm/error.hpp"

namespace toposm {

namespace {

double rel_gap(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

Subobject orbit_mask_subobject(const ActionPtr& X, const std::vector<char>& mask) {
  std::vector<int> elems;
  for (int o = 0; o < X->orbit_count(); ++o)
    if (mask[o])
      for (int x : X->orbit_elements(o)) elems.push_back(x);
  return Subobject::from_indices(X, std::move(elems));
}

}  // namespace

InvariantMeasure::InvariantMeasure(GroupoidPtr topos, std::vector<double> weights)
    : topos_(std::move(topos)), weights_(std::move(weights)) {}

InvariantMeasure InvariantMeasure::create(GroupoidPtr topos,
                                          const std::map<std::string, double>& by_rep) {
  const auto& g = *topos;
  std::vector<double> weights(g.component_count());
  std::vector<char> seen(g.component_count(), 0);
  for (const auto& [rep, w] : by_rep) {
    int found = -1;
    for (int c = 0; c < g.component_count(); ++c)
      if (g.component_representative(c) == rep) {
        found = c;
        break;
      }
    if (found < 0)
      fail(ErrorKind::ValidationError,
           "measure keyed by '" + rep + "', which is not a component representative");
    weights[found] = w;
    seen[found] = 1;
  }
  for (int c = 0; c < g.component_count(); ++c)
    if (!seen[c])
      fail(ErrorKind::MissingOrbitWeight,
           "measure missing a weight for component '" + g.component_representative(c) + "'");
  return from_weights(std::move(topos), std::move(weights));
}

InvariantMeasure InvariantMeasure::from_weights(GroupoidPtr topos, std::vector<double> weights) {
  if (static_cast<int>(weights.size()) != topos->component_count())
    fail(ErrorKind::ValidationError, "measure has the wrong number of component weights");
  for (int c = 0; c < topos->component_count(); ++c)
    if (!(weights[c] > 0.0) || std::isinf(weights[c]))
      fail(ErrorKind::NotPositive, "measure weight for component '" +
                                       topos->component_representative(c) +
                                       "' is not strictly positive");
  return InvariantMeasure(std::move(topos), std::move(weights));
}

double evaluate(const InvariantMeasure& mu, const FiniteAction& X) {
  if (!same_groupoid(mu.topos(), X.groupoid()))
    fail(ErrorKind::GroupoidMismatch, "measure and action live over different groupoids");
  const auto card = internal_cardinal(X);
  double sum = 0.0;
  for (std::size_t c = 0; c < card.size(); ++c) sum += card[c] * mu.weight(static_cast<int>(c));
  return sum;
}

Valuation restrict_to(const InvariantMeasure& mu, const ActionPtr& X) {
  if (!same_groupoid(mu.topos(), X->groupoid()))
    fail(ErrorKind::GroupoidMismatch, "measure and action live over different groupoids");
  const auto& g = *X->groupoid();
  std::vector<double> weights(X->orbit_count());
  for (int o = 0; o < X->orbit_count(); ++o) {
    const int c = g.component_of(X->base_object(X->orbit_elements(o).front()));
    const int objects = static_cast<int>(g.component_objects(c).size());
    const int size = static_cast<int>(X->orbit_elements(o).size());
    if (size % objects != 0)
      fail(ErrorKind::ValidationError, "orbit '" + X->orbit_representative(o) +
                                           "' is not spread evenly over its component");
    weights[o] = (size / objects) * mu.weight(c);
  }
  return Valuation::from_weights(X, std::move(weights));
}

double InvariantMeasureAssignment::mass(const Subobject& S) const {
  return restrict_to(mu_, S.carrier()).measure_of(S);
}

std::vector<CheckResult> check_axioms(const MassAssignment& mu,
                                      const std::vector<SampleObject>& objects,
                                      const std::vector<SampleMap>& maps, Rng& rng,
                                      double tol) {
  std::vector<CheckResult> out;

  // IM1: the induced set function on Sub(X) is a finite valuation
  for (const auto& [label, X] : objects) {
    const std::string name = "IM1/" + label;
    const int k = X->orbit_count();
    const double empty = mu.mass(Subobject::empty(X));
    if (empty != 0.0) {
      out.push_back(CheckResult::fail(name, "mass(empty) = " + std::to_string(empty), std::abs(empty)));
      continue;
    }
    auto random_mask = [&] {
      std::vector<char> m(k);
      for (int o = 0; o < k; ++o) m[o] = rng.next_bool() ? 1 : 0;
      return m;
    };
    bool failed = false;
    const bool exhaustive = k <= 5;
    const int pair_count = exhaustive ? (1 << k) * (1 << k) : 200;
    for (int p = 0; p < pair_count && !failed; ++p) {
      std::vector<char> mu_mask(k), mv_mask(k);
      if (exhaustive) {
        for (int o = 0; o < k; ++o) {
          mu_mask[o] = ((p >> k >> o) & 1) ? 1 : 0;
          mv_mask[o] = ((p >> o) & 1) ? 1 : 0;
        }
      } else {
        mu_mask = random_mask();
        mv_mask = random_mask();
      }
      std::vector<char> join_mask(k), meet_mask(k);
      for (int o = 0; o < k; ++o) {
        join_mask[o] = (mu_mask[o] || mv_mask[o]) ? 1 : 0;
        meet_mask[o] = (mu_mask[o] && mv_mask[o]) ? 1 : 0;
      }
      const double mU = mu.mass(orbit_mask_subobject(X, mu_mask));
      const double mV = mu.mass(orbit_mask_subobject(X, mv_mask));
      const double mJ = mu.mass(orbit_mask_subobject(X, join_mask));
      const double mM = mu.mass(orbit_mask_subobject(X, meet_mask));
      if (rel_gap(mU + mV, mJ + mM) > tol) {
        out.push_back(CheckResult::fail(name, "modular law fails on a pair of invariant subsets",
                                        std::abs(mU + mV - mJ - mM)));
        failed = true;
      } else if (mU > mJ && rel_gap(mU, mJ) > tol) {
        out.push_back(CheckResult::fail(name, "mass is not monotone", mU - mJ));
        failed = true;
      }
    }
    if (!failed) out.push_back(CheckResult::pass(name));
  }

  // IM2: restrictions to the representable generating family are
  // well-supported
  if (!objects.empty()) {
    const GroupoidPtr g = mu.topos();
    for (int obj = 0; obj < g->object_count(); ++obj) {
      const std::string name = "IM2/" + g->object_id(obj);
      ActionPtr R = representable_action(g, obj);
      bool ok = true;
      for (int o = 0; o < R->orbit_count() && ok; ++o) {
        const double m = mu.mass(Subobject::orbit(R, o));
        if (!(m > 0.0)) {
          out.push_back(CheckResult::fail(name, "restriction vanishes on orbit '" +
                                                    R->orbit_representative(o) + "'",
                                          m));
          ok = false;
        }
      }
      if (ok) out.push_back(CheckResult::pass(name));
    }
  }

  // IM3: mass(target) = mass(source)/n for every n-to-1 sample map
  for (const auto& [label, f] : maps) {
    const std::string name = "IM3/" + label;
    const auto profile = fiber_profile(f);
    if (f.target()->size() == 0) {
      out.push_back(CheckResult::not_applicable(name, "empty target"));
      continue;
    }
    if (!profile.n_to_1) {
      out.push_back(CheckResult::not_applicable(name, "not n-to-1"));
      continue;
    }
    const int n = *profile.n_to_1;
    if (n < 1) {
      out.push_back(CheckResult::not_applicable(name, "empty fibers"));
      continue;
    }
    const double source_mass = mu.total(f.source());
    const double target_mass = mu.total(f.target());
    const double gap = rel_gap(target_mass, source_mass / n);
    if (gap > tol)
      out.push_back(CheckResult::fail(name,
                                      "mass(target) differs from mass(source)/" + std::to_string(n),
                                      std::abs(target_mass - source_mass / n)));
    else
      out.push_back(CheckResult::pass(name));
  }
  out.push_back(CheckResult::not_applicable("IM3/infinite-branch",
                                            "no map has infinite fibers at finite scale"));
  return out;
}

ChangeOfVariables change_of_variables(const EquivariantMap& f, const OrbitFunction& h,
                                      const InvariantMeasure& mu) {
  if (h.carrier() != f.source())
    fail(ErrorKind::CarrierMismatch, "integrand does not live on the map's source");
  const ActionPtr& Y = f.source();
  const ActionPtr& X = f.target();
  const Valuation on_source = restrict_to(mu, Y);
  const Valuation on_target = restrict_to(mu, X);

  const double lhs = integrate(h, on_source);

  // per target element, how many preimages fall in each source orbit; these
  // integer profiles are constant along target orbits for equivariant f
  std::vector<std::vector<long long>> counts(
      X->size(), std::vector<long long>(Y->orbit_count(), 0));
  for (int y = 0; y < Y->size(); ++y) ++counts[f.apply(y)][Y->orbit_of(y)];
  std::vector<double> g_values(X->orbit_count());
  for (int o = 0; o < X->orbit_count(); ++o) {
    const auto& ref = counts[X->orbit_representative_index(o)];
    for (int x : X->orbit_elements(o))
      if (counts[x] != ref)
        fail(ErrorKind::NotOrbitConstant,
             "pushforward is not constant on orbit '" + X->orbit_representative(o) + "'");
    double g = 0.0;
    for (int so = 0; so < Y->orbit_count(); ++so) g += h.value(so) * static_cast<double>(ref[so]);
    g_values[o] = g;
  }
  const double rhs = integrate(OrbitFunction::from_values(X, std::move(g_values)), on_target);
  return {lhs, rhs};
}

namespace {

// size of f⁻¹(f(rep)) per source orbit; constant along the orbit
std::vector<long long> orbit_fiber_sizes(const EquivariantMap& f) {
  const ActionPtr& Y = f.source();
  std::vector<long long> by_target(f.target()->size(), 0);
  for (int y = 0; y < Y->size(); ++y) ++by_target[f.apply(y)];
  std::vector<long long> out(Y->orbit_count());
  for (int o = 0; o < Y->orbit_count(); ++o)
    out[o] = by_target[f.apply(Y->orbit_representative_index(o))];
  return out;
}

}  // namespace

double epi_mass(const EquivariantMap& f, const InvariantMeasure& mu) {
  if (!is_epi(f)) fail(ErrorKind::NotEpi, "mass through a non-surjective map");
  const Valuation on_source = restrict_to(mu, f.source());
  const auto fibers = orbit_fiber_sizes(f);
  double sum = 0.0;
  for (int o = 0; o < f.source()->orbit_count(); ++o)
    sum += on_source.weight(o) / static_cast<double>(fibers[o]);
  return sum;
}

double class_mass_via(const EquivariantMap& f, const Valuation& on_source) {
  if (!is_epi(f)) fail(ErrorKind::NotEpi, "mass through a non-surjective map");
  if (on_source.carrier() != f.source())
    fail(ErrorKind::CarrierMismatch, "valuation does not live on the map's source");
  const auto fibers = orbit_fiber_sizes(f);
  double sum = 0.0;
  for (int o = 0; o < f.source()->orbit_count(); ++o)
    sum += on_source.weight(o) / static_cast<double>(fibers[o]);
  return sum;
}

double extend_from_class(const std::vector<ClassMember>& cls, const ActionPtr& X, double tol) {
  // pairwise consistency of the partial measure, one epi per ordered pair
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = 0; j < cls.size(); ++j) {
      if (i == j) continue;
      auto epis = enumerate_maps(cls[i].action, cls[j].action, /*epi_only=*/true, /*limit=*/1);
      if (epis.empty()) continue;
      const double via_cover = class_mass_via(epis.front(), cls[i].valuation);
      const double own = cls[j].valuation.total();
      if (rel_gap(via_cover, own) > tol)
        fail(ErrorKind::ValidationError, "class valuations are inconsistent: '" + cls[i].label +
                                             "' covers '" + cls[j].label +
                                             "' with a different mass");
    }
  for (const auto& member : cls) {
    auto epis = enumerate_maps(member.action, X, /*epi_only=*/true, /*limit=*/1);
    if (!epis.empty()) return class_mass_via(epis.front(), member.valuation);
  }
  fail(ErrorKind::NoCover, "no class member admits an epimorphism onto the target");
}

ChiSection::ChiSection(ActionPtr carrier, std::vector<double> values)
    : carrier_(std::move(carrier)), values_(std::move(values)) {}

ChiSection ChiSection::create(ActionPtr carrier, const std::map<std::string, double>& by_rep) {
  const auto& X = *carrier;
  std::vector<double> values(X.orbit_count());
  std::vector<char> seen(X.orbit_count(), 0);
  for (const auto& [rep, v] : by_rep) {
    auto x = X.element_index(rep);
    if (!x || X.element_id(X.orbit_representative_index(X.orbit_of(*x))) != rep)
      fail(ErrorKind::ValidationError,
           "section keyed by '" + rep + "', which is not an orbit representative");
    values[X.orbit_of(*x)] = v;
    seen[X.orbit_of(*x)] = 1;
  }
  for (int o = 0; o < X.orbit_count(); ++o)
    if (!seen[o])
      fail(ErrorKind::MissingOrbitWeight,
           "section missing a value for orbit '" + X.orbit_representative(o) + "'");
  return from_values(std::move(carrier), std::move(values));
}

ChiSection ChiSection::from_values(ActionPtr carrier, std::vector<double> values) {
  if (static_cast<int>(values.size()) != carrier->orbit_count())
    fail(ErrorKind::ValidationError, "section has the wrong number of values");
  for (int o = 0; o < carrier->orbit_count(); ++o)
    if (!(values[o] > 0.0) || std::isinf(values[o]))
      fail(ErrorKind::NotPositive, "section value for orbit '" +
                                       carrier->orbit_representative(o) +
                                       "' is not strictly positive");
  return ChiSection(std::move(carrier), std::move(values));
}

ChiSection pullback_section(const EquivariantMap& f, const ChiSection& lambda) {
  if (lambda.carrier() != f.target())
    fail(ErrorKind::CarrierMismatch, "section does not live on the map's target");
  const ActionPtr& Y = f.source();
  const ActionPtr& X = f.target();
  std::vector<double> values(Y->orbit_count());
  for (int o = 0; o < Y->orbit_count(); ++o) {
    const int image_orbit = X->orbit_of(f.apply(Y->orbit_representative_index(o)));
    const long long size = static_cast<long long>(Y->orbit_elements(o).size());
    const long long image_size = static_cast<long long>(X->orbit_elements(image_orbit).size());
    if (size % image_size != 0)
      fail(ErrorKind::ValidationError,
           "orbit '" + Y->orbit_representative(o) + "' does not cover its image evenly");
    values[o] = static_cast<double>(size / image_size) * lambda.value(image_orbit);
  }
  return ChiSection::from_values(Y, std::move(values));
}

ChiSection glue_sections(const EquivariantMap& f, const ChiSection& lambda, double tol) {
  if (lambda.carrier() != f.source())
    fail(ErrorKind::CarrierMismatch, "section does not live on the map's source");
  if (!is_epi(f)) fail(ErrorKind::NotEpi, "descent along a non-surjective map");
  const ActionPtr& X = f.source();
  const ActionPtr& Y = f.target();

  SpanResult P = pullback(f, f);
  const ChiSection along1 = pullback_section(P.proj1, lambda);
  const ChiSection along2 = pullback_section(P.proj2, lambda);
  for (int o = 0; o < P.action->orbit_count(); ++o)
    if (rel_gap(along1.value(o), along2.value(o)) > tol)
      fail(ErrorKind::DescentFailure,
           "the two pullbacks to the fiber product differ on orbit '" +
               P.action->orbit_representative(o) + "'");

  std::vector<double> values(Y->orbit_count(), 0.0);
  std::vector<char> covered(Y->orbit_count(), 0);
  for (int o = 0; o < X->orbit_count(); ++o) {
    const int target_orbit = Y->orbit_of(f.apply(X->orbit_representative_index(o)));
    if (covered[target_orbit]) continue;
    const long long size = static_cast<long long>(X->orbit_elements(o).size());
    const long long target_size = static_cast<long long>(Y->orbit_elements(target_orbit).size());
    values[target_orbit] = lambda.value(o) / static_cast<double>(size / target_size);
    covered[target_orbit] = 1;
  }
  return ChiSection::from_values(Y, std::move(values));
}

InvariantMeasure chi_to_slice_measure(const ChiSection& lambda) {
  const ActionPtr& X = lambda.carrier();
  GroupoidPtr slice = slice_groupoid(*X);
  // components of the action groupoid are the orbits, in the same order and
  // under the same representative keys
  for (int o = 0; o < X->orbit_count(); ++o)
    if (slice->component_representative(o) != X->orbit_representative(o))
      fail(ErrorKind::ValidationError, "slice components misaligned with orbits");
  return InvariantMeasure::from_weights(std::move(slice), lambda.values());
}

ChiSection slice_measure_to_chi(const ActionPtr& X, const InvariantMeasure& m) {
  GroupoidPtr slice = slice_groupoid(*X);
  if (!same_groupoid(slice, m.topos()))
    fail(ErrorKind::GroupoidMismatch, "measure does not live on the slice of the carrier");
  for (int o = 0; o < X->orbit_count(); ++o)
    if (m.topos()->component_representative(o) != X->orbit_representative(o))
      fail(ErrorKind::ValidationError, "slice components misaligned with orbits");
  return ChiSection::from_values(X, m.weights());
}

ChiSection principal_action(const ChiSection& lambda, const OrbitFunction& f) {
  if (lambda.carrier() != f.carrier())
    fail(ErrorKind::CarrierMismatch, "section and scaling function carriers differ");
  std::vector<double> values(lambda.values().size());
  for (std::size_t o = 0; o < values.size(); ++o) {
    if (!(f.value(static_cast<int>(o)) > 0.0))
      fail(ErrorKind::NotPositive, "scaling function is not strictly positive on orbit '" +
                                       lambda.carrier()->orbit_representative(static_cast<int>(o)) +
                                       "'");
    values[o] = lambda.value(static_cast<int>(o)) * f.value(static_cast<int>(o));
  }
  return ChiSection::from_values(lambda.carrier(), std::move(values));
}

OrbitFunction principal_ratio(const ChiSection& lambda, const ChiSection& lambda_prime) {
  if (lambda.carrier() != lambda_prime.carrier())
    fail(ErrorKind::CarrierMismatch, "sections live on different carriers");
  std::vector<double> values(lambda.values().size());
  for (std::size_t o = 0; o < values.size(); ++o)
    values[o] = lambda_prime.value(static_cast<int>(o)) / lambda.value(static_cast<int>(o));
  return OrbitFunction::from_values(lambda.carrier(), std::move(values));
}

ChiSection section_add(const ChiSection& a, const ChiSection& b) {
  if (a.carrier() != b.carrier())
    fail(ErrorKind::CarrierMismatch, "sections live on different carriers");
  std::vector<double> values(a.values().size());
  for (std::size_t o = 0; o < values.size(); ++o)
    values[o] = a.value(static_cast<int>(o)) + b.value(static_cast<int>(o));
  return ChiSection::from_values(a.carrier(), std::move(values));
}

}  // namespace toposm
