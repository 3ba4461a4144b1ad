#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "toposm/error.hpp"
#include "toposm/models.hpp"
#include "toposm/rng.hpp"
#include "toposm/valuation.hpp"

using namespace toposm;
using testing::z2_groupoid;
using testing::z2_three;

TEST_CASE("orbit functions are keyed by representatives") {
  ActionPtr X = z2_three(z2_groupoid());
  OrbitFunction h = OrbitFunction::create(X, {{"a", 2.0}, {"c", 3.0}});
  CHECK(h.value(0) == 2.0);
  CHECK(h.value(1) == 3.0);
  CHECK(h.at_element(*X->element_index("b")) == 2.0);

  // 'b' names an element but not a representative
  CHECK_THROWS_AS(OrbitFunction::create(X, {{"b", 2.0}, {"c", 3.0}}), Error);
  // missing and extra keys both fail
  CHECK_THROWS_AS(OrbitFunction::create(X, {{"a", 2.0}}), Error);
  CHECK_THROWS_AS(
      OrbitFunction::create(X, {{"a", 2.0}, {"c", 3.0}, {"z", 1.0}}), Error);

  CHECK(OrbitFunction::constant(X, 5.0).value(1) == 5.0);
  CHECK(OrbitFunction::indicator(X, 0).value(0) == 1.0);
  CHECK(OrbitFunction::indicator(X, 0).value(1) == 0.0);
}

TEST_CASE("valuations measure invariant subsets") {
  ActionPtr X = z2_three(z2_groupoid());
  Valuation mu = Valuation::create(X, {{"a", 2.0}, {"c", 6.0}});
  CHECK(mu.total() == 8.0);
  CHECK(mu.measure_of(Subobject::orbit(X, 0)) == 2.0);
  CHECK(mu.measure_of(Subobject::empty(X)) == 0.0);
  CHECK(mu.measure_of(Subobject::whole(X)) == 8.0);
  CHECK(mu.is_well_supported());
  CHECK(mu.is_finite());

  CHECK(mu.measure_of_elements({"a", "b"}) == 2.0);
  CHECK(mu.measure_of_elements({}) == 0.0);
  // {a} is not transport-closed
  CHECK_THROWS_AS(mu.measure_of_elements({"a"}), Error);
  CHECK_THROWS_AS(mu.measure_of_elements({"nope"}), Error);
}

TEST_CASE("weights must be present and nonnegative") {
  ActionPtr X = z2_three(z2_groupoid());
  CHECK_THROWS_AS(Valuation::create(X, {{"a", 2.0}}), Error);
  CHECK_THROWS_AS(Valuation::create(X, {{"a", -1.0}, {"c", 6.0}}), Error);
  double nan = std::nan("");
  CHECK_THROWS_AS(Valuation::create(X, {{"a", nan}, {"c", 6.0}}), Error);
  Valuation zero_ok = Valuation::create(X, {{"a", 0.0}, {"c", 6.0}});
  CHECK_FALSE(zero_ok.is_well_supported());
}

TEST_CASE("counting valuation is nonzero on every nonzero object") {
  ActionPtr X = z2_three(z2_groupoid());
  Valuation counting = Valuation::counting(X);
  CHECK(counting.weight(0) == 2.0);
  CHECK(counting.weight(1) == 1.0);
  CHECK(counting.total() == 3.0);
  CHECK(counting.is_well_supported());
}

TEST_CASE("integration is linear in the integrand") {
  ActionPtr X = z2_three(z2_groupoid());
  Valuation mu = Valuation::create(X, {{"a", 2.0}, {"c", 6.0}});
  OrbitFunction h = OrbitFunction::create(X, {{"a", 1.0}, {"c", 0.5}});
  OrbitFunction k = OrbitFunction::create(X, {{"a", -3.0}, {"c", 2.0}});
  CHECK(integrate(h, mu) == 2.0 + 3.0);
  double lhs = integrate(OrbitFunction::from_values(X, {1.0 + 2 * (-3.0), 0.5 + 2 * 2.0}), mu);
  CHECK(lhs == doctest::Approx(integrate(h, mu) + 2 * integrate(k, mu)).epsilon(1e-15));

  ActionPtr other = testing::points(testing::trivial_groupoid(), 2);
  Valuation nu = Valuation::counting(other);
  CHECK_THROWS_AS(integrate(h, nu), Error);
}

TEST_CASE("density of one valuation against another") {
  ActionPtr X = z2_three(z2_groupoid());
  Valuation mu = Valuation::create(X, {{"a", 2.0}, {"c", 6.0}});
  Valuation nu = Valuation::create(X, {{"a", 1.0}, {"c", 2.0}});
  OrbitFunction f = radon_nikodym(mu, nu);
  CHECK(f.value(0) == 2.0);
  CHECK(f.value(1) == 3.0);
  // reconstruction: mu(S) = ∫_S f dnu on every orbit
  for (int o = 0; o < X->orbit_count(); ++o)
    CHECK(mu.weight(o) == f.value(o) * nu.weight(o));

  Valuation degenerate = Valuation::create(X, {{"a", 0.0}, {"c", 2.0}});
  CHECK_THROWS_AS(radon_nikodym(mu, degenerate), Error);
  try {
    radon_nikodym(mu, degenerate);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotWellSupported);
  }
}

TEST_CASE("densities compose transitively on random carriers") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    models::Model m = models::random_model(rng);
    ActionPtr X = models::random_action(m, rng, 10);
    if (X->size() == 0) continue;
    Valuation mu = models::random_dyadic_valuation(X, rng);
    Valuation nu = models::random_dyadic_valuation(X, rng);
    OrbitFunction f = radon_nikodym(mu, nu);
    for (int o = 0; o < X->orbit_count(); ++o) {
      double back = f.value(o) * nu.weight(o);
      CHECK(std::abs(back - mu.weight(o)) <= 1e-12 * std::max(1.0, mu.weight(o)));
    }
  }
}
