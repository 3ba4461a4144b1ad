#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "support.hpp"
#include "toposm/action.hpp"
#include "toposm/error.hpp"
#include "toposm/models.hpp"
#include "toposm/rng.hpp"

using namespace toposm;
using testing::points;
using testing::trivial_groupoid;
using testing::z2_groupoid;
using testing::z2_three;

TEST_CASE("orbits of the swap action") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  CHECK(X->size() == 3);
  REQUIRE(X->orbit_count() == 2);
  CHECK(X->orbit_representative(0) == "a");
  CHECK(X->orbit_elements(0).size() == 2);
  CHECK(X->orbit_representative(1) == "c");
  CHECK(X->orbit_elements(1).size() == 1);

  int s = *g->morphism_index("s");
  int a = *X->element_index("a");
  CHECK(X->element_id(X->act(s, a)) == "b");
  CHECK(X->orbit_of(X->act(s, a)) == X->orbit_of(a));
}

TEST_CASE("identity transports may be omitted but not wrong") {
  GroupoidPtr g = z2_groupoid();
  ActionSpec spec;
  spec.fibers = {{"A", {"a", "b"}}};
  spec.transport = {{"s", {{"a", "b"}, {"b", "a"}}},
                    {"e", {{"a", "b"}, {"b", "a"}}}};
  CHECK_THROWS_AS(FiniteAction::validate(g, spec), Error);
  spec.transport.erase("e");
  CHECK(FiniteAction::validate(g, spec)->size() == 2);
}

TEST_CASE("non-bijective and non-functorial transports are rejected") {
  GroupoidPtr g = z2_groupoid();
  SUBCASE("not a bijection") {
    ActionSpec spec;
    spec.fibers = {{"A", {"a", "b"}}};
    spec.transport = {{"s", {{"a", "a"}, {"b", "a"}}}};
    CHECK_THROWS_AS(FiniteAction::validate(g, spec), Error);
  }
  SUBCASE("breaks s∘s = e") {
    ActionSpec spec;
    spec.fibers = {{"A", {"a", "b", "c"}}};
    // a 3-cycle cannot represent an involution
    spec.transport = {{"s", {{"a", "b"}, {"b", "c"}, {"c", "a"}}}};
    CHECK_THROWS_AS(FiniteAction::validate(g, spec), Error);
  }
  SUBCASE("unknown fiber object") {
    ActionSpec spec;
    spec.fibers = {{"B", {"a"}}};
    CHECK_THROWS_AS(FiniteAction::validate(g, spec), Error);
  }
}

TEST_CASE("subobjects are transport-closed sets") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  Subobject orbit_ab = Subobject::orbit(X, 0);
  Subobject orbit_c = Subobject::orbit(X, 1);
  CHECK(orbit_ab.size() == 2);
  CHECK(orbit_c.size() == 1);

  CHECK_THROWS_AS(Subobject::create(X, {"a"}), Error);  // not closed
  Subobject whole = Subobject::whole(X);
  CHECK(whole.size() == 3);
  CHECK(Subobject::empty(X).size() == 0);

  CHECK(orbit_ab.meet(orbit_c).size() == 0);
  CHECK(orbit_ab.join(orbit_c) == whole);
  CHECK(orbit_ab.complement() == orbit_c);
  CHECK(whole.contains(*X->element_index("b")));
}

TEST_CASE("equivariant maps must commute with transport") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  // collapsing the swap orbit onto the fixed point is fine
  EquivariantMap collapse =
      EquivariantMap::create(X, X, {{"a", "c"}, {"b", "c"}, {"c", "c"}});
  CHECK(collapse.apply(*X->element_index("a")) == *X->element_index("c"));

  // sending a to a fixed point but b elsewhere is not equivariant
  CHECK_THROWS_AS(
      EquivariantMap::create(X, X, {{"a", "c"}, {"b", "b"}, {"c", "c"}}),
      Error);
  // total: every source element needs an image
  CHECK_THROWS_AS(EquivariantMap::create(X, X, {{"a", "c"}, {"b", "c"}}), Error);

  EquivariantMap id = EquivariantMap::identity(X);
  EquivariantMap both = collapse.compose_after(id);
  CHECK(both.apply(*X->element_index("b")) == *X->element_index("c"));
}

TEST_CASE("image, epi, mono") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  EquivariantMap collapse =
      EquivariantMap::create(X, X, {{"a", "c"}, {"b", "c"}, {"c", "c"}});
  CHECK_FALSE(is_epi(collapse));
  CHECK_FALSE(is_mono(collapse));
  CHECK(image(collapse).size() == 1);

  EquivariantMap swap =
      EquivariantMap::create(X, X, {{"a", "b"}, {"b", "a"}, {"c", "c"}});
  CHECK(is_epi(swap));
  CHECK(is_mono(swap));
}

TEST_CASE("products pair fibers and act diagonally") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  SpanResult p = product(X, X);
  CHECK(p.action->size() == 9);
  // (a,c) and (b,c) share an orbit; the diagonal splits off
  int ac = *p.action->element_index("(a,c)");
  int s = *g->morphism_index("s");
  CHECK(p.action->element_id(p.action->act(s, ac)) == "(b,c)");
  CHECK(is_epi(p.proj1));
  CHECK(p.proj1.apply(ac) == *X->element_index("a"));
  CHECK(p.proj2.apply(ac) == *X->element_index("c"));

  // orbits of X×X: {(a,a),(b,b)}, {(a,b),(b,a)}, {(a,c),(b,c)},
  // {(c,a),(c,b)}, {(c,c)}
  CHECK(p.action->orbit_count() == 5);
}

TEST_CASE("pullback is the matching-image subproduct") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  EquivariantMap collapse =
      EquivariantMap::create(X, X, {{"a", "c"}, {"b", "c"}, {"c", "c"}});
  SpanResult pb = pullback(collapse, collapse);
  // every pair lands on c, so the pullback is all of X×X
  CHECK(pb.action->size() == 9);

  EquivariantMap id = EquivariantMap::identity(X);
  SpanResult pb_id = pullback(id, id);
  CHECK(pb_id.action->size() == 3);  // the diagonal
}

TEST_CASE("slice groupoid components are the orbits, in order") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  GroupoidPtr slice = slice_groupoid(*X);
  CHECK(slice->object_count() == 3);
  REQUIRE(slice->component_count() == X->orbit_count());
  for (int o = 0; o < X->orbit_count(); ++o)
    CHECK(slice->component_representative(o) == X->orbit_representative(o));
  // morphisms: one per (group element, point): 2*3 = 6
  CHECK(slice->morphism_count() == 6);
}

TEST_CASE("slice components track orbits on random models") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Rng rng(seed);
    models::Model m = models::random_model(rng);
    ActionPtr X = models::random_action(m, rng, 10);
    if (X->size() == 0) continue;
    GroupoidPtr slice = slice_groupoid(*X);
    REQUIRE(slice->component_count() == X->orbit_count());
    for (int o = 0; o < X->orbit_count(); ++o)
      CHECK(slice->component_representative(o) == X->orbit_representative(o));
  }
}

TEST_CASE("internal cardinal counts fiber sizes per component") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  std::vector<int> card = internal_cardinal(*X);
  REQUIRE(card.size() == 1);
  CHECK(card[0] == 3);
}

TEST_CASE("fiber profiles detect n-to-1 maps") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  EquivariantMap f2 = models::fold_map(X, 2);
  FiberProfile p = fiber_profile(f2);
  CHECK(p.is_finite);
  REQUIRE(p.n_to_1.has_value());
  CHECK(*p.n_to_1 == 2);

  EquivariantMap collapse =
      EquivariantMap::create(X, X, {{"a", "c"}, {"b", "c"}, {"c", "c"}});
  FiberProfile q = fiber_profile(collapse);
  CHECK_FALSE(q.n_to_1.has_value());  // fibers over a, b, c have sizes 0, 0, 3
  CHECK(q.fiber_sizes == std::vector<int>({0, 0, 3}));
}

TEST_CASE("orbit sizes divide by stabilizers") {
  using namespace toposm::models;
  std::vector<PermGroup> groups = {trivial_group(),   cyclic_group(4),
                                   klein_four_group(), symmetric_group(3),
                                   dihedral_group(4),  symmetric_group(4)};
  for (const PermGroup& pg : groups) {
    REQUIRE(pg.size() <= 24);
    Model m = group_model(pg);
    Rng rng(pg.size());
    for (int trial = 0; trial < 4; ++trial) {
      ActionPtr X = random_action(m, rng, 16);
      const int endos = static_cast<int>(
          m.groupoid->endomorphisms(0).size());
      for (int x = 0; x < X->size(); ++x) {
        int orbit_size = static_cast<int>(
            X->orbit_elements(X->orbit_of(x)).size());
        // one object per component here, so endo count = group order
        CHECK(orbit_size * stabilizer_order(*X, x) == endos);
      }
    }
  }
}

TEST_CASE("representables at each object generate") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  ActionPtr rep = representable_action(g, 0);
  CHECK(rep->size() == 2);  // the group acting on itself
  CHECK(rep->orbit_count() == 1);
  GeneratingFamily fam = generating_family(g);
  CHECK(fam.generated);
  CHECK(fam.witnesses.size() == static_cast<std::size_t>(g->object_count()));
  // every orbit is covered by a map from some representable: the rep's
  // stabilizer is trivial, so candidates always include every element
  for (int o = 0; o < X->orbit_count(); ++o) {
    int base = X->base_object(X->orbit_representative_index(o));
    CHECK_FALSE(enumerate_maps(fam.witnesses[base], X, false, 1).empty());
  }
}

TEST_CASE("disjoint unions tag and include") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  EquivariantMap fold = models::fold_map(X, 3);
  CHECK(fold.source()->size() == 9);
  CHECK(is_epi(fold));
  FiberProfile p = fiber_profile(fold);
  REQUIRE(p.n_to_1.has_value());
  CHECK(*p.n_to_1 == 3);
}

TEST_CASE("terminal action and terminal map") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  ActionPtr pt = terminal_action(g);
  CHECK(pt->size() == 1);
  EquivariantMap t = terminal_map(X);
  CHECK(t.target()->size() == 1);
  CHECK(is_epi(t));
}

TEST_CASE("map enumeration respects stabilizers") {
  GroupoidPtr g = z2_groupoid();
  ActionPtr X = z2_three(g);
  // a can land anywhere, c only on the fixed point: 3 maps, 2 of them epi
  std::vector<EquivariantMap> all = enumerate_maps(X, X);
  CHECK(all.size() == 3);
  std::vector<EquivariantMap> epis = enumerate_maps(X, X, /*epi_only=*/true);
  CHECK(epis.size() == 2);
  std::vector<EquivariantMap> capped = enumerate_maps(X, X, false, 1);
  CHECK(capped.size() == 1);

  // free orbit has trivial stabilizer and maps anywhere within the fiber
  ActionPtr reg = representable_action(g, 0);
  CHECK(enumerate_maps(reg, X).size() == 3);
  // no map X → regular: the fixed point c would need a fixed image
  CHECK(enumerate_maps(X, reg).empty());
}

TEST_CASE("maps from the empty action exist uniquely") {
  GroupoidPtr g = z2_groupoid();
  ActionSpec spec;
  spec.fibers = {{"A", {}}};
  ActionPtr empty = FiniteAction::validate(g, spec);
  CHECK(empty->size() == 0);
  ActionPtr X = z2_three(g);
  CHECK(enumerate_maps(empty, X).size() == 1);
  CHECK(enumerate_maps(X, empty).empty());
}

TEST_CASE("pair ids that collide are rejected") {
  GroupoidPtr t = trivial_groupoid();
  ActionSpec spec;
  // "(x," and "y)" concatenate to the same id as "(x" and ",y)"
  spec.fibers = {{"pt", {"(x,", "(x", ",y)", "y)"}}};
  ActionPtr weird = FiniteAction::validate(t, spec);
  CHECK_THROWS_AS(product(weird, weird), Error);
}

TEST_CASE("actions on multi-component groupoids keep fibers apart") {
  for (std::uint64_t seed = 30; seed <= 40; ++seed) {
    Rng rng(seed);
    models::Model m = models::random_model(rng, 6, 2, 2);
    ActionPtr X = models::random_action(m, rng, 12);
    const FiniteGroupoid& g = *m.groupoid;
    for (int o = 0; o < X->orbit_count(); ++o) {
      // an orbit never crosses components
      std::set<int> comps;
      for (int x : X->orbit_elements(o))
        comps.insert(g.component_of(X->base_object(x)));
      CHECK(comps.size() == 1);
    }
  }
}
