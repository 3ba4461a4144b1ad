#pragma once

#include <string>
#include <vector>

#include "toposm/action.hpp"
#include "toposm/measure.hpp"
#include "toposm/operator.hpp"
#include "toposm/rng.hpp"
#include "toposm/valuation.hpp"

// Deterministic generators for randomized suites: permutation groups,
// connected groupoids, coset actions, dyadic weights and algebra elements.
// Everything is seeded through Rng; identical seeds give identical models.
namespace toposm::models {

// A permutation group on {0..degree-1}, closed and lexicographically sorted.
// The identity is named "e"; the rest "g01", "g02", … in sorted order.
struct PermGroup {
  int degree = 0;
  std::vector<std::vector<int>> perms;
  std::vector<std::string> names;
  int identity = 0;

  int size() const { return static_cast<int>(perms.size()); }
  int compose(int a, int b) const;  // index of a∘b (b acts first)
  int inverse(int a) const;
};

PermGroup close_permutations(int degree, std::vector<std::vector<int>> generators);
PermGroup trivial_group();
PermGroup cyclic_group(int n);
PermGroup dihedral_group(int n);  // on n vertices, order 2n (n >= 3)
PermGroup symmetric_group(int n);  // n <= 4
PermGroup klein_four_group();
PermGroup alternating_four_group();

// One connected component: `objects` pairwise-isomorphic objects with the
// given vertex group. Ids: objects "<prefix>o<i>", morphisms
// "<prefix><gname>:<i>-<j>" for the arrow i → j labeled g.
struct ComponentModel {
  PermGroup group;
  int objects = 1;
  std::string prefix;

  std::string object_id(int i) const;
  std::string morphism_id(int g, int i, int j) const;
  GroupoidSpec spec() const;
};

// A finite set with one permutation per group element (a homomorphic image).
struct GSet {
  int size = 0;
  std::vector<std::vector<int>> images;  // indexed by group element
};

GSet regular_gset(const PermGroup& g);
GSet point_gset(const PermGroup& g);
// cosets of the subgroup generated by the given element indices
GSet coset_gset(const PermGroup& g, const std::vector<int>& subgroup_generators);
// a closed random subgroup (closure of up to two random elements)
std::vector<int> random_subgroup(const PermGroup& g, Rng& rng);

// fibers of the gset copied over each object of the component; element ids
// "<tag>s<k>@<object>"
ActionSpec gset_action(const ComponentModel& m, const GSet& s, const std::string& tag);

struct Model {
  GroupoidPtr groupoid;
  std::vector<ComponentModel> components;
};

Model group_model(const PermGroup& g);
Model random_model(Rng& rng, int max_group_order = 8, int max_objects_per_component = 2,
                   int max_components = 2);

// disjoint union of per-component coset actions, at most max_elements total
ActionPtr random_action(const Model& m, Rng& rng, int max_elements);

// weights of the form k/64, k in [1, 64]: strictly positive, exactly
// representable, so rational acceptance checks stay exact
InvariantMeasure random_dyadic_measure(const Model& m, Rng& rng);
Valuation random_dyadic_valuation(const ActionPtr& X, Rng& rng);
ChiSection random_dyadic_section(const ActionPtr& X, Rng& rng);
OrbitFunction random_orbit_function(const ActionPtr& X, Rng& rng, bool positive);

// random element of the commutant: a combination of basis indicators with
// uniform complex coefficients; equivariant bit for bit
OperatorMatrix random_algebra_element(const ActionPtr& X, Rng& rng);

// canonical n-to-1 maps
EquivariantMap fold_map(const ActionPtr& X, int copies);          // X⊔…⊔X → X
EquivariantMap fattening_projection(const ActionPtr& X, int k);   // X×(k constant points) → X
// the constant action with k points over every object
ActionPtr constant_action(GroupoidPtr groupoid, int k);

}  // namespace toposm::models
