#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "toposm/groupoid.hpp"

namespace toposm {

class FiniteAction;
using ActionPtr = std::shared_ptr<const FiniteAction>;

// Raw action data: per-object element lists and per-morphism element maps.
// Ordered maps so that iteration order never depends on hashing.
struct ActionSpec {
  std::map<std::string, std::vector<std::string>> fibers;
  std::map<std::string, std::map<std::string, std::string>> transport;
};

// A finite groupoid acting on finite fibers. Elements get a global index
// ordered by (base object, element id), so each fiber is a contiguous range.
// Transport along identities may be omitted from the spec; when present it
// must be the identity map. Validation checks bijectivity and functoriality
// exhaustively. Immutable after construction.
class FiniteAction {
 public:
  static ActionPtr validate(GroupoidPtr groupoid, const ActionSpec& spec);

  const GroupoidPtr& groupoid() const { return groupoid_; }

  int size() const { return static_cast<int>(elements_.size()); }
  const std::string& element_id(int x) const { return elements_[x]; }
  int base_object(int x) const { return base_[x]; }
  std::optional<int> element_index(const std::string& id) const;

  // contiguous fiber over an object, as [begin, end)
  int fiber_begin(int object) const { return fiber_begin_[object]; }
  int fiber_end(int object) const { return fiber_begin_[object + 1]; }
  int fiber_size(int object) const { return fiber_end(object) - fiber_begin(object); }

  // transport of x along morphism m; requires base_object(x) == src(m)
  int act(int m, int x) const {
    return transport_[m][x - fiber_begin_[groupoid_->src(m)]];
  }

  // orbits: atoms of the subobject lattice, ordered by least element id
  int orbit_count() const { return static_cast<int>(orbits_.size()); }
  int orbit_of(int x) const { return orbit_of_[x]; }
  const std::vector<int>& orbit_elements(int o) const { return orbits_[o]; }
  // least element id in the orbit; the serialization key for orbit data
  const std::string& orbit_representative(int o) const {
    return elements_[orbit_rep_[o]];
  }
  int orbit_representative_index(int o) const { return orbit_rep_[o]; }
  // groupoid component an orbit lives over
  int orbit_component(int o) const {
    return groupoid_->component_of(base_[orbits_[o].front()]);
  }

 private:
  FiniteAction() = default;
  void build_orbits();

  GroupoidPtr groupoid_;
  std::vector<std::string> elements_;         // sorted by (base object, id)
  std::vector<int> base_;                     // base object per element
  std::vector<int> fiber_begin_;              // object_count()+1 offsets
  std::vector<std::vector<int>> transport_;   // per morphism, indexed by local pos
  std::vector<std::vector<int>> orbits_;      // each sorted by global index
  std::vector<int> orbit_of_;
  std::vector<int> orbit_rep_;                // element with least id per orbit
  std::unordered_map<std::string, int> element_index_;
};

// Transport-closed subset of an action's elements. The membership vector is
// kept sorted; set algebra stays within one carrier action.
class Subobject {
 public:
  // throws ValidationError when ids are unknown or the set is not closed
  static Subobject create(ActionPtr carrier, const std::vector<std::string>& ids);
  static Subobject from_indices(ActionPtr carrier, std::vector<int> elements);
  static Subobject whole(ActionPtr carrier);
  static Subobject empty(ActionPtr carrier);
  static Subobject orbit(ActionPtr carrier, int orbit_index);

  const ActionPtr& carrier() const { return carrier_; }
  const std::vector<int>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool contains(int x) const { return member_[x]; }

  // orbits of the carrier fully inside this subobject (atoms below it)
  std::vector<int> orbit_indices() const;

  Subobject complement() const;
  Subobject meet(const Subobject& other) const;
  Subobject join(const Subobject& other) const;
  bool operator==(const Subobject& other) const;

 private:
  Subobject(ActionPtr carrier, std::vector<int> elements);
  ActionPtr carrier_;
  std::vector<int> elements_;   // sorted global indices
  std::vector<char> member_;    // size = carrier size
};

// Equivariant map between actions of the same groupoid: sends each fiber to
// the fiber over the same object and commutes with every transport.
class EquivariantMap {
 public:
  // errors: GroupoidMismatch, ValidationError (unknown ids, wrong fiber),
  // NotEquivariant (naturality failure, names the offending morphism)
  static EquivariantMap create(ActionPtr source, ActionPtr target,
                               const std::map<std::string, std::string>& by_id);
  static EquivariantMap from_indices(ActionPtr source, ActionPtr target,
                                     std::vector<int> map);
  static EquivariantMap identity(ActionPtr carrier);

  const ActionPtr& source() const { return source_; }
  const ActionPtr& target() const { return target_; }
  int apply(int x) const { return map_[x]; }
  const std::vector<int>& raw() const { return map_; }

  EquivariantMap compose_after(const EquivariantMap& first) const;  // this ∘ first

 private:
  EquivariantMap(ActionPtr source, ActionPtr target, std::vector<int> map);
  ActionPtr source_;
  ActionPtr target_;
  std::vector<int> map_;
};

// orbits(X) as explicit subobjects; atoms of Sub(X)
std::vector<Subobject> orbits(const ActionPtr& X);

// count of endomorphisms at x's base object fixing x; UnknownElement
int stabilizer_order(const FiniteAction& X, const std::string& element_id);
int stabilizer_order(const FiniteAction& X, int x);

// per groupoid component, the common fiber size over that component
std::vector<int> internal_cardinal(const FiniteAction& X);

struct FiberProfile {
  bool is_finite = true;            // finite scale: always
  std::optional<int> n_to_1;        // n iff every fiber of f has n elements
  std::vector<int> fiber_sizes;     // sorted multiset, one entry per target element
};
FiberProfile fiber_profile(const EquivariantMap& f);

struct SpanResult {
  ActionPtr action;
  EquivariantMap proj1;
  EquivariantMap proj2;
};
// fiberwise product with diagonal transport; element ids "(x,y)"
SpanResult product(const ActionPtr& X, const ActionPtr& Y);
// fiber product of f: X→Z, g: Y→Z over the shared codomain
SpanResult pullback(const EquivariantMap& f, const EquivariantMap& g);

Subobject image(const EquivariantMap& f);
bool is_epi(const EquivariantMap& f);
bool is_mono(const EquivariantMap& f);

// Action groupoid 𝒢⋉X: objects are elements of X, morphisms "g@x": x → g·x.
// Its components are exactly the orbits of X, listed in the same order.
GroupoidPtr slice_groupoid(const FiniteAction& X);

// one element per object, named after the object
ActionPtr terminal_action(GroupoidPtr groupoid);
// unique map X → terminal
EquivariantMap terminal_map(const ActionPtr& X);

// action on the morphisms out of `object` by post-composition;
// element ids are the morphism ids
ActionPtr representable_action(GroupoidPtr groupoid, int object);

struct GeneratingFamily {
  bool generated = true;            // finite scale: always
  std::vector<ActionPtr> witnesses; // representables, one per object
};
GeneratingFamily generating_family(GroupoidPtr groupoid);

struct DisjointUnion {
  ActionPtr action;
  std::vector<EquivariantMap> inclusions;
};
// element ids become "tag:x"; tags must be distinct and nonempty
DisjointUnion disjoint_union(const std::vector<ActionPtr>& parts,
                             const std::vector<std::string>& tags);

struct RestrictedAction {
  ActionPtr action;
  EquivariantMap inclusion;
};
// a subobject as an action in its own right, elements keeping their ids
RestrictedAction to_action(const Subobject& S);

// All equivariant maps source → target, in a deterministic order. A map is
// fixed by the images of orbit representatives; candidates are the target
// elements whose stabilizer contains the representative's. With epi_only,
// only surjections are kept. limit > 0 stops after that many maps.
std::vector<EquivariantMap> enumerate_maps(const ActionPtr& source, const ActionPtr& target,
                                           bool epi_only = false, std::size_t limit = 0);

}  // namespace toposm
