#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace toposm {

struct MorphismSpec {
  std::string id;
  std::string src;
  std::string dst;
};

// Raw table data as it comes out of a config file: objects, arrows and a
// composition table. Rows of `compose` read [g, h, k] meaning g∘h = k,
// defined when dst(h) = src(g) (h acts first).
struct GroupoidSpec {
  std::vector<std::string> objects;
  std::vector<MorphismSpec> morphisms;
  std::vector<std::array<std::string, 3>> compose;
};

// A finite groupoid given by an explicit composition table. Validation is
// exhaustive: totality of composition on composable pairs, associativity,
// identities and two-sided inverses are all checked element by element.
// Objects and morphisms are kept sorted by id so that every derived listing
// is deterministic. Immutable after construction.
class FiniteGroupoid {
 public:
  // Throws Error{DanglingEndpoint | BadComposition | MissingIdentity |
  // MissingInverse | NonAssociative | ValidationError} naming the offenders.
  static FiniteGroupoid validate(const GroupoidSpec& spec);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphism_ids_.size()); }

  const std::string& object_id(int o) const { return objects_[o]; }
  const std::string& morphism_id(int m) const { return morphism_ids_[m]; }
  int src(int m) const { return src_[m]; }
  int dst(int m) const { return dst_[m]; }

  std::optional<int> object_index(const std::string& id) const;
  std::optional<int> morphism_index(const std::string& id) const;

  // g∘h (h first); -1 when dst(h) != src(g)
  int compose(int g, int h) const {
    return table_[static_cast<std::size_t>(g) * morphism_ids_.size() + h];
  }
  int identity_at(int object) const { return identity_[object]; }
  int inverse(int m) const { return inverse_[m]; }
  bool is_identity(int m) const { return identity_[src_[m]] == m; }

  const std::vector<int>& morphisms_from(int object) const { return from_[object]; }
  const std::vector<int>& endomorphisms(int object) const { return endo_[object]; }

  // Components: partition of objects by reachability. At finite scale these
  // play the role of Sub(1) (the localic reflection of the action topos).
  int component_count() const { return static_cast<int>(components_.size()); }
  int component_of(int object) const { return component_of_[object]; }
  const std::vector<int>& component_objects(int c) const { return components_[c]; }
  // least object id of the component; the serialization key
  const std::string& component_representative(int c) const {
    return objects_[components_[c].front()];
  }

  bool operator==(const FiniteGroupoid& other) const;

 private:
  FiniteGroupoid() = default;

  std::vector<std::string> objects_;        // sorted
  std::vector<std::string> morphism_ids_;   // sorted
  std::vector<int> src_, dst_;
  std::vector<int> table_;                  // m x m, -1 where undefined
  std::vector<int> identity_;               // per object
  std::vector<int> inverse_;                // per morphism
  std::vector<std::vector<int>> from_;      // morphisms with given source
  std::vector<std::vector<int>> endo_;      // endomorphisms per object
  std::vector<std::vector<int>> components_;
  std::vector<int> component_of_;
  std::unordered_map<std::string, int> object_index_;
  std::unordered_map<std::string, int> morphism_index_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

GroupoidPtr validate_groupoid(const GroupoidSpec& spec);

inline bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace toposm
