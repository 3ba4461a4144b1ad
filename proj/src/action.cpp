#include "toposm/action.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "toposm/error.hpp"

namespace toposm {

namespace {

struct ElementUnionFind {
  std::vector<int> parent;
  explicit ElementUnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::optional<int> FiniteAction::element_index(const std::string& id) const {
  auto it = element_index_.find(id);
  if (it == element_index_.end()) return std::nullopt;
  return it->second;
}

void FiniteAction::build_orbits() {
  const int n = size();
  ElementUnionFind uf(n);
  for (int m = 0; m < groupoid_->morphism_count(); ++m) {
    const int s = groupoid_->src(m);
    for (int x = fiber_begin(s); x < fiber_end(s); ++x) uf.unite(x, act(m, x));
  }
  std::vector<std::vector<int>> buckets(n);
  for (int x = 0; x < n; ++x) buckets[uf.find(x)].push_back(x);
  std::vector<std::vector<int>> orbs;
  for (auto& b : buckets)
    if (!b.empty()) orbs.push_back(std::move(b));
  // representative: lexicographically least element id, which need not be the
  // least global index (global order is by object first)
  std::vector<int> reps;
  reps.reserve(orbs.size());
  for (const auto& orb : orbs) {
    int rep = orb.front();
    for (int x : orb)
      if (elements_[x] < elements_[rep]) rep = x;
    reps.push_back(rep);
  }
  std::vector<int> order(orbs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return elements_[reps[a]] < elements_[reps[b]]; });
  orbits_.clear();
  orbit_rep_.clear();
  for (int i : order) {
    orbits_.push_back(std::move(orbs[i]));
    orbit_rep_.push_back(reps[i]);
  }
  orbit_of_.assign(n, -1);
  for (int o = 0; o < static_cast<int>(orbits_.size()); ++o)
    for (int x : orbits_[o]) orbit_of_[x] = o;
}

ActionPtr FiniteAction::validate(GroupoidPtr groupoid, const ActionSpec& spec) {
  if (!groupoid) fail(ErrorKind::ValidationError, "action requires a groupoid");
  auto act = std::shared_ptr<FiniteAction>(new FiniteAction());
  act->groupoid_ = groupoid;
  const auto& g = *groupoid;

  for (const auto& [obj, _] : spec.fibers)
    if (!g.object_index(obj))
      fail(ErrorKind::ValidationError, "fiber over unknown object '" + obj + "'");

  // elements sorted by (object index, id); fibers become contiguous ranges
  act->fiber_begin_.assign(g.object_count() + 1, 0);
  for (int o = 0; o < g.object_count(); ++o) {
    act->fiber_begin_[o] = static_cast<int>(act->elements_.size());
    auto it = spec.fibers.find(g.object_id(o));
    if (it == spec.fibers.end()) continue;
    std::vector<std::string> ids = it->second;
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i].empty()) fail(ErrorKind::ValidationError, "empty element id");
      if (i > 0 && ids[i] == ids[i - 1])
        fail(ErrorKind::ValidationError,
             "duplicate element id '" + ids[i] + "' over object '" + it->first + "'");
      act->elements_.push_back(ids[i]);
      act->base_.push_back(o);
    }
  }
  act->fiber_begin_[g.object_count()] = static_cast<int>(act->elements_.size());
  for (int x = 0; x < act->size(); ++x) {
    auto [it, fresh] = act->element_index_.emplace(act->elements_[x], x);
    if (!fresh)
      fail(ErrorKind::ValidationError,
           "element id '" + act->elements_[x] + "' appears over two objects");
  }

  for (const auto& [mid, _] : spec.transport)
    if (!g.morphism_index(mid))
      fail(ErrorKind::ValidationError, "transport along unknown morphism '" + mid + "'");

  act->transport_.assign(g.morphism_count(), {});
  for (int m = 0; m < g.morphism_count(); ++m) {
    const int s = g.src(m), d = g.dst(m);
    const int sb = act->fiber_begin_[s], se = act->fiber_begin_[s + 1];
    auto& tr = act->transport_[m];
    tr.assign(se - sb, -1);
    auto it = spec.transport.find(g.morphism_id(m));
    if (it == spec.transport.end()) {
      if (!g.is_identity(m) && se > sb)
        fail(ErrorKind::ValidationError,
             "no transport given for morphism '" + g.morphism_id(m) + "'");
      std::iota(tr.begin(), tr.end(), sb);  // identity transport may be omitted
      continue;
    }
    for (const auto& [from, to] : it->second) {
      auto fi = act->element_index(from);
      auto ti = act->element_index(to);
      if (!fi || act->base_[*fi] != s)
        fail(ErrorKind::ValidationError, "transport '" + g.morphism_id(m) +
                                             "' maps '" + from + "' which is not in its source fiber");
      if (!ti || act->base_[*ti] != d)
        fail(ErrorKind::ValidationError, "transport '" + g.morphism_id(m) + "' sends '" +
                                             from + "' to '" + to + "' outside its target fiber");
      tr[*fi - sb] = *ti;
    }
    for (int i = 0; i < se - sb; ++i)
      if (tr[i] == -1)
        fail(ErrorKind::ValidationError, "transport '" + g.morphism_id(m) +
                                             "' does not map element '" + act->elements_[sb + i] + "'");
    std::vector<char> hit(act->fiber_begin_[d + 1] - act->fiber_begin_[d], 0);
    for (int i = 0; i < se - sb; ++i) {
      int local = tr[i] - act->fiber_begin_[d];
      if (hit[local])
        fail(ErrorKind::ValidationError,
             "transport '" + g.morphism_id(m) + "' is not injective");
      hit[local] = 1;
    }
    if (se - sb != act->fiber_begin_[d + 1] - act->fiber_begin_[d])
      fail(ErrorKind::ValidationError,
           "transport '" + g.morphism_id(m) + "' is not a bijection: fiber sizes differ");
    if (g.is_identity(m))
      for (int i = 0; i < se - sb; ++i)
        if (tr[i] != sb + i)
          fail(ErrorKind::ValidationError,
               "identity morphism '" + g.morphism_id(m) + "' given a non-identity transport");
  }

  // functoriality, exhaustive over composable pairs
  for (int a = 0; a < g.morphism_count(); ++a)
    for (int b = 0; b < g.morphism_count(); ++b) {
      if (g.dst(b) != g.src(a)) continue;
      const int ab = g.compose(a, b);
      const int s = g.src(b);
      for (int x = act->fiber_begin_[s]; x < act->fiber_begin_[s + 1]; ++x)
        if (act->act(ab, x) != act->act(a, act->act(b, x)))
          fail(ErrorKind::ValidationError,
               "transport is not functorial: '" + g.morphism_id(a) + "'∘'" + g.morphism_id(b) +
                   "' disagrees with the composite on element '" + act->elements_[x] + "'");
    }

  act->build_orbits();
  return act;
}

// ---- Subobject ----

Subobject::Subobject(ActionPtr carrier, std::vector<int> elements)
    : carrier_(std::move(carrier)), elements_(std::move(elements)) {
  member_.assign(carrier_->size(), 0);
  for (int x : elements_) member_[x] = 1;
}

Subobject Subobject::from_indices(ActionPtr carrier, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && (elements.front() < 0 || elements.back() >= carrier->size()))
    fail(ErrorKind::ValidationError, "subobject element index out of range");
  Subobject s(std::move(carrier), std::move(elements));
  const auto& X = *s.carrier_;
  const auto& g = *X.groupoid();
  for (int x : s.elements_)
    for (int m : g.morphisms_from(X.base_object(x)))
      if (!s.member_[X.act(m, x)])
        fail(ErrorKind::ValidationError,
             "subset is not transport-closed: morphism '" + g.morphism_id(m) +
                 "' carries '" + X.element_id(x) + "' outside it");
  return s;
}

Subobject Subobject::create(ActionPtr carrier, const std::vector<std::string>& ids) {
  std::vector<int> idx;
  idx.reserve(ids.size());
  for (const auto& id : ids) {
    auto i = carrier->element_index(id);
    if (!i) fail(ErrorKind::ValidationError, "subobject names unknown element '" + id + "'");
    idx.push_back(*i);
  }
  return from_indices(std::move(carrier), std::move(idx));
}

Subobject Subobject::whole(ActionPtr carrier) {
  std::vector<int> all(carrier->size());
  std::iota(all.begin(), all.end(), 0);
  return Subobject(std::move(carrier), std::move(all));
}

Subobject Subobject::empty(ActionPtr carrier) { return Subobject(std::move(carrier), {}); }

Subobject Subobject::orbit(ActionPtr carrier, int orbit_index) {
  std::vector<int> elems = carrier->orbit_elements(orbit_index);
  return Subobject(std::move(carrier), std::move(elems));
}

std::vector<int> Subobject::orbit_indices() const {
  std::vector<int> out;
  for (int o = 0; o < carrier_->orbit_count(); ++o)
    if (member_[carrier_->orbit_elements(o).front()]) out.push_back(o);
  return out;
}

Subobject Subobject::complement() const {
  std::vector<int> rest;
  for (int x = 0; x < carrier_->size(); ++x)
    if (!member_[x]) rest.push_back(x);
  return Subobject(carrier_, std::move(rest));
}

Subobject Subobject::meet(const Subobject& other) const {
  if (carrier_ != other.carrier_)
    fail(ErrorKind::CarrierMismatch, "meet of subobjects of different actions");
  std::vector<int> out;
  for (int x : elements_)
    if (other.member_[x]) out.push_back(x);
  return Subobject(carrier_, std::move(out));
}

Subobject Subobject::join(const Subobject& other) const {
  if (carrier_ != other.carrier_)
    fail(ErrorKind::CarrierMismatch, "join of subobjects of different actions");
  std::vector<int> out = elements_;
  for (int x : other.elements_)
    if (!member_[x]) out.push_back(x);
  std::sort(out.begin(), out.end());
  return Subobject(carrier_, std::move(out));
}

bool Subobject::operator==(const Subobject& other) const {
  return carrier_ == other.carrier_ && elements_ == other.elements_;
}

// ---- EquivariantMap ----

EquivariantMap::EquivariantMap(ActionPtr source, ActionPtr target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {}

EquivariantMap EquivariantMap::from_indices(ActionPtr source, ActionPtr target,
                                            std::vector<int> map) {
  if (!same_groupoid(source->groupoid(), target->groupoid()))
    fail(ErrorKind::GroupoidMismatch, "map between actions of different groupoids");
  if (static_cast<int>(map.size()) != source->size())
    fail(ErrorKind::ValidationError, "map does not cover the source");
  for (int x = 0; x < source->size(); ++x) {
    if (map[x] < 0 || map[x] >= target->size())
      fail(ErrorKind::ValidationError, "map image index out of range");
    if (target->base_object(map[x]) != source->base_object(x))
      fail(ErrorKind::ValidationError, "map sends '" + source->element_id(x) +
                                           "' to a fiber over a different object");
  }
  const auto& g = *source->groupoid();
  for (int m = 0; m < g.morphism_count(); ++m) {
    const int s = g.src(m);
    for (int x = source->fiber_begin(s); x < source->fiber_end(s); ++x)
      if (map[source->act(m, x)] != target->act(m, map[x]))
        fail(ErrorKind::NotEquivariant,
             "map does not commute with transport along '" + g.morphism_id(m) +
                 "' at element '" + source->element_id(x) + "'");
  }
  return EquivariantMap(std::move(source), std::move(target), std::move(map));
}

EquivariantMap EquivariantMap::create(ActionPtr source, ActionPtr target,
                                      const std::map<std::string, std::string>& by_id) {
  std::vector<int> map(source->size(), -1);
  for (const auto& [from, to] : by_id) {
    auto fi = source->element_index(from);
    if (!fi) fail(ErrorKind::ValidationError, "map names unknown source element '" + from + "'");
    auto ti = target->element_index(to);
    if (!ti) fail(ErrorKind::ValidationError, "map names unknown target element '" + to + "'");
    map[*fi] = *ti;
  }
  for (int x = 0; x < source->size(); ++x)
    if (map[x] == -1)
      fail(ErrorKind::ValidationError,
           "map gives no image for element '" + source->element_id(x) + "'");
  return from_indices(std::move(source), std::move(target), std::move(map));
}

EquivariantMap EquivariantMap::identity(ActionPtr carrier) {
  std::vector<int> map(carrier->size());
  std::iota(map.begin(), map.end(), 0);
  return EquivariantMap(carrier, carrier, std::move(map));
}

EquivariantMap EquivariantMap::compose_after(const EquivariantMap& first) const {
  if (first.target_ != source_)
    fail(ErrorKind::CarrierMismatch, "composite of maps through different middle actions");
  std::vector<int> map(first.map_.size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = map_[first.map_[x]];
  return EquivariantMap(first.source_, target_, std::move(map));
}

// ---- free operations ----

std::vector<Subobject> orbits(const ActionPtr& X) {
  std::vector<Subobject> out;
  out.reserve(X->orbit_count());
  for (int o = 0; o < X->orbit_count(); ++o) out.push_back(Subobject::orbit(X, o));
  return out;
}

int stabilizer_order(const FiniteAction& X, int x) {
  int count = 0;
  for (int m : X.groupoid()->endomorphisms(X.base_object(x)))
    if (X.act(m, x) == x) ++count;
  return count;
}

int stabilizer_order(const FiniteAction& X, const std::string& element_id) {
  auto x = X.element_index(element_id);
  if (!x) fail(ErrorKind::UnknownElement, "no element '" + element_id + "' in the action");
  return stabilizer_order(X, *x);
}

std::vector<int> internal_cardinal(const FiniteAction& X) {
  const auto& g = *X.groupoid();
  std::vector<int> card(g.component_count(), 0);
  for (int c = 0; c < g.component_count(); ++c)
    card[c] = X.fiber_size(g.component_objects(c).front());
  return card;
}

FiberProfile fiber_profile(const EquivariantMap& f) {
  FiberProfile p;
  std::vector<int> count(f.target()->size(), 0);
  for (int x = 0; x < f.source()->size(); ++x) ++count[f.apply(x)];
  p.fiber_sizes = count;
  std::sort(p.fiber_sizes.begin(), p.fiber_sizes.end());
  if (!count.empty()) {
    const int n = count.front();
    if (std::all_of(count.begin(), count.end(), [n](int c) { return c == n; }))
      p.n_to_1 = n;
  }
  return p;
}

namespace {

// shared by product and pullback: build the pair action for the admitted
// pairs, then recover the projections by index
SpanResult pair_action(const ActionPtr& X, const ActionPtr& Y,
                       const std::function<bool(int, int)>& admit) {
  if (!same_groupoid(X->groupoid(), Y->groupoid()))
    fail(ErrorKind::GroupoidMismatch, "pairing actions of different groupoids");
  const auto& g = *X->groupoid();
  ActionSpec spec;
  std::map<std::string, std::pair<int, int>> legs;
  auto pair_id = [&](int x, int y) {
    return "(" + X->element_id(x) + "," + Y->element_id(y) + ")";
  };
  for (int o = 0; o < g.object_count(); ++o) {
    auto& fib = spec.fibers[g.object_id(o)];
    for (int x = X->fiber_begin(o); x < X->fiber_end(o); ++x)
      for (int y = Y->fiber_begin(o); y < Y->fiber_end(o); ++y) {
        if (!admit(x, y)) continue;
        std::string id = pair_id(x, y);
        if (!legs.emplace(id, std::make_pair(x, y)).second)
          fail(ErrorKind::ValidationError, "pair id '" + id + "' is ambiguous");
        fib.push_back(id);
      }
  }
  for (int m = 0; m < g.morphism_count(); ++m) {
    auto& tr = spec.transport[g.morphism_id(m)];
    const int s = g.src(m);
    for (int x = X->fiber_begin(s); x < X->fiber_end(s); ++x)
      for (int y = Y->fiber_begin(s); y < Y->fiber_end(s); ++y)
        if (admit(x, y)) tr[pair_id(x, y)] = pair_id(X->act(m, x), Y->act(m, y));
  }
  ActionPtr P = FiniteAction::validate(X->groupoid(), spec);
  std::vector<int> p1(P->size()), p2(P->size());
  for (int i = 0; i < P->size(); ++i) {
    const auto& [x, y] = legs.at(P->element_id(i));
    p1[i] = x;
    p2[i] = y;
  }
  return SpanResult{P, EquivariantMap::from_indices(P, X, std::move(p1)),
                    EquivariantMap::from_indices(P, Y, std::move(p2))};
}

}  // namespace

SpanResult product(const ActionPtr& X, const ActionPtr& Y) {
  return pair_action(X, Y, [](int, int) { return true; });
}

SpanResult pullback(const EquivariantMap& f, const EquivariantMap& g) {
  if (f.target() != g.target())
    fail(ErrorKind::GroupoidMismatch, "pullback legs land in different actions");
  return pair_action(f.source(), g.source(),
                     [&](int x, int y) { return f.apply(x) == g.apply(y); });
}

Subobject image(const EquivariantMap& f) {
  std::vector<int> img;
  img.reserve(f.source()->size());
  for (int x = 0; x < f.source()->size(); ++x) img.push_back(f.apply(x));
  return Subobject::from_indices(f.target(), std::move(img));
}

bool is_epi(const EquivariantMap& f) { return image(f).size() == f.target()->size(); }

bool is_mono(const EquivariantMap& f) {
  std::vector<char> hit(f.target()->size(), 0);
  for (int x = 0; x < f.source()->size(); ++x) {
    if (hit[f.apply(x)]) return false;
    hit[f.apply(x)] = 1;
  }
  return true;
}

GroupoidPtr slice_groupoid(const FiniteAction& X) {
  const auto& g = *X.groupoid();
  GroupoidSpec spec;
  for (int x = 0; x < X.size(); ++x) spec.objects.push_back(X.element_id(x));
  auto arrow = [&](int m, int x) { return g.morphism_id(m) + "@" + X.element_id(x); };
  for (int x = 0; x < X.size(); ++x)
    for (int m : g.morphisms_from(X.base_object(x)))
      spec.morphisms.push_back({arrow(m, x), X.element_id(x), X.element_id(X.act(m, x))});
  for (int x = 0; x < X.size(); ++x)
    for (int m : g.morphisms_from(X.base_object(x))) {
      const int y = X.act(m, x);
      for (int h : g.morphisms_from(X.base_object(y)))
        spec.compose.push_back({arrow(h, y), arrow(m, x), arrow(g.compose(h, m), x)});
    }
  return validate_groupoid(spec);
}

ActionPtr terminal_action(GroupoidPtr groupoid) {
  ActionSpec spec;
  const auto& g = *groupoid;
  for (int o = 0; o < g.object_count(); ++o) spec.fibers[g.object_id(o)] = {g.object_id(o)};
  for (int m = 0; m < g.morphism_count(); ++m)
    spec.transport[g.morphism_id(m)] = {{g.object_id(g.src(m)), g.object_id(g.dst(m))}};
  return FiniteAction::validate(std::move(groupoid), spec);
}

EquivariantMap terminal_map(const ActionPtr& X) {
  ActionPtr t = terminal_action(X->groupoid());
  std::vector<int> map(X->size());
  for (int x = 0; x < X->size(); ++x) map[x] = t->fiber_begin(X->base_object(x));
  return EquivariantMap::from_indices(X, std::move(t), std::move(map));
}

ActionPtr representable_action(GroupoidPtr groupoid, int object) {
  ActionSpec spec;
  const auto& g = *groupoid;
  for (int o = 0; o < g.object_count(); ++o) spec.fibers[g.object_id(o)];
  for (int m : g.morphisms_from(object)) spec.fibers[g.object_id(g.dst(m))].push_back(g.morphism_id(m));
  for (int m = 0; m < g.morphism_count(); ++m) {
    auto& tr = spec.transport[g.morphism_id(m)];
    for (int f : g.morphisms_from(object))
      if (g.dst(f) == g.src(m)) tr[g.morphism_id(f)] = g.morphism_id(g.compose(m, f));
  }
  return FiniteAction::validate(std::move(groupoid), spec);
}

GeneratingFamily generating_family(GroupoidPtr groupoid) {
  GeneratingFamily fam;
  for (int o = 0; o < groupoid->object_count(); ++o)
    fam.witnesses.push_back(representable_action(groupoid, o));
  return fam;
}

DisjointUnion disjoint_union(const std::vector<ActionPtr>& parts,
                             const std::vector<std::string>& tags) {
  if (parts.empty()) fail(ErrorKind::ValidationError, "disjoint union of nothing");
  if (parts.size() != tags.size())
    fail(ErrorKind::ValidationError, "one tag per part required");
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (!same_groupoid(parts[i]->groupoid(), parts[0]->groupoid()))
      fail(ErrorKind::GroupoidMismatch, "disjoint union across different groupoids");
  {
    std::set<std::string> seen;
    for (const auto& t : tags) {
      if (t.empty()) fail(ErrorKind::ValidationError, "empty part tag");
      if (!seen.insert(t).second) fail(ErrorKind::ValidationError, "duplicate part tag '" + t + "'");
    }
  }
  const auto& g = *parts[0]->groupoid();
  ActionSpec spec;
  auto tagged = [&](std::size_t i, int x) { return tags[i] + ":" + parts[i]->element_id(x); };
  for (int o = 0; o < g.object_count(); ++o) {
    auto& fib = spec.fibers[g.object_id(o)];
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (int x = parts[i]->fiber_begin(o); x < parts[i]->fiber_end(o); ++x)
        fib.push_back(tagged(i, x));
  }
  for (int m = 0; m < g.morphism_count(); ++m) {
    auto& tr = spec.transport[g.morphism_id(m)];
    const int s = g.src(m);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (int x = parts[i]->fiber_begin(s); x < parts[i]->fiber_end(s); ++x)
        tr[tagged(i, x)] = tagged(i, parts[i]->act(m, x));
  }
  DisjointUnion out;
  out.action = FiniteAction::validate(parts[0]->groupoid(), spec);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<int> map(parts[i]->size());
    for (int x = 0; x < parts[i]->size(); ++x) map[x] = *out.action->element_index(tagged(i, x));
    out.inclusions.push_back(EquivariantMap::from_indices(parts[i], out.action, std::move(map)));
  }
  return out;
}

std::vector<EquivariantMap> enumerate_maps(const ActionPtr& source, const ActionPtr& target,
                                           bool epi_only, std::size_t limit) {
  if (!same_groupoid(source->groupoid(), target->groupoid()))
    fail(ErrorKind::GroupoidMismatch, "maps between actions of different groupoids");
  const auto& g = *source->groupoid();
  const auto& X = *source;
  const auto& Y = *target;

  // candidate images per orbit representative: same base object, stabilizer
  // of the candidate contains the stabilizer of the representative
  const int orbs = X.orbit_count();
  std::vector<std::vector<int>> candidates(orbs);
  for (int o = 0; o < orbs; ++o) {
    const int rep = X.orbit_representative_index(o);
    const int obj = X.base_object(rep);
    for (int y = Y.fiber_begin(obj); y < Y.fiber_end(obj); ++y) {
      bool ok = true;
      for (int m : g.endomorphisms(obj))
        if (X.act(m, rep) == rep && Y.act(m, y) != y) {
          ok = false;
          break;
        }
      if (ok) candidates[o].push_back(y);
    }
    if (candidates[o].empty()) return {};
  }

  // expand a representative choice to the whole orbit: every x in the orbit
  // is h·rep for some h found by search; f(x) = h·image
  auto expand = [&](const std::vector<int>& choice) {
    std::vector<int> map(X.size(), -1);
    for (int o = 0; o < orbs; ++o) {
      const int rep = X.orbit_representative_index(o);
      map[rep] = choice[o];
      // breadth-first closure over transports
      std::vector<int> frontier{rep};
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
          for (int m : g.morphisms_from(X.base_object(x))) {
            const int x2 = X.act(m, x);
            if (map[x2] == -1) {
              map[x2] = Y.act(m, map[x]);
              next.push_back(x2);
            }
          }
        frontier = std::move(next);
      }
    }
    return map;
  };

  std::vector<EquivariantMap> out;
  std::vector<int> choice(orbs, 0);
  bool done = orbs == 0;
  std::vector<int> picked(orbs);
  if (done) {
    // empty source: exactly one map, epi only onto an empty target
    if (!epi_only || Y.size() == 0)
      out.push_back(EquivariantMap::from_indices(source, target, {}));
    return out;
  }
  while (true) {
    for (int o = 0; o < orbs; ++o) picked[o] = candidates[o][choice[o]];
    std::vector<int> map = expand(picked);
    bool keep = true;
    if (epi_only) {
      std::vector<char> hit(Y.size(), 0);
      for (int x = 0; x < X.size(); ++x) hit[map[x]] = 1;
      keep = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    }
    if (keep) {
      out.push_back(EquivariantMap::from_indices(source, target, std::move(map)));
      if (limit > 0 && out.size() >= limit) return out;
    }
    int o = orbs - 1;
    while (o >= 0 && ++choice[o] == static_cast<int>(candidates[o].size())) choice[o--] = 0;
    if (o < 0) break;
  }
  return out;
}

RestrictedAction to_action(const Subobject& S) {
  const auto& X = *S.carrier();
  const auto& g = *X.groupoid();
  ActionSpec spec;
  for (int o = 0; o < g.object_count(); ++o) spec.fibers[g.object_id(o)];
  for (int x : S.elements()) spec.fibers[g.object_id(X.base_object(x))].push_back(X.element_id(x));
  for (int m = 0; m < g.morphism_count(); ++m) {
    auto& tr = spec.transport[g.morphism_id(m)];
    for (int x : S.elements())
      if (X.base_object(x) == g.src(m)) tr[X.element_id(x)] = X.element_id(X.act(m, x));
  }
  RestrictedAction out{FiniteAction::validate(X.groupoid(), spec), EquivariantMap::identity(S.carrier())};
  std::vector<int> map(out.action->size());
  for (int x = 0; x < out.action->size(); ++x)
    map[x] = *X.element_index(out.action->element_id(x));
  out.inclusion = EquivariantMap::from_indices(out.action, S.carrier(), std::move(map));
  return out;
}

}  // namespace toposm
