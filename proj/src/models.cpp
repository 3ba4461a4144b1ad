#include "toposm/models.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "toposm/error.hpp"

namespace toposm::models {

namespace {

std::vector<int> compose_perms(const std::vector<int>& a, const std::vector<int>& b) {
  // b first: (a∘b)(i) = a(b(i))
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

std::vector<int> invert_perm(const std::vector<int>& p) {
  std::vector<int> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

std::string padded(int v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

int PermGroup::compose(int a, int b) const {
  const auto p = compose_perms(perms[a], perms[b]);
  const auto it = std::lower_bound(perms.begin(), perms.end(), p);
  return static_cast<int>(it - perms.begin());
}

int PermGroup::inverse(int a) const {
  const auto p = invert_perm(perms[a]);
  const auto it = std::lower_bound(perms.begin(), perms.end(), p);
  return static_cast<int>(it - perms.begin());
}

PermGroup close_permutations(int degree, std::vector<std::vector<int>> generators) {
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> closed{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier)
      for (const auto& gen : generators) {
        for (const auto& q : {compose_perms(gen, p), compose_perms(p, gen)})
          if (closed.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  PermGroup g;
  g.degree = degree;
  g.perms.assign(closed.begin(), closed.end());
  g.names.resize(g.perms.size());
  int label = 0;
  for (std::size_t i = 0; i < g.perms.size(); ++i) {
    if (g.perms[i] == id) {
      g.identity = static_cast<int>(i);
      g.names[i] = "e";
    } else {
      g.names[i] = "g" + padded(++label);
    }
  }
  return g;
}

PermGroup trivial_group() { return close_permutations(1, {}); }

PermGroup cyclic_group(int n) {
  std::vector<int> rot(n);
  for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
  return close_permutations(n, {rot});
}

PermGroup dihedral_group(int n) {
  std::vector<int> rot(n), flip(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    flip[i] = (n - i) % n;
  }
  return close_permutations(n, {rot, flip});
}

PermGroup symmetric_group(int n) {
  std::vector<int> swap01(n), cycle(n);
  std::iota(swap01.begin(), swap01.end(), 0);
  if (n >= 2) std::swap(swap01[0], swap01[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return close_permutations(n, n >= 2 ? std::vector<std::vector<int>>{swap01, cycle}
                                      : std::vector<std::vector<int>>{});
}

PermGroup klein_four_group() {
  return close_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
}

PermGroup alternating_four_group() {
  return close_permutations(4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
}

std::string ComponentModel::object_id(int i) const { return prefix + "o" + std::to_string(i); }

std::string ComponentModel::morphism_id(int g, int i, int j) const {
  return prefix + group.names[g] + ":" + std::to_string(i) + "-" + std::to_string(j);
}

GroupoidSpec ComponentModel::spec() const {
  GroupoidSpec s;
  for (int i = 0; i < objects; ++i) s.objects.push_back(object_id(i));
  for (int g = 0; g < group.size(); ++g)
    for (int i = 0; i < objects; ++i)
      for (int j = 0; j < objects; ++j)
        s.morphisms.push_back({morphism_id(g, i, j), object_id(i), object_id(j)});
  // (j →h k)∘(i →g j) = (i →h∘g k)
  for (int h = 0; h < group.size(); ++h)
    for (int g = 0; g < group.size(); ++g)
      for (int i = 0; i < objects; ++i)
        for (int j = 0; j < objects; ++j)
          for (int k = 0; k < objects; ++k)
            s.compose.push_back({morphism_id(h, j, k), morphism_id(g, i, j),
                                 morphism_id(group.compose(h, g), i, k)});
  return s;
}

GSet regular_gset(const PermGroup& g) {
  GSet s;
  s.size = g.size();
  s.images.resize(g.size());
  for (int a = 0; a < g.size(); ++a) {
    s.images[a].resize(g.size());
    for (int x = 0; x < g.size(); ++x) s.images[a][x] = g.compose(a, x);
  }
  return s;
}

GSet point_gset(const PermGroup& g) {
  GSet s;
  s.size = 1;
  s.images.assign(g.size(), {0});
  return s;
}

GSet coset_gset(const PermGroup& g, const std::vector<int>& subgroup_generators) {
  // close the subgroup
  std::set<int> H{g.identity};
  std::vector<int> frontier{g.identity};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int h : frontier)
      for (int gen : subgroup_generators) {
        for (int q : {g.compose(h, gen), g.compose(gen, h), g.inverse(h)})
          if (H.insert(q).second) next.push_back(q);
      }
    if (subgroup_generators.empty()) break;
    frontier = std::move(next);
  }
  // cosets xH keyed by least member
  std::vector<int> coset_key(g.size(), -1);
  std::vector<int> keys;
  for (int x = 0; x < g.size(); ++x) {
    if (coset_key[x] != -1) continue;
    std::vector<int> members;
    for (int h : H) members.push_back(g.compose(x, h));
    const int key = *std::min_element(members.begin(), members.end());
    for (int m : members) coset_key[m] = key;
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  std::map<int, int> index_of_key;
  for (std::size_t i = 0; i < keys.size(); ++i) index_of_key[keys[i]] = static_cast<int>(i);

  GSet s;
  s.size = static_cast<int>(keys.size());
  s.images.resize(g.size());
  for (int a = 0; a < g.size(); ++a) {
    s.images[a].resize(s.size);
    for (std::size_t i = 0; i < keys.size(); ++i)
      s.images[a][i] = index_of_key.at(coset_key[g.compose(a, keys[i])]);
  }
  return s;
}

std::vector<int> random_subgroup(const PermGroup& g, Rng& rng) {
  const int count = static_cast<int>(rng.next_below(3));
  std::vector<int> gens;
  for (int i = 0; i < count; ++i) gens.push_back(static_cast<int>(rng.next_below(g.size())));
  // close the generators so the result really is a subgroup
  std::set<int> H{g.identity};
  std::vector<int> frontier{g.identity};
  while (!frontier.empty() && !gens.empty()) {
    std::vector<int> next;
    for (int h : frontier)
      for (int gen : gens)
        for (int q : {g.compose(h, gen), g.compose(gen, h), g.inverse(h)})
          if (H.insert(q).second) next.push_back(q);
    frontier = std::move(next);
  }
  return std::vector<int>(H.begin(), H.end());
}

ActionSpec gset_action(const ComponentModel& m, const GSet& s, const std::string& tag) {
  ActionSpec spec;
  auto elem = [&](int k, int obj) {
    return tag + "s" + padded(k) + "@" + m.object_id(obj);
  };
  for (int i = 0; i < m.objects; ++i) {
    auto& fib = spec.fibers[m.object_id(i)];
    for (int k = 0; k < s.size; ++k) fib.push_back(elem(k, i));
  }
  for (int g = 0; g < m.group.size(); ++g)
    for (int i = 0; i < m.objects; ++i)
      for (int j = 0; j < m.objects; ++j) {
        auto& tr = spec.transport[m.morphism_id(g, i, j)];
        for (int k = 0; k < s.size; ++k) tr[elem(k, i)] = elem(s.images[g][k], j);
      }
  return spec;
}

Model group_model(const PermGroup& g) {
  Model m;
  m.components.push_back({g, 1, ""});
  m.groupoid = validate_groupoid(m.components[0].spec());
  return m;
}

Model random_model(Rng& rng, int max_group_order, int max_objects_per_component,
                   int max_components) {
  std::vector<PermGroup> catalog;
  for (const PermGroup& g :
       {trivial_group(), cyclic_group(2), cyclic_group(3), cyclic_group(4), cyclic_group(6),
        klein_four_group(), symmetric_group(3), dihedral_group(4)})
    if (g.size() <= max_group_order) catalog.push_back(g);

  Model m;
  const int components = 1 + static_cast<int>(rng.next_below(max_components));
  GroupoidSpec merged;
  for (int c = 0; c < components; ++c) {
    ComponentModel comp;
    comp.group = catalog[rng.next_below(catalog.size())];
    comp.objects = 1 + static_cast<int>(rng.next_below(max_objects_per_component));
    comp.prefix = components > 1 ? "c" + std::to_string(c) + "." : "";
    m.components.push_back(comp);
    GroupoidSpec part = comp.spec();
    merged.objects.insert(merged.objects.end(), part.objects.begin(), part.objects.end());
    merged.morphisms.insert(merged.morphisms.end(), part.morphisms.begin(), part.morphisms.end());
    merged.compose.insert(merged.compose.end(), part.compose.begin(), part.compose.end());
  }
  m.groupoid = validate_groupoid(merged);
  return m;
}

ActionPtr random_action(const Model& m, Rng& rng, int max_elements) {
  ActionSpec merged;
  int budget = max_elements;
  int tag_counter = 0;
  for (const auto& comp : m.components) {
    // one to two coset pieces per component, within budget
    const int pieces = 1 + static_cast<int>(rng.next_below(2));
    for (int p = 0; p < pieces; ++p) {
      GSet s = coset_gset(comp.group, random_subgroup(comp.group, rng));
      if (s.size * comp.objects > budget) s = point_gset(comp.group);
      if (s.size * comp.objects > budget) continue;
      budget -= s.size * comp.objects;
      const std::string tag = "p" + std::to_string(tag_counter++) + ".";
      ActionSpec part = gset_action(comp, s, tag);
      for (auto& [obj, elems] : part.fibers) {
        auto& fib = merged.fibers[obj];
        fib.insert(fib.end(), elems.begin(), elems.end());
      }
      for (auto& [mor, map] : part.transport) merged.transport[mor].insert(map.begin(), map.end());
    }
  }
  // objects with no piece still need (possibly empty) fibers; transports of
  // morphisms with empty sources may be omitted entirely
  return FiniteAction::validate(m.groupoid, merged);
}

InvariantMeasure random_dyadic_measure(const Model& m, Rng& rng) {
  std::vector<double> weights(m.groupoid->component_count());
  for (auto& w : weights) w = rng.next_dyadic();
  return InvariantMeasure::from_weights(m.groupoid, std::move(weights));
}

Valuation random_dyadic_valuation(const ActionPtr& X, Rng& rng) {
  std::vector<double> weights(X->orbit_count());
  for (auto& w : weights) w = rng.next_dyadic();
  return Valuation::from_weights(X, std::move(weights));
}

ChiSection random_dyadic_section(const ActionPtr& X, Rng& rng) {
  std::vector<double> values(X->orbit_count());
  for (auto& v : values) v = rng.next_dyadic();
  return ChiSection::from_values(X, std::move(values));
}

OrbitFunction random_orbit_function(const ActionPtr& X, Rng& rng, bool positive) {
  std::vector<double> values(X->orbit_count());
  for (auto& v : values) v = positive ? rng.next_dyadic() : rng.uniform(-2.0, 2.0);
  return OrbitFunction::from_values(X, std::move(values));
}

OperatorMatrix random_algebra_element(const ActionPtr& X, Rng& rng) {
  OperatorMatrix a = OperatorMatrix::zero(X);
  for (const auto& basis : commutant_basis(X))
    a = a.add(basis.scale(cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))));
  return a;
}

EquivariantMap fold_map(const ActionPtr& X, int copies) {
  std::vector<ActionPtr> parts(copies, X);
  std::vector<std::string> tags;
  for (int i = 0; i < copies; ++i) tags.push_back("f" + std::to_string(i));
  DisjointUnion u = disjoint_union(parts, tags);
  std::vector<int> map(u.action->size());
  for (int e = 0; e < u.action->size(); ++e) {
    const std::string& id = u.action->element_id(e);
    map[e] = *X->element_index(id.substr(id.find(':') + 1));
  }
  return EquivariantMap::from_indices(u.action, X, std::move(map));
}

ActionPtr constant_action(GroupoidPtr groupoid, int k) {
  ActionSpec spec;
  const auto& g = *groupoid;
  auto elem = [&](int i, int obj) {
    return "t" + std::to_string(i) + "@" + g.object_id(obj);
  };
  for (int o = 0; o < g.object_count(); ++o) {
    auto& fib = spec.fibers[g.object_id(o)];
    for (int i = 0; i < k; ++i) fib.push_back(elem(i, o));
  }
  for (int m = 0; m < g.morphism_count(); ++m) {
    auto& tr = spec.transport[g.morphism_id(m)];
    for (int i = 0; i < k; ++i) tr[elem(i, g.src(m))] = elem(i, g.dst(m));
  }
  return FiniteAction::validate(std::move(groupoid), spec);
}

EquivariantMap fattening_projection(const ActionPtr& X, int k) {
  ActionPtr T = constant_action(X->groupoid(), k);
  return product(X, T).proj1;
}

}  // namespace toposm::models
