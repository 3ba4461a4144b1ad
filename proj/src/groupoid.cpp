#include "toposm/groupoid.hpp"

#include <algorithm>
#include <set>

#include "toposm/error.hpp"

namespace toposm {

namespace {

// union-find over object indices
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::optional<int> FiniteGroupoid::object_index(const std::string& id) const {
  auto it = object_index_.find(id);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FiniteGroupoid::morphism_index(const std::string& id) const {
  auto it = morphism_index_.find(id);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

bool FiniteGroupoid::operator==(const FiniteGroupoid& other) const {
  return objects_ == other.objects_ && morphism_ids_ == other.morphism_ids_ &&
         src_ == other.src_ && dst_ == other.dst_ && table_ == other.table_;
}

FiniteGroupoid FiniteGroupoid::validate(const GroupoidSpec& spec) {
  FiniteGroupoid g;

  g.objects_ = spec.objects;
  std::sort(g.objects_.begin(), g.objects_.end());
  for (std::size_t i = 0; i < g.objects_.size(); ++i) {
    if (g.objects_[i].empty())
      fail(ErrorKind::ValidationError, "empty object id");
    if (i > 0 && g.objects_[i] == g.objects_[i - 1])
      fail(ErrorKind::ValidationError, "duplicate object id '" + g.objects_[i] + "'");
    g.object_index_[g.objects_[i]] = static_cast<int>(i);
  }

  std::vector<MorphismSpec> morphs = spec.morphisms;
  std::sort(morphs.begin(), morphs.end(),
            [](const MorphismSpec& a, const MorphismSpec& b) { return a.id < b.id; });
  const int m = static_cast<int>(morphs.size());
  g.morphism_ids_.resize(morphs.size());
  g.src_.resize(morphs.size());
  g.dst_.resize(morphs.size());
  for (int i = 0; i < m; ++i) {
    const auto& ms = morphs[i];
    if (ms.id.empty()) fail(ErrorKind::ValidationError, "empty morphism id");
    if (i > 0 && ms.id == morphs[i - 1].id)
      fail(ErrorKind::ValidationError, "duplicate morphism id '" + ms.id + "'");
    auto s = g.object_index(ms.src);
    auto d = g.object_index(ms.dst);
    if (!s) fail(ErrorKind::DanglingEndpoint, "morphism '" + ms.id + "' has unknown src '" + ms.src + "'");
    if (!d) fail(ErrorKind::DanglingEndpoint, "morphism '" + ms.id + "' has unknown dst '" + ms.dst + "'");
    g.morphism_ids_[i] = ms.id;
    g.src_[i] = *s;
    g.dst_[i] = *d;
    g.morphism_index_[ms.id] = i;
  }

  // composition table
  g.table_.assign(static_cast<std::size_t>(m) * m, -1);
  for (std::size_t row = 0; row < spec.compose.size(); ++row) {
    const auto& entry = spec.compose[row];
    auto gi = g.morphism_index(entry[0]);
    auto hi = g.morphism_index(entry[1]);
    auto ki = g.morphism_index(entry[2]);
    if (!gi || !hi || !ki)
      fail(ErrorKind::BadComposition,
           "compose row " + std::to_string(row) + " references unknown morphism");
    if (g.dst_[*hi] != g.src_[*gi])
      fail(ErrorKind::BadComposition,
           "compose entry '" + entry[0] + "'∘'" + entry[1] + "' is not composable");
    if (g.src_[*ki] != g.src_[*hi] || g.dst_[*ki] != g.dst_[*gi])
      fail(ErrorKind::BadComposition,
           "compose entry '" + entry[0] + "'∘'" + entry[1] + "' = '" + entry[2] +
               "' has wrong endpoints");
    int& cell = g.table_[static_cast<std::size_t>(*gi) * m + *hi];
    if (cell != -1 && cell != *ki)
      fail(ErrorKind::BadComposition,
           "conflicting compose entries for '" + entry[0] + "'∘'" + entry[1] + "'");
    cell = *ki;
  }
  // totality on composable pairs
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (g.dst_[b] == g.src_[a] && g.compose(a, b) == -1)
        fail(ErrorKind::BadComposition, "missing compose entry for '" + g.morphism_ids_[a] +
                                            "'∘'" + g.morphism_ids_[b] + "'");

  // identities: e with e∘h = h and k∘e = k for everything composable
  const int n = g.object_count();
  g.identity_.assign(n, -1);
  for (int e = 0; e < m; ++e) {
    if (g.src_[e] != g.dst_[e]) continue;
    bool neutral = true;
    for (int h = 0; h < m && neutral; ++h) {
      if (g.dst_[h] == g.src_[e] && g.compose(e, h) != h) neutral = false;
      if (g.src_[h] == g.dst_[e] && g.compose(h, e) != h) neutral = false;
    }
    if (neutral) g.identity_[g.src_[e]] = e;
  }
  for (int o = 0; o < n; ++o)
    if (g.identity_[o] == -1)
      fail(ErrorKind::MissingIdentity, "object '" + g.objects_[o] + "' has no identity morphism");

  // two-sided inverses
  g.inverse_.assign(m, -1);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (g.src_[b] == g.dst_[a] && g.dst_[b] == g.src_[a] &&
          g.compose(a, b) == g.identity_[g.dst_[a]] &&
          g.compose(b, a) == g.identity_[g.src_[a]]) {
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] == -1)
      fail(ErrorKind::MissingInverse, "morphism '" + g.morphism_ids_[a] + "' has no two-sided inverse");
  }

  // associativity, exhaustive
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (g.dst_[b] != g.src_[a]) continue;
      for (int c = 0; c < m; ++c) {
        if (g.dst_[c] != g.src_[b]) continue;
        if (g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c)))
          fail(ErrorKind::NonAssociative,
               "('" + g.morphism_ids_[a] + "'∘'" + g.morphism_ids_[b] + "')∘'" +
                   g.morphism_ids_[c] + "' differs from the right-bracketing");
      }
    }

  // caches
  g.from_.assign(n, {});
  g.endo_.assign(n, {});
  for (int a = 0; a < m; ++a) {
    g.from_[g.src_[a]].push_back(a);
    if (g.src_[a] == g.dst_[a]) g.endo_[g.src_[a]].push_back(a);
  }

  // components by reachability (symmetric: inverses exist)
  UnionFind uf(n);
  for (int a = 0; a < m; ++a) uf.unite(g.src_[a], g.dst_[a]);
  std::vector<std::vector<int>> buckets(n);
  for (int o = 0; o < n; ++o) buckets[uf.find(o)].push_back(o);
  for (int o = 0; o < n; ++o)
    if (!buckets[o].empty()) g.components_.push_back(buckets[o]);
  // objects are sorted, so ordering components by first member is the
  // lexicographic-least-representative order
  std::sort(g.components_.begin(), g.components_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  g.component_of_.assign(n, -1);
  for (int c = 0; c < static_cast<int>(g.components_.size()); ++c)
    for (int o : g.components_[c]) g.component_of_[o] = c;

  return g;
}

GroupoidPtr validate_groupoid(const GroupoidSpec& spec) {
  return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::validate(spec));
}

}  // namespace toposm
