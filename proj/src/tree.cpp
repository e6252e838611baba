#include "tropline/tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tropline/errors.hpp"

namespace tropline {

namespace {

bool laminar(LeafSet a, LeafSet b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; }

void validate_clade_family(int n, std::span<const LeafSet> clades) {
  const LeafSet full = all_leaves(n);
  bool has_root = false;
  for (std::size_t x = 0; x < clades.size(); ++x) {
    const LeafSet c = clades[x];
    if ((c & ~full) != 0) throw InvalidTree("clade contains a leaf outside 1.." + std::to_string(n));
    if (leaf_count_of(c) < 2) throw InvalidTree("internal clade must contain at least two leaves");
    if (c == full) has_root = true;
    for (std::size_t y = x + 1; y < clades.size(); ++y) {
      if (clades[y] == c) throw InvalidTree("duplicate clade");
      if (!laminar(c, clades[y])) throw InvalidTree("clades are not nested or disjoint");
    }
  }
  if (!has_root) throw InvalidTree("clade family must contain the full leaf set");
}

void check_leaf_count(int n) {
  if (n < 2 || n > kMaxLeaves) {
    throw InvalidTree("leaf count must be in [2, " + std::to_string(kMaxLeaves) + "], got " +
                      std::to_string(n));
  }
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t size) : parent(size) { std::iota(parent.begin(), parent.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

}  // namespace

std::vector<int> leaves_of(LeafSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(leaf_count_of(s)));
  while (s != 0) {
    out.push_back(min_leaf(s));
    s &= s - 1;
  }
  return out;
}

// ---- Topology -------------------------------------------------------------

Topology::Topology(int n, std::vector<LeafSet> clades) : n_(n), clades_(std::move(clades)) {
  check_leaf_count(n);
  validate_clade_family(n, clades_);
  std::sort(clades_.begin(), clades_.end());
}

bool Topology::contains(LeafSet clade) const {
  return std::binary_search(clades_.begin(), clades_.end(), clade);
}

// ---- EquidistantTree --------------------------------------------------------

EquidistantTree EquidistantTree::from_clades(int n, std::vector<Clade> clades) {
  check_leaf_count(n);
  {
    std::vector<LeafSet> sets;
    sets.reserve(clades.size());
    for (const auto& c : clades) sets.push_back(c.leaves);
    validate_clade_family(n, sets);
  }
  // Canonical order; children always precede parents once heights are valid,
  // and a strict superset always sorts after its subsets when heights tie
  // (the tie is rejected below).
  std::sort(clades.begin(), clades.end(), [](const Clade& a, const Clade& b) {
    if (a.height != b.height) return a.height < b.height;
    if (leaf_count_of(a.leaves) != leaf_count_of(b.leaves)) {
      return leaf_count_of(a.leaves) < leaf_count_of(b.leaves);
    }
    return min_leaf(a.leaves) < min_leaf(b.leaves);
  });

  EquidistantTree t;
  t.n_ = n;
  const std::size_t m = clades.size();
  const std::size_t total = static_cast<std::size_t>(n) + m;
  t.clade_.resize(total);
  t.height_.assign(total, ExactScalar(0));
  t.parent_.assign(total, static_cast<std::uint32_t>(total - 1));
  t.children_.assign(total, {});
  for (int i = 1; i <= n; ++i) t.clade_[static_cast<std::size_t>(i - 1)] = leaf_bit(i);
  for (std::size_t x = 0; x < m; ++x) {
    t.clade_[static_cast<std::size_t>(n) + x] = clades[x].leaves;
    t.height_[static_cast<std::size_t>(n) + x] = clades[x].height;
  }
  if (t.clade_[total - 1] != all_leaves(n)) {
    throw InvalidTree("root must be strictly higher than every other internal vertex");
  }

  // Parent = smallest strict superset among internal clades.
  for (std::size_t v = 0; v + 1 < total; ++v) {
    const LeafSet c = t.clade_[v];
    std::size_t best = total - 1;
    int best_size = n + 1;
    for (std::size_t x = static_cast<std::size_t>(n); x < total; ++x) {
      if (x == v) continue;
      const LeafSet d = t.clade_[x];
      if ((d & c) == c && d != c && leaf_count_of(d) < best_size) {
        best = x;
        best_size = leaf_count_of(d);
      }
    }
    t.parent_[v] = static_cast<std::uint32_t>(best);
    t.children_[best].push_back(vertex(v));
    if (v >= static_cast<std::size_t>(n) && !(t.height_[best] > t.height_[v])) {
      throw InvalidTree("internal vertex height must exceed its internal children");
    }
  }
  for (auto& kids : t.children_) {
    std::sort(kids.begin(), kids.end(), [&t](VertexId a, VertexId b) {
      return min_leaf(t.clade_[index(a)]) < min_leaf(t.clade_[index(b)]);
    });
  }

  // LCA table: leaves from different children of x meet at x.
  const auto nn = static_cast<std::size_t>(n);
  t.lca_.assign(nn * nn, 0);
  for (std::size_t x = nn; x < total; ++x) {
    const auto& kids = t.children_[x];
    for (std::size_t a = 0; a < kids.size(); ++a) {
      for (std::size_t b = a + 1; b < kids.size(); ++b) {
        for (int i : leaves_of(t.clade_[index(kids[a])])) {
          for (int j : leaves_of(t.clade_[index(kids[b])])) {
            const auto ii = static_cast<std::size_t>(i - 1);
            const auto jj = static_cast<std::size_t>(j - 1);
            t.lca_[ii * nn + jj] = static_cast<std::uint32_t>(x);
            t.lca_[jj * nn + ii] = static_cast<std::uint32_t>(x);
          }
        }
      }
    }
  }
  return t;
}

VertexId EquidistantTree::leaf(int label) const {
  if (label < 1 || label > n_) throw std::out_of_range("unknown leaf label " + std::to_string(label));
  return vertex(static_cast<std::size_t>(label - 1));
}

std::optional<VertexId> EquidistantTree::parent(VertexId v) const {
  if (v == root()) return std::nullopt;
  return vertex(parent_[index(v)]);
}

std::vector<VertexId> EquidistantTree::internal_vertices() const {
  std::vector<VertexId> out;
  out.reserve(internal_count());
  for (std::size_t v = static_cast<std::size_t>(n_); v < parent_.size(); ++v) out.push_back(vertex(v));
  return out;
}

VertexId EquidistantTree::lca(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) {
    throw std::out_of_range("unknown leaf label in lca(" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (i == j) throw std::invalid_argument("lca needs two distinct leaves");
  const auto nn = static_cast<std::size_t>(n_);
  return vertex(lca_[static_cast<std::size_t>(i - 1) * nn + static_cast<std::size_t>(j - 1)]);
}

VertexId lca(const EquidistantTree& t, int i, int j) { return t.lca(i, j); }

// ---- conversions -----------------------------------------------------------

UltraVector tree_to_ultrametric(const EquidistantTree& t) {
  const int n = t.leaf_count();
  std::vector<ExactScalar> entries;
  entries.reserve(pair_count(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const ExactScalar& h = t.height(t.lca(i, j));
      entries.push_back(h + h);
    }
  }
  return UltraVector(n, std::move(entries));
}

namespace {

// Single linkage on the sorted distinct values; returns std::nullopt when the
// clustering does not reproduce u.
std::optional<EquidistantTree> cluster(const UltraVector& u) {
  const int n = u.n();
  if (n > kMaxLeaves) throw InvalidTree("too many leaves for a tree: " + std::to_string(n));
  const std::size_t m = u.size();
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&u](std::uint32_t a, std::uint32_t b) {
    const auto c = u[a] <=> u[b];
    return c != 0 ? c < 0 : a < b;
  });

  std::vector<std::pair<int, int>> pair_of(m);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) pair_of[pair_position(i, j, n)] = {i, j};
  }

  UnionFind uf(static_cast<std::size_t>(n));
  std::vector<LeafSet> comp(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) comp[static_cast<std::size_t>(i - 1)] = leaf_bit(i);

  std::vector<EquidistantTree::Clade> clades;
  std::vector<std::uint32_t> touched;
  std::size_t pos = 0;
  while (pos < m) {
    std::size_t end = pos;
    const ExactScalar& level = u[order[pos]];
    while (end < m && u[order[end]] == level) ++end;
    touched.clear();
    for (std::size_t q = pos; q < end; ++q) {
      const auto [i, j] = pair_of[order[q]];
      const std::uint32_t a = uf.find(static_cast<std::uint32_t>(i - 1));
      const std::uint32_t b = uf.find(static_cast<std::uint32_t>(j - 1));
      if (a == b) continue;
      touched.push_back(a);
      touched.push_back(b);
      uf.parent[a] = b;
    }
    if (!touched.empty()) {
      ExactScalar height = level / ExactScalar(2);
      // Old roots grouped under their new root.
      std::vector<std::pair<std::uint32_t, LeafSet>> merged;
      for (std::uint32_t r : touched) merged.emplace_back(uf.find(r), comp[r]);
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      std::size_t g = 0;
      while (g < merged.size()) {
        LeafSet leaves = 0;
        const std::uint32_t root = merged[g].first;
        while (g < merged.size() && merged[g].first == root) leaves |= merged[g++].second;
        comp[root] = leaves;
        clades.push_back({leaves, height});
      }
    }
    pos = end;
  }

  EquidistantTree t = EquidistantTree::from_clades(n, std::move(clades));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const ExactScalar& h = t.height(t.lca(i, j));
      if (h + h != u[pair_position(i, j, n)]) return std::nullopt;
    }
  }
  return t;
}

}  // namespace

EquidistantTree ultrametric_to_tree(const UltraVector& u) {
  auto t = cluster(u);
  if (!t) throw NotUltrametric("vector violates the three-point condition");
  return std::move(*t);
}

bool is_ultrametric_fast(const UltraVector& u) { return cluster(u).has_value(); }

// ---- topology --------------------------------------------------------------

Topology topology_of(const EquidistantTree& t) {
  std::vector<LeafSet> clades;
  clades.reserve(t.internal_count());
  for (VertexId v : t.internal_vertices()) clades.push_back(t.clade(v));
  return Topology(t.leaf_count(), std::move(clades));
}

bool topology_equal_splits(const Topology& a, const Topology& b) {
  if (a.n() != b.n()) throw DimensionMismatch("topologies on different leaf counts");
  return a == b;
}

namespace {

// Bitmask over {ij, ik, jk} of the entries achieving the max.
unsigned argmax3(const ExactScalar& a, const ExactScalar& b, const ExactScalar& c) {
  const ExactScalar& top = a < b ? (b < c ? c : b) : (a < c ? c : a);
  return (a == top ? 1U : 0U) | (b == top ? 2U : 0U) | (c == top ? 4U : 0U);
}

}  // namespace

bool topology_equal_argmax(const UltraVector& u, const UltraVector& v) {
  if (u.n() != v.n()) throw DimensionMismatch("ultrametrics on different leaf counts");
  const int n = u.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const std::size_t ij = pair_position(i, j, n);
      for (int k = j + 1; k <= n; ++k) {
        const std::size_t ik = pair_position(i, k, n);
        const std::size_t jk = pair_position(j, k, n);
        if (argmax3(u[ij], u[ik], u[jk]) != argmax3(v[ij], v[ik], v[jk])) return false;
      }
    }
  }
  return true;
}

EquidistantTree tree_from_topology(const Topology& t, std::span<const ExactScalar> heights) {
  if (heights.size() != t.clades().size()) {
    throw DimensionMismatch("need one height per clade");
  }
  std::vector<EquidistantTree::Clade> clades;
  clades.reserve(heights.size());
  for (std::size_t k = 0; k < heights.size(); ++k) clades.push_back({t.clades()[k], heights[k]});
  return EquidistantTree::from_clades(t.n(), std::move(clades));
}

bool is_generic(const EquidistantTree& t) {
  return t.internal_count() == static_cast<std::size_t>(t.leaf_count() - 1);
}

bool is_generic_pair(const EquidistantTree& t1, const EquidistantTree& t2) {
  if (t1.leaf_count() != t2.leaf_count()) throw DimensionMismatch("trees on different leaf counts");
  if (!is_generic(t1) || !is_generic(t2)) return false;
  std::vector<ExactScalar> diffs;
  diffs.reserve(t1.internal_count() * t2.internal_count());
  for (VertexId x : t1.internal_vertices()) {
    for (VertexId y : t2.internal_vertices()) diffs.push_back(t1.height(x) - t2.height(y));
  }
  std::sort(diffs.begin(), diffs.end());
  return std::adjacent_find(diffs.begin(), diffs.end()) == diffs.end();
}

TreeShape shape_of(const EquidistantTree& t) {
  TreeShape s;
  for (VertexId v : t.internal_vertices()) {
    const int k = static_cast<int>(t.children(v).size());
    s.max_children = std::max(s.max_children, k);
    if (k >= 3) ++s.multifurcations;
  }
  return s;
}

}  // namespace tropline
