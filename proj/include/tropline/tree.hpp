#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tropline/exact.hpp"
#include "tropline/metric.hpp"

namespace tropline {

/// Trees and topologies store clades as bitmasks over the leaf labels.
inline constexpr int kMaxLeaves = 64;

/// Bit (i - 1) set iff leaf i belongs to the set.
using LeafSet = std::uint64_t;

constexpr LeafSet leaf_bit(int label) { return LeafSet{1} << (label - 1); }
constexpr LeafSet all_leaves(int n) { return n >= 64 ? ~LeafSet{0} : (LeafSet{1} << n) - 1; }
constexpr int leaf_count_of(LeafSet s) { return std::popcount(s); }
/// Smallest label in a non-empty set.
constexpr int min_leaf(LeafSet s) { return std::countr_zero(s) + 1; }
std::vector<int> leaves_of(LeafSet s);

enum class VertexId : std::uint32_t {};
constexpr std::size_t index(VertexId v) { return static_cast<std::size_t>(v); }
constexpr VertexId vertex(std::size_t i) { return static_cast<VertexId>(i); }

/// Leaf-labelled tree topology given by its clade family: one leaf set per
/// internal vertex, the full leaf set included. Singletons are implicit.
class Topology {
 public:
  Topology() = default;
  /// Validates laminarity, presence of the full set, and clade sizes >= 2.
  Topology(int n, std::vector<LeafSet> clades);

  [[nodiscard]] int n() const { return n_; }
  /// Clades in ascending numeric order.
  [[nodiscard]] std::span<const LeafSet> clades() const { return clades_; }
  [[nodiscard]] bool is_binary() const { return clades_.size() == static_cast<std::size_t>(n_ - 1); }
  [[nodiscard]] bool contains(LeafSet clade) const;

  friend bool operator==(const Topology&, const Topology&) = default;
  friend auto operator<=>(const Topology&, const Topology&) = default;

 private:
  int n_ = 0;
  std::vector<LeafSet> clades_;
};

/// Rooted tree on leaves 1..n with exact heights on internal vertices.
///
/// Vertex ids 0..n-1 are the leaves (id = label - 1). Internal vertices follow
/// in canonical order: ascending height, ties broken by smallest leaf. The root
/// is therefore the last vertex. Leaves sit at height 0; internal heights are
/// arbitrary rationals as long as every internal parent is strictly higher
/// than each internal child, so trees remain meaningful modulo R·1 (a
/// projective shift only moves pendant edge lengths).
class EquidistantTree {
 public:
  struct Clade {
    LeafSet leaves;
    ExactScalar height;
  };

  EquidistantTree() = default;
  /// Builds a tree from one (leaf set, height) per internal vertex.
  static EquidistantTree from_clades(int n, std::vector<Clade> clades);

  [[nodiscard]] int leaf_count() const { return n_; }
  [[nodiscard]] std::size_t vertex_count() const { return parent_.size(); }
  [[nodiscard]] std::size_t internal_count() const { return parent_.size() - static_cast<std::size_t>(n_); }
  [[nodiscard]] VertexId root() const { return vertex(parent_.size() - 1); }
  [[nodiscard]] VertexId leaf(int label) const;
  [[nodiscard]] bool is_leaf(VertexId v) const { return index(v) < static_cast<std::size_t>(n_); }
  [[nodiscard]] std::span<const VertexId> children(VertexId v) const { return children_[index(v)]; }
  [[nodiscard]] std::optional<VertexId> parent(VertexId v) const;
  [[nodiscard]] const ExactScalar& height(VertexId v) const { return height_[index(v)]; }
  [[nodiscard]] LeafSet clade(VertexId v) const { return clade_[index(v)]; }
  /// Internal vertex ids in canonical order (root last).
  [[nodiscard]] std::vector<VertexId> internal_vertices() const;

  /// Least common ancestor of two distinct leaves.
  [[nodiscard]] VertexId lca(int i, int j) const;

  friend bool operator==(const EquidistantTree&, const EquidistantTree&) = default;

 private:
  int n_ = 0;
  std::vector<LeafSet> clade_;
  std::vector<ExactScalar> height_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<std::uint32_t> lca_;  // n x n, diagonal unused
};

VertexId lca(const EquidistantTree& t, int i, int j);

/// Entry {i, j} = 2 · height(lca(i, j)).
UltraVector tree_to_ultrametric(const EquidistantTree& t);

/// Exact single-linkage clustering. Equal merge heights produce
/// multifurcations. Throws NotUltrametric when the round trip through the
/// tree does not reproduce u.
EquidistantTree ultrametric_to_tree(const UltraVector& u);

/// Ultrametric test in O(n^2 log n) via the clustering round trip. Agrees with
/// three_point_check on every input.
bool is_ultrametric_fast(const UltraVector& u);

Topology topology_of(const EquidistantTree& t);
bool topology_equal_splits(const Topology& a, const Topology& b);
/// Compares argmax over {ij, ik, jk} for every triple. Inputs must be
/// ultrametrics on the same leaf set.
bool topology_equal_argmax(const UltraVector& u, const UltraVector& v);

/// Attaches heights to a topology; heights[k] belongs to t.clades()[k].
EquidistantTree tree_from_topology(const Topology& t, std::span<const ExactScalar> heights);

/// Every internal vertex has exactly two children.
bool is_generic(const EquidistantTree& t);

/// Both trees generic and the (n-1)^2 height differences h1(x1) - h2(x2)
/// pairwise distinct.
bool is_generic_pair(const EquidistantTree& t1, const EquidistantTree& t2);

/// Largest child count and the number of vertices with three or more children.
struct TreeShape {
  int max_children = 0;
  int multifurcations = 0;
};
TreeShape shape_of(const EquidistantTree& t);

}  // namespace tropline
