#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tropline/tree.hpp"

namespace tropline {

/// Largest leaf count accepted by the exhaustive NNI distance.
inline constexpr int kMaxExactNniLeaves = 7;

/// All binary topologies one NNI away. For the internal edge above clade
/// B ∪ C with sibling clade D, the two alternatives are (B ∪ D) and (C ∪ D).
/// Sorted, without duplicates. Throws std::invalid_argument on non-binary
/// input.
std::vector<Topology> nni_neighbors(const Topology& t);

/// True iff b is exactly one NNI move away from a.
bool nni_adjacent(const Topology& a, const Topology& b);

/// NNI graph on all (2n-3)!! rooted binary topologies, built by enumeration.
class NniGraph {
 public:
  explicit NniGraph(int n);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] const std::vector<Topology>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& adjacency() const { return adjacency_; }
  [[nodiscard]] std::size_t index_of(const Topology& t) const;
  [[nodiscard]] bool connected() const;
  /// Breadth-first shortest path length.
  [[nodiscard]] int distance(const Topology& a, const Topology& b) const;

 private:
  int n_;
  std::vector<Topology> vertices_;  // sorted
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Minimal number of NNI moves, by breadth-first search over the whole NNI
/// graph. Only for n <= kMaxExactNniLeaves; throws std::invalid_argument
/// otherwise. The graph for each n is built once and shared.
int nni_distance_exact(const Topology& a, const Topology& b);

/// Bidirectional breadth-first search limited to `limit` moves. Exact for any
/// n when the true distance is at most `limit`; std::nullopt otherwise.
std::optional<int> nni_distance_bounded(const Topology& a, const Topology& b, int limit);

}  // namespace tropline
