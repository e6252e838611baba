#include "tropline/nni.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "tropline/errors.hpp"

namespace tropline {

namespace {

void require_binary(const Topology& t) {
  if (!t.is_binary()) throw std::invalid_argument("NNI moves are defined on binary topologies only");
}

}  // namespace

std::vector<Topology> nni_neighbors(const Topology& t) {
  require_binary(t);
  const auto clades = t.clades();
  const LeafSet full = all_leaves(t.n());
  std::vector<Topology> out;
  out.reserve(2 * clades.size());
  for (std::size_t x = 0; x < clades.size(); ++x) {
    const LeafSet c = clades[x];
    if (c == full) continue;
    LeafSet parent = full;
    LeafSet child = 0;
    for (const LeafSet d : clades) {
      if (d == c) continue;
      if ((d & c) == c && leaf_count_of(d) < leaf_count_of(parent)) parent = d;
      if ((d & c) == d && leaf_count_of(d) > leaf_count_of(child)) child = d;
    }
    const LeafSet a = child != 0 ? child : (c & (~c + 1));
    const LeafSet b = c & ~a;
    const LeafSet sibling = parent & ~c;
    for (const LeafSet moved : {a | sibling, b | sibling}) {
      std::vector<LeafSet> next(clades.begin(), clades.end());
      next[x] = moved;
      out.emplace_back(t.n(), std::move(next));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool nni_adjacent(const Topology& a, const Topology& b) {
  if (a.n() != b.n()) throw DimensionMismatch("topologies on different leaf counts");
  const auto nbrs = nni_neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

NniGraph::NniGraph(int n) : n_(n) {
  if (n < 2 || n > kMaxExactNniLeaves) {
    throw std::invalid_argument("NNI graph enumeration supports 2 <= n <= " +
                                std::to_string(kMaxExactNniLeaves) + ", got " + std::to_string(n));
  }
  // Caterpillar ((...((n-1,n),n-2)...),1) as the BFS seed.
  std::vector<LeafSet> seed;
  for (int k = n - 1; k >= 1; --k) seed.push_back(all_leaves(n) & ~all_leaves(k - 1));
  std::map<Topology, std::size_t> seen;
  std::vector<Topology> order;
  std::deque<std::size_t> queue;
  order.emplace_back(n, std::move(seed));
  seen.emplace(order.front(), 0);
  queue.push_back(0);
  std::vector<std::vector<std::size_t>> adjacency;
  adjacency.emplace_back();
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (auto& nb : nni_neighbors(order[cur])) {
      auto [it, inserted] = seen.emplace(nb, order.size());
      if (inserted) {
        order.push_back(std::move(nb));
        adjacency.emplace_back();
        queue.push_back(it->second);
      }
      adjacency[cur].push_back(it->second);
    }
  }
  // Re-index in sorted order.
  vertices_.reserve(order.size());
  std::vector<std::size_t> remap(order.size());
  std::size_t pos = 0;
  for (auto& [topo, old] : seen) {
    remap[old] = pos++;
    vertices_.push_back(topo);
  }
  adjacency_.assign(order.size(), {});
  for (std::size_t old = 0; old < order.size(); ++old) {
    auto& row = adjacency_[remap[old]];
    for (std::size_t nb : adjacency[old]) row.push_back(remap[nb]);
    std::sort(row.begin(), row.end());
  }
}

std::size_t NniGraph::index_of(const Topology& t) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), t);
  if (it == vertices_.end() || *it != t) throw std::invalid_argument("topology is not a vertex of this NNI graph");
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool NniGraph::connected() const {
  if (vertices_.empty()) return true;
  std::vector<bool> seen(vertices_.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t nb : adjacency_[cur]) {
      if (!seen[nb]) {
        seen[nb] = true;
        ++count;
        queue.push_back(nb);
      }
    }
  }
  return count == vertices_.size();
}

int NniGraph::distance(const Topology& a, const Topology& b) const {
  const std::size_t src = index_of(a);
  const std::size_t dst = index_of(b);
  std::vector<int> dist(vertices_.size(), -1);
  std::deque<std::size_t> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    if (cur == dst) return dist[cur];
    for (std::size_t nb : adjacency_[cur]) {
      if (dist[nb] < 0) {
        dist[nb] = dist[cur] + 1;
        queue.push_back(nb);
      }
    }
  }
  throw std::logic_error("NNI graph is disconnected");
}

int nni_distance_exact(const Topology& a, const Topology& b) {
  if (a.n() != b.n()) throw DimensionMismatch("topologies on different leaf counts");
  require_binary(a);
  require_binary(b);
  const int n = a.n();
  if (n > kMaxExactNniLeaves) {
    throw std::invalid_argument("exact NNI distance is limited to n <= " + std::to_string(kMaxExactNniLeaves) +
                                ", got n=" + std::to_string(n));
  }
  static std::array<std::once_flag, kMaxExactNniLeaves + 1> flags;
  static std::array<std::unique_ptr<NniGraph>, kMaxExactNniLeaves + 1> graphs;
  const auto slot = static_cast<std::size_t>(n);
  std::call_once(flags[slot], [n, slot] { graphs[slot] = std::make_unique<NniGraph>(n); });
  return graphs[slot]->distance(a, b);
}

std::optional<int> nni_distance_bounded(const Topology& a, const Topology& b, int limit) {
  if (a.n() != b.n()) throw DimensionMismatch("topologies on different leaf counts");
  require_binary(a);
  require_binary(b);
  if (a == b) return 0;
  std::map<Topology, int> seen_a{{a, 0}};
  std::map<Topology, int> seen_b{{b, 0}};
  std::vector<Topology> front_a{a};
  std::vector<Topology> front_b{b};
  int depth_a = 0;
  int depth_b = 0;
  while (depth_a + depth_b < limit && !front_a.empty() && !front_b.empty()) {
    const bool grow_a = front_a.size() <= front_b.size();
    auto& front = grow_a ? front_a : front_b;
    auto& seen = grow_a ? seen_a : seen_b;
    const auto& other = grow_a ? seen_b : seen_a;
    int& depth = grow_a ? depth_a : depth_b;
    ++depth;
    std::vector<Topology> next;
    int best = limit + 1;
    for (const auto& t : front) {
      for (auto& nb : nni_neighbors(t)) {
        if (seen.contains(nb)) continue;
        if (const auto it = other.find(nb); it != other.end()) best = std::min(best, depth + it->second);
        seen.emplace(nb, depth);
        next.push_back(std::move(nb));
      }
    }
    if (best <= limit) return best;
    front = std::move(next);
  }
  return std::nullopt;
}

}  // namespace tropline
