#include "tropline/random.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace tropline {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// One insertion step: leaf k goes above clade d (d = 0 picks nothing). Every
// clade strictly containing d gains k, and d | k becomes a new clade.
std::vector<LeafSet> insert_leaf(const std::vector<LeafSet>& clades, LeafSet d, int k) {
  std::vector<LeafSet> out;
  out.reserve(clades.size() + 1);
  for (LeafSet c : clades) out.push_back(((c & d) == d && c != d) ? (c | leaf_bit(k)) : c);
  out.push_back(d | leaf_bit(k));
  return out;
}

// Attachment points for leaf k: leaves 1..k-1 followed by internal clades.
LeafSet attachment(const std::vector<LeafSet>& clades, int k, std::uint64_t r) {
  if (r < static_cast<std::uint64_t>(k - 1)) return leaf_bit(static_cast<int>(r) + 1);
  return clades[r - static_cast<std::uint64_t>(k - 1)];
}

void enumerate(int n, int k, const std::vector<LeafSet>& clades, std::vector<Topology>& out) {
  if (k > n) {
    out.emplace_back(n, clades);
    return;
  }
  const std::uint64_t choices = 2 * static_cast<std::uint64_t>(k) - 3;
  for (std::uint64_t r = 0; r < choices; ++r) enumerate(n, k + 1, insert_leaf(clades, attachment(clades, k, r), k), out);
}

}  // namespace

std::uint64_t SeededStream::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGolden);
}

std::uint64_t SeededStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double SeededStream::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

SeededStream SeededStream::substream(std::uint64_t index) const {
  return SeededStream(mix64(seed_ ^ mix64(index + kGolden)));
}

Topology sample_topology_uniform(int n, SeededStream& stream) {
  if (n < 2 || n > kMaxLeaves) throw std::invalid_argument("sample_topology_uniform: n out of range");
  std::vector<LeafSet> clades{all_leaves(2)};
  for (int k = 3; k <= n; ++k) {
    const std::uint64_t r = stream.uniform_below(2 * static_cast<std::uint64_t>(k) - 3);
    clades = insert_leaf(clades, attachment(clades, k, r), k);
  }
  return Topology(n, std::move(clades));
}

std::vector<Topology> enumerate_labeled_topologies(int n) {
  if (n < 2 || n > 7) throw std::invalid_argument("enumerate_labeled_topologies: n must be in [2, 7]");
  std::vector<Topology> out;
  out.reserve(labeled_topology_count(n));
  enumerate(n, 3, {all_leaves(2)}, out);
  return out;
}

std::uint64_t labeled_topology_count(int n) {
  std::uint64_t count = 1;
  for (int k = 3; k <= n; ++k) count *= 2 * static_cast<std::uint64_t>(k) - 3;
  return count;
}

std::int64_t default_height_range(int n) {
  const auto m = static_cast<std::int64_t>(n);
  return std::max<std::int64_t>(m * m * m * m * m * m, std::int64_t{1} << 32);
}

EquidistantTree assign_generic_heights(const Topology& t, SeededStream& stream, std::int64_t max_height) {
  if (!t.is_binary()) throw std::invalid_argument("assign_generic_heights: topology must be binary");
  const int internal = t.n() - 1;
  if (max_height < internal) {
    throw std::invalid_argument("assign_generic_heights: height range " + std::to_string(max_height) +
                                " is smaller than n - 1 = " + std::to_string(internal));
  }
  // Floyd's algorithm: `internal` distinct values from 1..max_height.
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(internal));
  for (std::int64_t j = max_height - internal + 1; j <= max_height; ++j) {
    const auto r = static_cast<std::int64_t>(stream.uniform_below(static_cast<std::uint64_t>(j))) + 1;
    values.push_back(std::find(values.begin(), values.end(), r) == values.end() ? r : j);
  }
  std::sort(values.begin(), values.end(), std::greater<>());

  // Breadth-first order over clades; children are visited by smallest leaf.
  const auto clades = t.clades();
  std::vector<std::vector<std::size_t>> children(clades.size());
  std::size_t root = 0;
  for (std::size_t x = 0; x < clades.size(); ++x) {
    std::size_t parent = clades.size();
    for (std::size_t y = 0; y < clades.size(); ++y) {
      if (y != x && (clades[y] & clades[x]) == clades[x] &&
          (parent == clades.size() || leaf_count_of(clades[y]) < leaf_count_of(clades[parent]))) {
        parent = y;
      }
    }
    if (parent == clades.size()) {
      root = x;
    } else {
      children[parent].push_back(x);
    }
  }
  for (auto& c : children) {
    std::sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) { return min_leaf(clades[a]) < min_leaf(clades[b]); });
  }
  std::vector<ExactScalar> heights(clades.size());
  std::deque<std::size_t> queue{root};
  std::size_t next = 0;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    heights[x] = ExactScalar(values[next++]);
    for (std::size_t c : children[x]) queue.push_back(c);
  }
  return tree_from_topology(t, heights);
}

GenericPairSample sample_generic_pair(int n, SeededStream& stream, std::int64_t max_height) {
  if (n < 3) throw std::invalid_argument("sample_generic_pair: n must be at least 3");
  const Topology t1 = sample_topology_uniform(n, stream);
  const Topology t2 = sample_topology_uniform(n, stream);
  for (int draw = 1; draw <= kMaxHeightDraws; ++draw) {
    EquidistantTree a = assign_generic_heights(t1, stream, max_height);
    EquidistantTree b = assign_generic_heights(t2, stream, max_height);
    if (is_generic_pair(a, b)) return {std::move(a), std::move(b), draw};
  }
  throw std::runtime_error("sample_generic_pair: no generic pair after " + std::to_string(kMaxHeightDraws) +
                           " height draws; height range " + std::to_string(max_height) + " is too small");
}

GenericPairSample sample_generic_pair(int n, SeededStream& stream) {
  return sample_generic_pair(n, stream, default_height_range(n));
}

}  // namespace tropline
