#pragma once

#include <cstdint>
#include <vector>

#include "tropline/tree.hpp"

namespace tropline {

/// Counter-based SplitMix64 stream. Output k depends only on (seed, k), so a
/// stream can be split into independent per-trial substreams without any
/// shared state.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : seed_(seed) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t position() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform integer in [0, bound), bound > 0 (Lemire's unbiased method).
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Independent stream keyed by (seed, index).
  [[nodiscard]] SeededStream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Uniform over the (2n-3)!! leaf-labelled rooted binary topologies on 1..n,
/// by inserting leaves 3..n on a uniformly chosen edge (including the edge
/// above the root).
Topology sample_topology_uniform(int n, SeededStream& stream);

/// Every rooted binary topology on 1..n, n in [2, 7], in insertion order.
std::vector<Topology> enumerate_labeled_topologies(int n);

/// (2n-3)!!
std::uint64_t labeled_topology_count(int n);

/// Default height range for generic sampling: max(n^6, 2^32).
std::int64_t default_height_range(int n);

/// n-1 distinct integers drawn from 1..max_height, sorted descending and
/// handed out along a breadth-first order from the root, so every parent is
/// higher than its descendants. Throws std::invalid_argument when
/// max_height < n - 1 or t is not binary.
EquidistantTree assign_generic_heights(const Topology& t, SeededStream& stream, std::int64_t max_height);

struct GenericPairSample {
  EquidistantTree first;
  EquidistantTree second;
  int draws = 0;  // height draws needed, 1 when the first draw was generic
};

/// Two independent uniform topologies with heights redrawn until the pair is
/// generic. Topologies are never redrawn, so their law stays uniform. Throws
/// std::runtime_error after kMaxHeightDraws failed draws.
GenericPairSample sample_generic_pair(int n, SeededStream& stream, std::int64_t max_height);
GenericPairSample sample_generic_pair(int n, SeededStream& stream);

inline constexpr int kMaxHeightDraws = 1000;

}  // namespace tropline
