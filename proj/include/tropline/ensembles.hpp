#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropline/exact.hpp"
#include "tropline/kernels.hpp"
#include "tropline/metric.hpp"
#include "tropline/random.hpp"
#include "tropline/segment.hpp"
#include "tropline/tree.hpp"

namespace tropline {

/// u_ij = n (n - min(i, j)), v_ij = max(i, j) - 1. Requires 3 <= n <= 64.
std::pair<UltraVector, UltraVector> worst_case_pair(int n);

/// |essential_pairs| computed from topologies alone; for generic metrics it
/// does not depend on the heights.
int essential_pair_count(const Topology& t1, const Topology& t2);

/// Mean of essential_pair_count over all ordered pairs of binary topologies
/// on n leaves, 3 <= n <= 6.
ExactScalar expected_pi_exact(int n);

/// z such that a two-sided normal interval of half-width z·sigma holds 99%.
inline constexpr double kNormal99 = 2.5758293035489004;

struct ExperimentReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double mean_pi = 0;
  double variance = 0;  // sample variance, denominator trials - 1
  double ci99 = 0;      // kNormal99 · sqrt(variance / trials)
  /// 2 (n-1)^2 S~_n, exact when n <= kMaxExactSnBound.
  std::optional<ExactScalar> bound_exact;
  double bound = 0;
  double mean_draws = 0;  // average height draws per generic pair
  double seconds = 0;
};

/// 2 (n-1)^2 S~_n as a double, plus the exact value when available.
std::pair<double, std::optional<ExactScalar>> expectation_bound(int n);

/// Monte Carlo estimate of E|essential_pairs| over generic pairs with uniform
/// topologies. Trial t draws from stream.substream(n).substream(t), so the
/// result is independent of thread count and schedule. Requires trials >= 30.
ExperimentReport expected_pi_monte_carlo(int n, int trials, const SeededStream& stream,
                                         Execution exec = Execution::Parallel, bool with_bound = true);

/// Per-trial essential-pair counts as used by expected_pi_monte_carlo.
std::vector<int> monte_carlo_counts(int n, int trials, const SeededStream& stream, Execution exec);

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 0;
};

/// Goodness of fit of observed counts against the uniform distribution.
ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& counts);

/// Draws `samples` topologies on n leaves (n <= 7) and tests them against the
/// enumeration with a chi-square test.
ChiSquareResult sampler_uniformity(int n, std::uint64_t samples, SeededStream& stream);

/// Everything checked along one tropical segment between a generic pair.
struct SegmentAudit {
  int n = 0;
  std::size_t turning_points = 0;
  std::size_t essential_pairs = 0;
  std::array<int, 3> classes{};  // NoChange, SingleNNI, FourClade
  int tropical_nni = 0;
  bool theorem_violation = false;
  std::string violation;
  int max_children = 0;         // over all turning-point trees
  int max_multifurcations = 0;  // vertices with >= 3 children, max over trees
  std::size_t convexity_checks = 0;
  std::size_t convexity_failures = 0;
  std::size_t topology_failures = 0;  // interior sample differs from its piece
  std::size_t move_checks = 0;
  std::size_t move_failures = 0;
  bool lambda_matches_heights = false;  // turning scalars = 2(h1 - h2) over essential pairs

  [[nodiscard]] bool clean() const {
    return !theorem_violation && max_children <= 4 && max_multifurcations <= 1 && convexity_failures == 0 &&
           topology_failures == 0 && move_failures == 0 && lambda_matches_heights &&
           turning_points == essential_pairs;
  }
};

/// Builds the segment, then checks every turning point and `samples_per_piece`
/// random rational points inside every classical piece.
SegmentAudit audit_segment(const EquidistantTree& t1, const EquidistantTree& t2, SeededStream& stream,
                           int samples_per_piece = 3);

/// Audits `pairs` random generic pairs with n uniform in [n_min, n_max]. Pair k
/// uses stream.substream(k); results are returned in pair order.
std::vector<SegmentAudit> audit_random_pairs(int n_min, int n_max, int pairs, const SeededStream& stream,
                                             Execution exec = Execution::Parallel);

}  // namespace tropline
