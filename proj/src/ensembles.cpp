#include "tropline/ensembles.hpp"

#include <algorithm>
#include <bitset>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "tropline/counting.hpp"
#include "tropline/errors.hpp"

namespace tropline {

namespace {

// Index of the smallest clade containing each leaf pair, by pair position.
std::vector<std::uint8_t> lca_clades(const Topology& t) {
  const int n = t.n();
  const auto clades = t.clades();
  std::vector<std::size_t> order(clades.size());
  for (std::size_t x = 0; x < order.size(); ++x) order[x] = x;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return leaf_count_of(clades[a]) < leaf_count_of(clades[b]); });
  std::vector<std::uint8_t> out(pair_count(n), 0xff);
  for (std::size_t x : order) {
    const auto leaves = leaves_of(clades[x]);
    for (std::size_t p = 0; p < leaves.size(); ++p) {
      for (std::size_t q = p + 1; q < leaves.size(); ++q) {
        auto& slot = out[pair_position(leaves[p], leaves[q], n)];
        if (slot == 0xff) slot = static_cast<std::uint8_t>(x);
      }
    }
  }
  return out;
}

template <class Body>
void run_indexed(int count, Execution exec, Body body) {
  if (exec == Execution::Serial) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  apply_thread_cap();
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k) {
    try {
      body(k);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct TrialResult {
  int pi = 0;
  int draws = 0;
};

std::vector<TrialResult> run_trials(int n, int trials, const SeededStream& stream, Execution exec) {
  if (n < 3 || n > kMaxLeaves) throw std::invalid_argument("Monte Carlo: n must be in [3, 64]");
  const SeededStream base = stream.substream(static_cast<std::uint64_t>(n));
  std::vector<TrialResult> out(static_cast<std::size_t>(trials));
  run_indexed(trials, exec, [&](int t) {
    SeededStream s = base.substream(static_cast<std::uint64_t>(t));
    const auto pair = sample_generic_pair(n, s);
    out[static_cast<std::size_t>(t)] = {tropical_interchange_number(pair.first, pair.second), pair.draws};
  });
  return out;
}

}  // namespace

std::pair<UltraVector, UltraVector> worst_case_pair(int n) {
  if (n < 3 || n > kMaxLeaves) throw std::invalid_argument("worst_case_pair: n must be in [3, 64]");
  std::vector<ExactScalar> u;
  std::vector<ExactScalar> v;
  u.reserve(pair_count(n));
  v.reserve(pair_count(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      u.emplace_back(static_cast<std::int64_t>(n) * (n - i));
      v.emplace_back(j - 1);
    }
  }
  return {UltraVector(n, std::move(u)), UltraVector(n, std::move(v))};
}

int essential_pair_count(const Topology& t1, const Topology& t2) {
  if (t1.n() != t2.n()) throw DimensionMismatch("topologies on different leaf counts");
  const auto a = lca_clades(t1);
  const auto b = lca_clades(t2);
  std::bitset<kMaxLeaves * kMaxLeaves> seen;
  for (std::size_t k = 0; k < a.size(); ++k) seen.set(std::size_t{a[k]} * kMaxLeaves + b[k]);
  return static_cast<int>(seen.count());
}

ExactScalar expected_pi_exact(int n) {
  if (n < 3 || n > 6) throw std::invalid_argument("expected_pi_exact: n must be in [3, 6]");
  const auto topologies = enumerate_labeled_topologies(n);
  std::int64_t total = 0;
  for (const auto& a : topologies) {
    for (const auto& b : topologies) total += essential_pair_count(a, b);
  }
  const auto m = static_cast<std::int64_t>(topologies.size());
  return ExactScalar(total, m * m);
}

std::pair<double, std::optional<ExactScalar>> expectation_bound(int n) {
  const ExactScalar factor(2 * static_cast<std::int64_t>(n - 1) * (n - 1));
  if (n <= kMaxExactSnBound) {
    ExactScalar exact = factor * sum_Sn_bound(n);
    const double value = exact.to_double();
    return {value, std::move(exact)};
  }
  return {factor.to_double() * sum_Sn_bound_float(n), std::nullopt};
}

std::vector<int> monte_carlo_counts(int n, int trials, const SeededStream& stream, Execution exec) {
  std::vector<int> out;
  for (const auto& r : run_trials(n, trials, stream, exec)) out.push_back(r.pi);
  return out;
}

ExperimentReport expected_pi_monte_carlo(int n, int trials, const SeededStream& stream, Execution exec,
                                         bool with_bound) {
  if (trials < 30) throw std::invalid_argument("expected_pi_monte_carlo: at least 30 trials required");
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_trials(n, trials, stream, exec);
  ExperimentReport r;
  r.n = n;
  r.trials = trials;
  r.seed = stream.seed();
  double sum = 0;
  double draws = 0;
  for (const auto& t : results) {
    sum += t.pi;
    draws += t.draws;
  }
  r.mean_pi = sum / trials;
  r.mean_draws = draws / trials;
  double ss = 0;
  for (const auto& t : results) ss += (t.pi - r.mean_pi) * (t.pi - r.mean_pi);
  r.variance = ss / (trials - 1);
  r.ci99 = kNormal99 * std::sqrt(r.variance / trials);
  if (with_bound) std::tie(r.bound, r.bound_exact) = expectation_bound(n);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform: need at least two categories");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw std::invalid_argument("chi_square_uniform: no observations");
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  ChiSquareResult r;
  for (auto c : counts) r.statistic += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  r.dof = static_cast<int>(counts.size()) - 1;
  const boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

ChiSquareResult sampler_uniformity(int n, std::uint64_t samples, SeededStream& stream) {
  auto all = enumerate_labeled_topologies(n);
  std::sort(all.begin(), all.end());
  std::vector<std::uint64_t> counts(all.size(), 0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const Topology t = sample_topology_uniform(n, stream);
    const auto it = std::lower_bound(all.begin(), all.end(), t);
    if (it == all.end() || *it != t) throw std::logic_error("sampled topology missing from the enumeration");
    ++counts[static_cast<std::size_t>(it - all.begin())];
  }
  return chi_square_uniform(counts);
}

SegmentAudit audit_segment(const EquidistantTree& t1, const EquidistantTree& t2, SeededStream& stream,
                           int samples_per_piece) {
  SegmentAudit a;
  a.n = t1.leaf_count();
  const UltraVector u = tree_to_ultrametric(t1);
  const UltraVector v = tree_to_ultrametric(t2);
  const auto pairs = essential_pairs(t1, t2);
  a.essential_pairs = pairs.size();

  TropicalSegment seg;
  try {
    seg = tropical_segment(u, v);
  } catch (const TheoremViolation& e) {
    a.theorem_violation = true;
    a.violation = e.what();
    return a;
  }
  a.turning_points = seg.points.size();

  std::vector<ExactScalar> from_heights;
  for (const auto& [x1, x2] : pairs) from_heights.push_back(lambda_from_heights(t1, x1, t2, x2));
  std::sort(from_heights.begin(), from_heights.end());
  from_heights.erase(std::unique(from_heights.begin(), from_heights.end()), from_heights.end());
  a.lambda_matches_heights = from_heights == turning_scalars(u, v);

  for (const auto& p : seg.points) {
    if (p.cls) {
      ++a.classes[static_cast<std::size_t>(*p.cls)];
      a.tropical_nni += nni_weight(*p.cls);
    }
    const TreeShape shape = shape_of(p.tree);
    a.max_children = std::max(a.max_children, shape.max_children);
    a.max_multifurcations = std::max(a.max_multifurcations, shape.multifurcations);
    ++a.convexity_checks;
    if (!three_point_check(p.point.rep())) ++a.convexity_failures;
  }

  constexpr std::uint64_t kGrid = 1024;
  const ExactScalar half(1, 2);
  for (std::size_t i = 0; i + 1 < seg.points.size(); ++i) {
    const ExactScalar& lo = seg.points[i].lambda;
    const ExactScalar width = seg.points[i + 1].lambda - lo;
    const UltraVector mid = segment_point(u, v, lo + width * half);
    for (int s = 0; s < samples_per_piece; ++s) {
      const auto k = static_cast<std::int64_t>(1 + stream.uniform_below(kGrid - 1));
      const UltraVector w = segment_point(u, v, lo + width * ExactScalar(k, kGrid));
      ++a.convexity_checks;
      if (!three_point_check(w)) {
        ++a.convexity_failures;
      } else if (!topology_equal_argmax(w, mid)) {
        ++a.topology_failures;
      }
    }
  }

  for (const auto& m : verify_moves(seg)) {
    ++a.move_checks;
    if (!m.consistent) ++a.move_failures;
  }
  return a;
}

std::vector<SegmentAudit> audit_random_pairs(int n_min, int n_max, int pairs, const SeededStream& stream,
                                             Execution exec) {
  if (n_min < 3 || n_max < n_min || n_max > kMaxLeaves) throw std::invalid_argument("audit_random_pairs: bad n range");
  std::vector<SegmentAudit> out(static_cast<std::size_t>(pairs));
  run_indexed(pairs, exec, [&](int k) {
    SeededStream s = stream.substream(static_cast<std::uint64_t>(k));
    const int n = n_min + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n_max - n_min + 1)));
    const auto pair = sample_generic_pair(n, s);
    out[static_cast<std::size_t>(k)] = audit_segment(pair.first, pair.second, s);
  });
  return out;
}

}  // namespace tropline
