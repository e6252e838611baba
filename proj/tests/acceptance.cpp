// Runs the ten acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tropline/counting.hpp"
#include "tropline/ensembles.hpp"
#include "tropline/metric.hpp"
#include "tropline/nni.hpp"
#include "tropline/random.hpp"
#include "tropline/segment.hpp"
#include "tropline/tree.hpp"

using namespace tropline;

namespace {

// Time limits in seconds.
constexpr double kWorkedExampleLimit = 1e-3;
constexpr double kWorstCaseLimit = 60;
constexpr double kCountingLimit = 30;
constexpr double kExpectationLimit = 300;

constexpr int kAuditPairs = 1000;
constexpr int kAuditMinN = 4;
constexpr int kAuditMaxN = 20;
constexpr std::uint64_t kAuditSeed = 5;
constexpr int kBoundTrials = 2000;
constexpr int kExactCheckTrials = 10000;
constexpr double kGrowthFactor = 3;
constexpr std::uint64_t kChiSquareSamples = 100000;
constexpr double kChiSquareAlpha = 1e-3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

UltraVector vec(int n, std::initializer_list<std::int64_t> xs) {
  std::vector<ExactScalar> e;
  for (auto x : xs) e.emplace_back(x);
  return {n, std::move(e)};
}

Outcome worked_example() {
  const UltraVector u = vec(3, {3, 3, 1});
  const UltraVector v = vec(3, {3, 2, 3});
  // Warm the allocator so the timed call measures the computation.
  (void)tropical_segment(u, v);
  const auto start = Clock::now();
  const TropicalSegment seg = tropical_segment(u, v);
  const double t = seconds_since(start);
  bool ok = seg.points.size() == 3;
  if (ok) {
    const std::vector<ExactScalar> lambdas{-2, 0, 1};
    // Listed points are representatives modulo the all-ones line; raw values
    // are u ⊕ (lambda ⊙ v) before normalization.
    const std::vector<UltraVector> points{vec(3, {3, 3, 1}), vec(3, {0, 0, 0}), vec(3, {1, 0, 1})};
    const std::vector<UltraVector> raw{vec(3, {3, 3, 1}), vec(3, {3, 3, 3}), vec(3, {4, 3, 4})};
    for (std::size_t k = 0; k < 3; ++k) {
      ok = ok && seg.points[k].lambda == lambdas[k] && projective_equal(seg.points[k].point.rep(), points[k]) &&
           segment_point(u, v, lambdas[k]) == raw[k] && seg.points[k].point == normalize_projective(points[k]);
    }
    const auto& mid = seg.points[1].tree;
    ok = ok && mid.internal_count() == 1 && mid.children(mid.root()).size() == 3;
  }
  ok = ok && t < kWorkedExampleLimit;
  return {ok, "time " + std::to_string(t * 1e3) + " ms"};
}

Outcome worst_case_sweep() {
  const auto start = Clock::now();
  int bad = 0;
  for (int n = 3; n <= 60; ++n) {
    const auto [u, v] = worst_case_pair(n);
    const TropicalSegment seg = tropical_segment(u, v);
    int four = 0;
    for (const auto& p : seg.points) four += p.cls == TurningPointClass::FourClade;
    const bool ok = seg.generic_pair && seg.points.size() == pair_count(n) &&
                    tropical_nni_number(seg) == (n - 1) * (n - 2) / 2 && four == 0;
    bad += !ok;
  }
  const double t = seconds_since(start);
  return {bad == 0 && t < kWorstCaseLimit, std::to_string(bad) + " wrong of 58, " + std::to_string(t) + " s"};
}

struct AuditTotals {
  std::size_t pairs = 0;
  std::size_t points = 0;
  std::size_t violations = 0;
  std::size_t shape_failures = 0;
  std::size_t count_failures = 0;
  std::size_t convexity_checks = 0;
  std::size_t convexity_failures = 0;
  std::size_t topology_failures = 0;
  std::size_t move_checks = 0;
  std::size_t move_failures = 0;
  std::array<long, 3> classes{};
};

AuditTotals run_audits() {
  AuditTotals s;
  for (const SegmentAudit& a : audit_random_pairs(kAuditMinN, kAuditMaxN, kAuditPairs, SeededStream(kAuditSeed))) {
    ++s.pairs;
    s.points += a.turning_points;
    s.violations += a.theorem_violation;
    s.shape_failures += a.max_children > 4 || a.max_multifurcations > 1;
    s.count_failures += a.turning_points != a.essential_pairs || !a.lambda_matches_heights;
    s.convexity_checks += a.convexity_checks;
    s.convexity_failures += a.convexity_failures;
    s.topology_failures += a.topology_failures;
    s.move_checks += a.move_checks;
    s.move_failures += a.move_failures;
    for (std::size_t k = 0; k < 3; ++k) s.classes[k] += a.classes[k];
  }
  return s;
}

Outcome trichotomy(const AuditTotals& s) {
  const bool ok = s.pairs >= 1000 && s.violations == 0 && s.shape_failures == 0 && s.count_failures == 0 &&
                  static_cast<std::size_t>(s.classes[0] + s.classes[1] + s.classes[2]) == s.points;
  return {ok, std::to_string(s.pairs) + " pairs, " + std::to_string(s.points) + " points (" +
                  std::to_string(s.classes[0]) + " NoChange, " + std::to_string(s.classes[1]) + " SingleNNI, " +
                  std::to_string(s.classes[2]) + " FourClade), " + std::to_string(s.violations) + " violations"};
}

Outcome convexity(const AuditTotals& s) {
  return {s.convexity_checks > 0 && s.convexity_failures == 0 && s.topology_failures == 0,
          std::to_string(s.convexity_checks) + " points checked, " + std::to_string(s.convexity_failures) +
              " failures"};
}

Outcome move_consistency(const AuditTotals& s) {
  return {s.move_checks > 0 && s.move_failures == 0 && s.classes[2] > 0,
          std::to_string(s.move_checks) + " transitions, " + std::to_string(s.move_failures) + " inconsistent"};
}

Outcome counting_oracles() {
  const auto start = Clock::now();
  int bad = 0;
  for (int n = 1; n <= 10; ++n) {
    const PlanarCensus c = planar_census(n);
    bad += count_planar(n) != c.trees;
    bad += count_planar_marked(n) != c.marked;
    for (int a = 1; a < n; ++a) {
      for (int b = 1; a + b <= n; ++b) {
        bad += count_planar_marked_ab(n, a, b) != c.by_ab[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
    }
  }
  const double t = seconds_since(start);
  return {bad == 0 && t < kCountingLimit, std::to_string(bad) + " mismatches, " + std::to_string(t) + " s"};
}

Outcome expectation_bound_check() {
  const auto start = Clock::now();
  const SeededStream stream(kDefaultSeed);
  bool ok = true;
  std::string detail;
  for (int n : {8, 16, 32, 64}) {
    const auto r = expected_pi_monte_carlo(n, kBoundTrials, stream);
    ok = ok && r.mean_pi <= r.bound;
    detail += "n=" + std::to_string(n) + " " + std::to_string(r.mean_pi) + "<=" + std::to_string(r.bound) + "; ";
  }
  for (int n : {4, 5}) {
    const auto r = expected_pi_monte_carlo(n, kExactCheckTrials, stream);
    const double exact = expected_pi_exact(n).to_double();
    ok = ok && std::abs(r.mean_pi - exact) <= r.ci99;
    detail += "n=" + std::to_string(n) + " " + std::to_string(r.mean_pi) + "+-" + std::to_string(r.ci99) + " vs " +
              std::to_string(exact) + "; ";
  }
  const double t = seconds_since(start);
  return {ok && t < kExpectationLimit, detail + std::to_string(t) + " s"};
}

Outcome asymptotic_sanity() {
  auto statistic = [](int n) {
    const double s = n <= kMaxExactSnBound ? sum_Sn_bound(n).to_double() : sum_Sn_bound_float(n);
    const double log_n = std::log(static_cast<double>(n));
    return std::sqrt(s) * std::sqrt(static_cast<double>(n)) / (log_n * log_n);
  };
  const double limit = kGrowthFactor * statistic(64);
  double worst = 0;
  int worst_n = 0;
  for (int n = 8; n <= 4096; n *= 2) {
    const double x = statistic(n);
    if (x > worst) {
      worst = x;
      worst_n = n;
    }
  }
  return {worst <= limit, "max " + std::to_string(worst) + " at n=" + std::to_string(worst_n) + ", limit " +
                              std::to_string(limit)};
}

Outcome non_metricity() {
  const auto [u, v] = worst_case_pair(5);
  const int tnni = tropical_nni_number(u, v);
  const int d = nni_distance_exact(topology_of(ultrametric_to_tree(u)), topology_of(ultrametric_to_tree(v)));
  const NniGraph graph(5);
  return {tnni == 6 && d == 3 && graph.size() == 105,
          "tropical NNI " + std::to_string(tnni) + ", NNI distance " + std::to_string(d)};
}

Outcome sampler_uniform() {
  bool ok = true;
  std::string detail;
  SeededStream stream(kDefaultSeed);
  for (int n : {4, 5}) {
    const auto r = sampler_uniformity(n, kChiSquareSamples, stream);
    ok = ok && r.p_value > kChiSquareAlpha;
    detail += "n=" + std::to_string(n) + " chi2=" + std::to_string(r.statistic) + " dof=" + std::to_string(r.dof) +
              " p=" + std::to_string(r.p_value) + "; ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&failed](int id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "worked example", worked_example);
  report(2, "worst-case family", worst_case_sweep);
  AuditTotals audits;
  try {
    audits = run_audits();
  } catch (const std::exception& e) {
    std::printf("audit run aborted: %s\n", e.what());
  }
  report(3, "classification trichotomy", [&] { return trichotomy(audits); });
  report(4, "tropical convexity", [&] { return convexity(audits); });
  report(5, "move consistency", [&] { return move_consistency(audits); });
  report(6, "counting oracles", counting_oracles);
  report(7, "expectation bound", expectation_bound_check);
  report(8, "asymptotic sanity", asymptotic_sanity);
  report(9, "non-metricity", non_metricity);
  report(10, "sampler uniformity", sampler_uniform);
  return failed;
}
