#include <benchmark/benchmark.h>

#include "tropline/ensembles.hpp"
#include "tropline/kernels.hpp"
#include "tropline/random.hpp"

using namespace tropline;

namespace {

UltraVector random_ultrametric(int n) {
  SeededStream s(7);
  return tree_to_ultrametric(assign_generic_heights(sample_topology_uniform(n, s), s, default_height_range(n)));
}

void BM_ThreePointSerial(benchmark::State& state) {
  const UltraVector u = random_ultrametric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(three_point_violation_serial(u));
}

void BM_ThreePointParallel(benchmark::State& state) {
  const UltraVector u = random_ultrametric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(three_point_violation_parallel(u));
}

void BM_MonteCarlo(benchmark::State& state, Execution exec) {
  const SeededStream stream(1);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_counts(static_cast<int>(state.range(0)), 200, stream, exec));
}

void BM_SegmentAudit(benchmark::State& state, Execution exec) {
  const SeededStream stream(2);
  for (auto _ : state) benchmark::DoNotOptimize(audit_random_pairs(4, 20, 50, stream, exec));
}

}  // namespace

BENCHMARK(BM_ThreePointSerial)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_ThreePointParallel)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(BM_MonteCarlo, serial, Execution::Serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MonteCarlo, parallel, Execution::Parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SegmentAudit, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SegmentAudit, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
