#include <benchmark/benchmark.h>

#include "binlb/adversary.hpp"
#include "binlb/analysis.hpp"

namespace {

using namespace binlb;

void BM_RunTree(benchmark::State& state, const char* algorithm, ForkMode mode) {
  const auto p = ConstructionParams::make(3, 1);
  const auto ctx = p.context();
  const auto factory = algorithm_factory(algorithm, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(run_tree(p, factory, mode).report.max_ratio);
}
BENCHMARK_CAPTURE(BM_RunTree, first_fit, "first-fit", ForkMode::snapshot)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunTree, first_fit_replay, "first-fit", ForkMode::replay)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunTree, next_fit, "next-fit", ForkMode::snapshot)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunTree, best_fit, "best-fit", ForkMode::snapshot)->Unit(benchmark::kMillisecond);

void BM_CertifyT3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify_prices(3).ok());
}
BENCHMARK(BM_CertifyT3)->Unit(benchmark::kMillisecond);

void BM_Optimize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(optimize_bound(30).iterations);
}
BENCHMARK(BM_Optimize)->Unit(benchmark::kMillisecond);

}  // namespace
