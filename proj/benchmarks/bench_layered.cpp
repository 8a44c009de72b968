#include <benchmark/benchmark.h>

#include "binlb/construction.hpp"
#include "binlb/layered.hpp"

namespace {

using namespace binlb;

// A-item sizes at t = 3: exponents near 2^2060, two apart.
void BM_CompareAstronomical(benchmark::State& state) {
  const auto p = ConstructionParams::make(3, 1);
  const auto ctx = p.context();
  const Integer e = Integer(1) << 2060;
  const auto a = a_size(p, e);
  const auto b = a_size(p, e + 2);
  for (auto _ : state) benchmark::DoNotOptimize(ctx.compare(a, b));
}
BENCHMARK(BM_CompareAstronomical);

void BM_CompareBaseOnly(benchmark::State& state) {
  const auto p = ConstructionParams::make(3, 1);
  const auto ctx = p.context();
  const auto a = c_size(p, 3);
  const auto b = c_size(p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ctx.compare(a, b));
}
BENCHMARK(BM_CompareBaseOnly);

// Bin load after n A-items, each with its own atom.
void BM_AddLoad(benchmark::State& state) {
  const auto p = ConstructionParams::make(3, 1);
  const auto n = static_cast<int>(state.range(0));
  std::vector<LayeredValue> sizes;
  for (int i = 0; i < n; ++i) sizes.push_back(a_size(p, (Integer(1) << 2060) + 2 * i));
  for (auto _ : state) {
    LayeredValue load;
    for (const auto& s : sizes) load += s;
    benchmark::DoNotOptimize(load);
  }
}
BENCHMARK(BM_AddLoad)->Arg(1)->Arg(6)->Arg(64);

}  // namespace
