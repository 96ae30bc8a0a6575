#include <benchmark/benchmark.h>

#include "actnet/sampling.hpp"

namespace {

void BM_PowerLawDraw(benchmark::State& state) {
  actnet::RngStream rng(1, 0);
  const double alpha = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(actnet::sample_power_law(alpha, 1.0, 1.0e4, rng));
}
BENCHMARK(BM_PowerLawDraw)->Arg(26)->Arg(35)->Arg(64);

void BM_BoundedInteger(benchmark::State& state) {
  actnet::RngStream rng(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.below(1000));
}
BENCHMARK(BM_BoundedInteger);

}  // namespace
