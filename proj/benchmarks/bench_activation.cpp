#include <benchmark/benchmark.h>

#include "actnet/activation.hpp"

namespace {

void BM_EngineStep(benchmark::State& state) {
  actnet::ActivationEngine engine(static_cast<std::size_t>(state.range(0)), actnet::ActivationRates{},
                                  actnet::RngStream(3, 0));
  for (auto _ : state) benchmark::DoNotOptimize(engine.step());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EngineStep)->Arg(1000)->Arg(100000);

}  // namespace
