#include <benchmark/benchmark.h>

#include "actnet/coalescence.hpp"

namespace {

using namespace actnet;

void solve(benchmark::State& state, theory::SolverMethod method) {
  RngStream rng(6, 0);
  const Graph g = gen_rrg(static_cast<std::size_t>(state.range(0)), 4, rng);
  theory::CoalescenceOptions options;
  options.method = method;
  for (auto _ : state) benchmark::DoNotOptimize(theory::coalescence_solve(g, ActivationRates{}, options));
}

void BM_CoalescenceDirect(benchmark::State& state) { solve(state, theory::SolverMethod::Direct); }
void BM_CoalescenceIterative(benchmark::State& state) { solve(state, theory::SolverMethod::Iterative); }

BENCHMARK(BM_CoalescenceDirect)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoalescenceIterative)->Arg(40)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
