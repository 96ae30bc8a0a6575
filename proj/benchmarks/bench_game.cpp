#include <benchmark/benchmark.h>

#include <vector>

#include "actnet/game.hpp"

namespace {

using namespace actnet;

void BM_DeathBirthUpdate(benchmark::State& state) {
  RngStream rng(4, 0);
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  const Graph g = gen_rrg(1000, k, rng);
  StrategyVector s(1000, Strategy::Defector);
  for (VertexId v = 0; v < 1000; v += 2) s.set(v, Strategy::Cooperator);
  ActiveMask mask(1000, false);
  for (VertexId v = 0; v < 1000; ++v) mask.set(v, rng.bernoulli(0.6));
  std::vector<VertexId> active;
  for (VertexId v = 0; v < 1000; ++v) {
    if (mask[v]) active.push_back(v);
  }
  const auto params = GameParams::donation(12.0, 1.0, 0.001);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(death_birth_update(active[i], s, mask, g, params, rng));
    i = (i + 1) % active.size();
  }
}
BENCHMARK(BM_DeathBirthUpdate)->Arg(4)->Arg(8)->Arg(16);

void BM_CoEvolutionSecond(benchmark::State& state) {
  RngStream rng(5, 0);
  const Graph g = gen_rrg(1000, 8, rng);
  StrategyVector s(1000, Strategy::Defector);
  for (VertexId v = 0; v < 1000; v += 2) s.set(v, Strategy::Cooperator);
  const auto params = GameParams::donation(12.0, 1.0, 0.01, 1.0, 0.1);
  CoEvolution sim(g, ActivationEngine(1000, ActivationRates{}, RngStream(5, 1)), params, s, RngStream(5, 2));
  double t = 0.0;
  for (auto _ : state) {
    t += 1.0;
    sim.advance_to(t);
  }
  state.counters["updates_per_unit_time"] =
      benchmark::Counter(static_cast<double>(sim.update_events()) / t);
}
BENCHMARK(BM_CoEvolutionSecond);

}  // namespace
