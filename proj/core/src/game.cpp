#include "actnet/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "actnet/error.hpp"

namespace actnet {

double PayoffMatrix::max_abs() const noexcept {
  return std::max({std::abs(R), std::abs(S), std::abs(T), std::abs(P)});
}

GameParams GameParams::donation(double b, double c, double w, double delta, double mutation) {
  GameParams params;
  params.payoff = {b - c, -c, b, 0.0};
  params.w = w;
  params.delta = delta;
  params.mutation = mutation;
  return params;
}

void GameParams::validate() const {
  if (!(w >= 0.0)) throw ValidationError("w", "selection intensity w must be non-negative");
  if (!(delta > 0.0)) throw ValidationError("delta", "update rate delta must be positive");
  if (!(mutation >= 0.0 && mutation <= 1.0)) {
    throw ValidationError("v", "mutation probability v must lie in [0, 1]");
  }
  for (double x : {payoff.R, payoff.S, payoff.T, payoff.P}) {
    if (!std::isfinite(x)) throw ValidationError("payoff", "payoff entries must be finite");
  }
}

void GameParams::check_fitness_positive(const Graph& g) const {
  const double bound = w * payoff.max_abs() * static_cast<double>(g.max_degree());
  if (!(bound < 1.0)) {
    throw ValidationError("w", "w * max|payoff| * max degree = " + std::to_string(bound) +
                                   " must stay below 1 to keep fitness positive");
  }
}

StrategyVector::StrategyVector(std::size_t n, Strategy fill)
    : bits_(n, static_cast<std::uint8_t>(fill)), coop_count_(fill == Strategy::Cooperator ? n : 0) {}

void StrategyVector::set(VertexId v, Strategy s) noexcept {
  const auto next = static_cast<std::uint8_t>(s);
  if (bits_[v] == next) return;
  bits_[v] = next;
  if (s == Strategy::Cooperator) {
    ++coop_count_;
  } else {
    --coop_count_;
  }
}

namespace {

double payoff_unchecked(VertexId v, const StrategyVector& s, const ActiveMask& mask, const Graph& g,
                        const PayoffMatrix& m) {
  double total = 0.0;
  const Strategy self = s[v];
  for (VertexId u : g.neighbors(v)) {
    if (mask[u]) total += m.at(self, s[u]);
  }
  return total;
}

}  // namespace

double payoff_of(VertexId v, const StrategyVector& s, const ActiveMask& mask, const Graph& g,
                 const GameParams& params) {
  if (!mask[v]) throw ValidationError("vertex", "vertex " + std::to_string(v) + " is not activated");
  return payoff_unchecked(v, s, mask, g, params.payoff);
}

std::vector<double> schedule_update_times(double t_start, double t_end, double delta, RngStream& rng) {
  std::vector<double> times;
  if (!(t_end > t_start)) return times;
  double t = t_start + sample_exponential(delta, rng);
  while (t <= t_end) {
    times.push_back(t);
    t += sample_exponential(delta, rng);
  }
  return times;
}

Strategy death_birth_update(VertexId v, const StrategyVector& s, const ActiveMask& mask,
                            const Graph& g, const GameParams& params, RngStream& rng) {
  if (!mask[v]) throw ValidationError("vertex", "vertex " + std::to_string(v) + " is not activated");
  // Small fixed buffer; degrees above it fall back to the heap.
  constexpr std::size_t kInline = 64;
  double inline_fitness[kInline];
  VertexId inline_ids[kInline];
  std::vector<double> heap_fitness;
  std::vector<VertexId> heap_ids;
  double* fitness = inline_fitness;
  VertexId* ids = inline_ids;
  const auto adj = g.neighbors(v);
  if (adj.size() > kInline) {
    heap_fitness.resize(adj.size());
    heap_ids.resize(adj.size());
    fitness = heap_fitness.data();
    ids = heap_ids.data();
  }

  std::size_t count = 0;
  double total = 0.0;
  bool unanimous = true;
  for (VertexId u : adj) {
    if (!mask[u]) continue;
    const double f = fitness_of(payoff_unchecked(u, s, mask, g, params.payoff), params);
    fitness[count] = f;
    ids[count] = u;
    total += f;
    if (count > 0 && s[u] != s[ids[0]]) unanimous = false;
    ++count;
  }
  if (count == 0) return s[v];
  if (unanimous) return s[ids[0]];

  double target = rng.uniform_open() * total;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    target -= fitness[i];
    if (target < 0.0) return s[ids[i]];
  }
  return s[ids[count - 1]];
}

MutationDecision maybe_mutate(const GameParams& params, RngStream& rng) {
  if (params.mutation <= 0.0) return {};
  if (!(rng.uniform_open() < params.mutation)) return {};
  return {true, rng.uniform_open() < 0.5 ? Strategy::Cooperator : Strategy::Defector};
}

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::FixedC:
      return "fixed_c";
    case Outcome::FixedD:
      return "fixed_d";
    case Outcome::Timeout:
      return "timeout";
  }
  return "timeout";
}

CoEvolution::CoEvolution(const Graph& g, ActivationEngine engine, GameParams params,
                         StrategyVector initial, RngStream rng)
    : graph_(&g),
      engine_(std::move(engine)),
      params_(params),
      strategies_(std::move(initial)),
      rng_(std::move(rng)),
      start_(engine_.now()),
      now_(engine_.now()) {
  params_.validate();
  params_.check_fitness_positive(g);
  if (engine_.vertex_count() != g.vertex_count() || strategies_.size() != g.vertex_count()) {
    throw ValidationError("s0", "engine, strategy vector and graph sizes differ");
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (engine_.is_activated(v)) schedule_next_update(v, now_);
  }
}

void CoEvolution::schedule_next_update(VertexId v, double from) {
  const double t = from + sample_exponential(params_.delta, rng_);
  if (t < engine_.state(v).next_transition) pending_updates_.emplace(t, v);
}

void CoEvolution::apply_update(VertexId v) {
  ++updates_;
  const MutationDecision m = maybe_mutate(params_, rng_);
  if (m.mutated) {
    ++mutations_;
    strategies_.set(v, m.strategy);
    return;
  }
  strategies_.set(v, death_birth_update(v, strategies_, engine_.mask(), *graph_, params_, rng_));
}

bool CoEvolution::process_next(double limit) {
  const double transition_time = engine_.next_event_time();
  const double update_time = pending_updates_.empty() ? std::numeric_limits<double>::infinity()
                                                      : pending_updates_.top().first;
  if (transition_time <= update_time) {
    if (transition_time > limit) return false;
    const TransitionEvent e = engine_.step();
    now_ = e.time;
    if (e.new_phase == Phase::Activated) schedule_next_update(e.vertex, e.time);
    return true;
  }
  if (update_time > limit) return false;
  const VertexId v = pending_updates_.top().second;
  pending_updates_.pop();
  now_ = update_time;
  if (!engine_.is_activated(v)) return true;  // stale; cannot happen with strict scheduling
  apply_update(v);
  schedule_next_update(v, update_time);
  return true;
}

void CoEvolution::advance_to(double t) {
  if (t < now_) throw ValidationError("t", "cannot advance backwards in time");
  while (process_next(t)) {
  }
  now_ = t;
}

AbsorptionResult CoEvolution::run_until_absorption(double horizon) {
  if (params_.mutation != 0.0) {
    throw ValidationError("v", "absorption is only defined without mutation (v = 0)");
  }
  if (!(horizon > 0.0)) throw ValidationError("horizon", "horizon must be positive");
  const double limit = start_ + horizon;
  while (!strategies_.monomorphic()) {
    if (!process_next(limit)) {
      return {Outcome::Timeout, horizon, strategies_.coop_fraction(), updates_};
    }
  }
  const Outcome o = strategies_.coop_count() == 0 ? Outcome::FixedD : Outcome::FixedC;
  return {o, now_ - start_, strategies_.coop_fraction(), updates_};
}

AbsorptionResult run_until_absorption(const Graph& g, const ActivationRates& rates,
                                      const GameParams& params, const StrategyVector& s0,
                                      double horizon, const RngStream& rng, double warmup) {
  if (params.mutation != 0.0) {
    throw ValidationError("v", "absorption is only defined without mutation (v = 0)");
  }
  ActivationEngine engine(g.vertex_count(), rates, rng.derive(0));
  if (warmup > 0.0) engine.advance_to(warmup, [](const TransitionEvent&) {});
  CoEvolution sim(g, std::move(engine), params, s0, rng.derive(1));
  return sim.run_until_absorption(horizon);
}

}  // namespace actnet
