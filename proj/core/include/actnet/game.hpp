#pragma once

#include <cstddef>
#include <cstdint>
#include <queue>
#include <string_view>
#include <utility>
#include <vector>

#include "actnet/activation.hpp"
#include "actnet/graph.hpp"
#include "actnet/sampling.hpp"

namespace actnet {

enum class Strategy : std::uint8_t { Defector = 0, Cooperator = 1 };

/// Row player's payoff: R (C vs C), S (C vs D), T (D vs C), P (D vs D).
struct PayoffMatrix {
  double R = 0.0;
  double S = 0.0;
  double T = 0.0;
  double P = 0.0;

  double at(Strategy self, Strategy other) const noexcept {
    if (self == Strategy::Cooperator) return other == Strategy::Cooperator ? R : S;
    return other == Strategy::Cooperator ? T : P;
  }
  double max_abs() const noexcept;

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

struct GameParams {
  PayoffMatrix payoff;
  double w = 0.01;         // selection intensity
  double delta = 1.0;      // strategy-update Poisson rate while activated
  double mutation = 0.0;   // probability v that an update is a random reset

  /// Donation-game form of the prisoner's dilemma: R=b-c, S=-c, T=b, P=0.
  static GameParams donation(double b, double c, double w = 0.01, double delta = 1.0,
                             double mutation = 0.0);

  void validate() const;

  /// Throws ValidationError unless w * max|payoff| * max_degree < 1, which
  /// keeps every fitness strictly positive on `g`.
  void check_fitness_positive(const Graph& g) const;

  friend bool operator==(const GameParams&, const GameParams&) = default;
};

class StrategyVector {
 public:
  StrategyVector() = default;
  explicit StrategyVector(std::size_t n, Strategy fill = Strategy::Defector);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t coop_count() const noexcept { return coop_count_; }
  double coop_fraction() const noexcept {
    return bits_.empty() ? 0.0 : static_cast<double>(coop_count_) / static_cast<double>(bits_.size());
  }
  bool monomorphic() const noexcept { return coop_count_ == 0 || coop_count_ == bits_.size(); }

  Strategy operator[](VertexId v) const noexcept { return static_cast<Strategy>(bits_[v]); }
  void set(VertexId v, Strategy s) noexcept;

  friend bool operator==(const StrategyVector&, const StrategyVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t coop_count_ = 0;
};

/// Accumulated payoff of `v` against its activated neighbours. Throws
/// ValidationError when `v` itself is quiescent.
double payoff_of(VertexId v, const StrategyVector& s, const ActiveMask& mask, const Graph& g,
                 const GameParams& params);

inline double fitness_of(double payoff, const GameParams& params) noexcept {
  return 1.0 + params.w * payoff;
}

/// Poisson(delta) event times in (t_start, t_end].
std::vector<double> schedule_update_times(double t_start, double t_end, double delta, RngStream& rng);

/// Death-birth imitation: `v` copies an activated neighbour chosen with
/// probability proportional to fitness. With no activated neighbour the
/// current strategy is kept.
Strategy death_birth_update(VertexId v, const StrategyVector& s, const ActiveMask& mask,
                            const Graph& g, const GameParams& params, RngStream& rng);

struct MutationDecision {
  bool mutated = false;
  Strategy strategy = Strategy::Defector;  // meaningful only when mutated
};

/// With probability v the update is a mutation to C or D with equal odds;
/// otherwise the caller should run the death-birth rule.
MutationDecision maybe_mutate(const GameParams& params, RngStream& rng);

enum class Outcome { FixedC, FixedD, Timeout };

std::string_view to_string(Outcome o) noexcept;

struct AbsorptionResult {
  Outcome outcome = Outcome::Timeout;
  double absorption_time = 0.0;  // relative to the start of the strategy dynamics
  double final_coop_fraction = 0.0;
  std::uint64_t update_events = 0;
};

/// Co-simulation of vertex activation and strategy updates in one merged
/// event stream. Only activated vertices update, at Poisson rate delta, and
/// only activated neighbours take part. Ties resolve transitions before
/// updates, then by vertex id.
class CoEvolution {
 public:
  CoEvolution(const Graph& g, ActivationEngine engine, GameParams params, StrategyVector initial,
              RngStream rng);

  double now() const noexcept { return now_; }
  double start_time() const noexcept { return start_; }
  const StrategyVector& strategies() const noexcept { return strategies_; }
  const ActivationEngine& activation() const noexcept { return engine_; }
  std::uint64_t update_events() const noexcept { return updates_; }
  std::uint64_t mutation_events() const noexcept { return mutations_; }

  /// Processes every event with time <= t.
  void advance_to(double t);

  /// Runs until the population is monomorphic or `horizon` time units have
  /// elapsed since construction. Requires mutation = 0.
  AbsorptionResult run_until_absorption(double horizon);

 private:
  using Pending = std::pair<double, VertexId>;

  void schedule_next_update(VertexId v, double from);
  void apply_update(VertexId v);
  // Handles the next event if it is at or before `limit`; false otherwise.
  bool process_next(double limit);

  const Graph* graph_;
  ActivationEngine engine_;
  GameParams params_;
  StrategyVector strategies_;
  RngStream rng_;
  double start_;
  double now_;
  std::uint64_t updates_ = 0;
  std::uint64_t mutations_ = 0;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending_updates_;
};

/// Starts a fresh activation engine at t = 0, optionally lets it run for
/// `warmup` time units, then co-simulates until absorption or `horizon`.
AbsorptionResult run_until_absorption(const Graph& g, const ActivationRates& rates,
                                      const GameParams& params, const StrategyVector& s0,
                                      double horizon, const RngStream& rng, double warmup = 0.0);

}  // namespace actnet
