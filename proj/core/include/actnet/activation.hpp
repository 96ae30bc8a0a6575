#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <queue>
#include <utility>
#include <vector>

#include "actnet/graph.hpp"
#include "actnet/sampling.hpp"

namespace actnet {

enum class Phase : std::uint8_t { Quiescent = 0, Activated = 1 };

struct VertexState {
  Phase phase = Phase::Quiescent;
  double next_transition = 0.0;
};

struct TransitionEvent {
  double time = 0.0;
  VertexId vertex = 0;
  Phase new_phase = Phase::Quiescent;

  friend bool operator==(const TransitionEvent&, const TransitionEvent&) = default;
};

/// How the initial phases are drawn. The default is a fair coin per vertex;
/// tests may force every vertex into one phase.
struct InitOptions {
  double activated_probability = 0.5;
};

/// Event-driven engine in which every vertex alternates between quiescent
/// and activated phases with power-law sojourns (exponent lambda while
/// quiescent, mu while activated). Exactly one transition is pending per
/// vertex; pops are ordered by (time, vertex id).
class ActivationEngine {
 public:
  ActivationEngine(std::size_t vertex_count, const ActivationRates& rates, RngStream rng,
                   InitOptions init = {});

  double now() const noexcept { return now_; }
  std::size_t vertex_count() const noexcept { return states_.size(); }
  std::size_t activated_count() const noexcept { return mask_.count(); }
  const ActivationRates& rates() const noexcept { return rates_; }

  const VertexState& state(VertexId v) const noexcept { return states_[v]; }
  bool is_activated(VertexId v) const noexcept { return mask_[v]; }

  /// Live view of the activation flags; valid until the next step.
  const ActiveMask& mask() const noexcept { return mask_; }
  ActiveMask snapshot() const { return mask_; }

  double next_event_time() const noexcept { return queue_.top().first; }

  /// Applies the earliest pending transition.
  TransitionEvent step();

  /// Applies every transition with time <= t, then sets now = t.
  std::vector<TransitionEvent> advance_to(double t);

  /// Allocation-free variant of advance_to; `on_event` sees each event
  /// after it has been applied.
  template <class Callback>
  void advance_to(double t, Callback&& on_event);

 private:
  using Pending = std::pair<double, VertexId>;

  double draw_sojourn(Phase phase);
  void check_target(double t) const;

  ActivationRates rates_;
  RngStream rng_;
  double now_ = 0.0;
  std::vector<VertexState> states_;
  ActiveMask mask_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
};

/// Convenience constructor matching the graph-based call sites.
ActivationEngine init_states(const Graph& g, const ActivationRates& rates, RngStream rng,
                             InitOptions init = {});

/// Writes "time,vertex,new_phase" rows, one per event.
void write_event_trace(std::ostream& out, const std::vector<TransitionEvent>& events,
                       bool with_header = true);

template <class Callback>
void ActivationEngine::advance_to(double t, Callback&& on_event) {
  check_target(t);
  while (!queue_.empty() && queue_.top().first <= t) on_event(step());
  now_ = t;
}

}  // namespace actnet
