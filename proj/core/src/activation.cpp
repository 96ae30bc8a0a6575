#include "actnet/activation.hpp"

#include <ostream>
#include <string>

#include "actnet/csv.hpp"
#include "actnet/error.hpp"

namespace actnet {

ActivationEngine::ActivationEngine(std::size_t vertex_count, const ActivationRates& rates,
                                   RngStream rng, InitOptions init)
    : rates_(rates), rng_(std::move(rng)), states_(vertex_count), mask_(vertex_count) {
  rates_.validate();
  if (!(init.activated_probability >= 0.0 && init.activated_probability <= 1.0)) {
    throw ValidationError("activated_probability", "initial activation probability must lie in [0, 1]");
  }
  std::vector<Pending> pending;
  pending.reserve(vertex_count);
  for (VertexId v = 0; v < vertex_count; ++v) {
    const bool active = rng_.uniform_open() < init.activated_probability;
    states_[v].phase = active ? Phase::Activated : Phase::Quiescent;
    mask_.set(v, active);
    states_[v].next_transition = draw_sojourn(states_[v].phase);
    pending.emplace_back(states_[v].next_transition, v);
  }
  queue_ = decltype(queue_)(std::greater<>{}, std::move(pending));
}

double ActivationEngine::draw_sojourn(Phase phase) {
  const double alpha = phase == Phase::Activated ? rates_.mu : rates_.lambda;
  return power_law_from_uniform(alpha, rates_.t0, rates_.cap, rng_.uniform_open());
}

TransitionEvent ActivationEngine::step() {
  if (queue_.empty()) throw Error("activation engine has no vertices");
  const auto [time, v] = queue_.top();
  queue_.pop();
  now_ = time;
  VertexState& st = states_[v];
  st.phase = st.phase == Phase::Activated ? Phase::Quiescent : Phase::Activated;
  mask_.set(v, st.phase == Phase::Activated);
  st.next_transition = now_ + draw_sojourn(st.phase);
  queue_.emplace(st.next_transition, v);
  return {now_, v, st.phase};
}

void ActivationEngine::check_target(double t) const {
  if (t < now_) {
    throw ValidationError("t", "cannot advance to " + std::to_string(t) +
                                   ", engine is already at " + std::to_string(now_));
  }
}

std::vector<TransitionEvent> ActivationEngine::advance_to(double t) {
  std::vector<TransitionEvent> events;
  advance_to(t, [&](const TransitionEvent& e) { events.push_back(e); });
  return events;
}

ActivationEngine init_states(const Graph& g, const ActivationRates& rates, RngStream rng,
                             InitOptions init) {
  return ActivationEngine(g.vertex_count(), rates, std::move(rng), init);
}

void write_event_trace(std::ostream& out, const std::vector<TransitionEvent>& events,
                       bool with_header) {
  if (with_header) out << "time,vertex,new_phase\n";
  for (const auto& e : events) {
    out << format_double(e.time) << ',' << e.vertex << ',' << static_cast<int>(e.new_phase) << '\n';
  }
}

}  // namespace actnet
