#include "actnet/experiments.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "actnet/activation.hpp"
#include "actnet/csv.hpp"
#include "actnet/error.hpp"
#include "actnet/parallel.hpp"
#include "actnet/theory.hpp"

namespace actnet {
namespace {

void ignore_event(const TransitionEvent&) {}

// Drives `engine` through every sample time of `sampling`, calling observe()
// on the mask after each advance.
template <class Observe>
void for_each_sample(ActivationEngine& engine, const SamplingSpec& sampling, Observe&& observe) {
  const std::size_t samples = sampling.sample_count();
  for (std::size_t k = 0; k < samples; ++k) {
    engine.advance_to(sampling.sample_time(k), ignore_event);
    observe(engine.mask());
  }
}

ActivationRates with_point(ActivationRates base, const RatePoint& point) {
  base.lambda = point.lambda;
  base.mu = point.mu;
  return base;
}

template <class Observable>
std::vector<SweepRow> sweep(const Graph& g, const ActivationRates& base, std::span<const RatePoint> grid,
                            const SamplingSpec& sampling, std::uint64_t seed, unsigned workers,
                            Observable&& observable) {
  sampling.validate();
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    const ActivationRates rates = with_point(base, grid[i]);
    ActivationEngine engine(g.vertex_count(), rates, RngStream(seed, i));
    std::vector<double> values;
    values.reserve(sampling.sample_count());
    for_each_sample(engine, sampling, [&](const ActiveMask& mask) { values.push_back(observable(mask)); });
    const SummaryStats s = summarize(values);
    rows[i] = {grid[i].lambda, grid[i].mu, s.mean, std::sqrt(s.variance), s.count};
  });
  return rows;
}

double activated_mean_degree(const Graph& g, const ActiveMask& mask) {
  if (mask.count() == 0) return 0.0;
  std::size_t degree_sum = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (mask[v]) degree_sum += activated_degree(g, mask, v);
  }
  return static_cast<double>(degree_sum) / static_cast<double>(mask.count());
}

}  // namespace

void SamplingSpec::validate() const {
  if (!(burn_in >= 0.0)) throw ValidationError("burn_in", "burn-in must be non-negative");
  if (!(horizon > burn_in)) throw ValidationError("horizon", "horizon must exceed the burn-in");
  if (!(dt > 0.0)) throw ValidationError("dt", "sampling interval dt must be positive");
}

std::size_t SamplingSpec::sample_count() const {
  // The 1e-9 slack keeps an exact multiple of dt from being lost to rounding.
  return static_cast<std::size_t>(std::floor((horizon - burn_in) / dt + 1e-9)) + 1;
}

std::vector<RatePoint> rate_grid(std::span<const double> lambdas, std::span<const double> mus) {
  std::vector<RatePoint> grid;
  grid.reserve(lambdas.size() * mus.size());
  for (double l : lambdas) {
    for (double m : mus) grid.push_back({l, m});
  }
  return grid;
}

Histogram collect_size_distribution(std::size_t n, const ActivationRates& rates,
                                    const SamplingSpec& sampling, const RngStream& rng) {
  sampling.validate();
  ActivationEngine engine(n, rates, rng);
  Histogram h(n);
  for_each_sample(engine, sampling, [&](const ActiveMask& mask) { h.add(mask.count()); });
  return h;
}

double kl_divergence(const Histogram& empirical, std::span<const double> log_p) {
  if (empirical.total() == 0) throw ValidationError("histogram", "empirical histogram is empty");
  const auto total = static_cast<double>(empirical.total());
  double kl = 0.0;
  for (std::size_t i = 0; i <= empirical.max_value(); ++i) {
    const std::uint64_t c = empirical.count(i);
    if (c == 0) continue;
    if (i >= log_p.size()) {
      throw ValidationError("histogram", "empirical support exceeds the theoretical support");
    }
    const double q = static_cast<double>(c) / total;
    kl += q * (std::log(q) - log_p[i]);
  }
  return kl;
}

double kl_divergence(const Histogram& empirical, const ActivationRates& rates) {
  return kl_divergence(empirical, theory::stationary_log_pmf_vector(empirical.max_value(), rates));
}

DegreeStats activated_degree_stats(const Graph& g, const ActivationRates& rates,
                                   const SamplingSpec& sampling, const RngStream& rng) {
  sampling.validate();
  ActivationEngine engine(g.vertex_count(), rates, rng);
  DegreeStats out;
  out.histogram = Histogram(g.max_degree());
  for_each_sample(engine, sampling, [&](const ActiveMask& mask) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (mask[v]) out.histogram.add(activated_degree(g, mask, v));
    }
  });
  out.stats = out.histogram.summary();
  return out;
}

std::vector<SweepRow> largest_component_sweep(const Graph& g, const ActivationRates& base,
                                              std::span<const RatePoint> grid,
                                              const SamplingSpec& sampling, std::uint64_t seed,
                                              unsigned workers) {
  return sweep(g, base, grid, sampling, seed, workers,
               [&](const ActiveMask& mask) { return largest_component_relative_size(g, mask); });
}

std::vector<SweepRow> mean_degree_sweep(const Graph& g, const ActivationRates& base,
                                        std::span<const RatePoint> grid,
                                        const SamplingSpec& sampling, std::uint64_t seed,
                                        unsigned workers) {
  return sweep(g, base, grid, sampling, seed, workers,
               [&](const ActiveMask& mask) { return activated_mean_degree(g, mask); });
}

RenewalObservation observe_renewal_pair(const ActivationRates& rates, double horizon,
                                        const RngStream& rng) {
  if (!(horizon > 0.0)) throw ValidationError("horizon", "horizon must be positive");
  ActivationEngine engine(2, rates, rng);
  double last = 0.0;
  double time_a = 0.0;
  double time_b = 0.0;
  double time_ab = 0.0;
  auto accumulate = [&](double until) {
    const double span = until - last;
    const bool a = engine.is_activated(0);
    const bool b = engine.is_activated(1);
    if (a) time_a += span;
    if (b) time_b += span;
    if (a && b) time_ab += span;
    last = until;
  };
  while (engine.next_event_time() <= horizon) {
    accumulate(engine.next_event_time());
    engine.step();
  }
  accumulate(horizon);
  RenewalObservation obs;
  obs.activated_fraction_a = time_a / horizon;
  obs.activated_fraction_b = time_b / horizon;
  obs.covariance = time_ab / horizon - obs.activated_fraction_a * obs.activated_fraction_b;
  return obs;
}

WalkStepEstimate empirical_walk_step(const Graph& g, const ActivationRates& rates,
                                     const SamplingSpec& sampling, std::uint64_t trials,
                                     const RngStream& rng) {
  sampling.validate();
  if (g.vertex_count() == 0) throw ValidationError("graph", "graph is empty");
  ActivationEngine engine(g.vertex_count(), rates, rng.derive(0));
  RngStream picker = rng.derive(1);
  const std::size_t snapshots = sampling.sample_count();
  WalkStepEstimate est;
  std::vector<VertexId> active_neighbors;
  for (std::size_t s = 0; s < snapshots; ++s) {
    engine.advance_to(sampling.sample_time(s), ignore_event);
    const ActiveMask& mask = engine.mask();
    // Spread the trials evenly over the snapshots.
    const std::uint64_t quota = trials * (s + 1) / snapshots - trials * s / snapshots;
    for (std::uint64_t t = 0; t < quota; ++t) {
      VertexId from = 0;
      do {
        from = static_cast<VertexId>(picker.below(g.vertex_count()));
      } while (g.degree(from) == 0);
      const auto adj = g.neighbors(from);
      const VertexId designated = adj[picker.below(adj.size())];
      active_neighbors.clear();
      for (VertexId u : adj) {
        if (mask[u]) active_neighbors.push_back(u);
      }
      ++est.trials;
      if (active_neighbors.empty()) continue;  // walker stays put
      const VertexId to = active_neighbors[picker.below(active_neighbors.size())];
      if (to == designated) ++est.hits;
    }
  }
  est.frequency = est.trials == 0 ? 0.0 : static_cast<double>(est.hits) / static_cast<double>(est.trials);
  return est;
}

FixationEstimate estimate_fixation(const Graph& g, const ActivationRates& rates,
                                   const GameParams& params, Invader invader,
                                   std::uint64_t replicates, std::uint64_t seed,
                                   const FixationOptions& options) {
  if (replicates < 1) throw ValidationError("replicates", "need at least one replicate");
  if (params.mutation != 0.0) throw ValidationError("v", "fixation requires v = 0");
  if (g.vertex_count() == 0) throw ValidationError("graph", "graph is empty");
  params.validate();
  params.check_fitness_positive(g);
  rates.validate();

  const Strategy resident = invader == Invader::Cooperator ? Strategy::Defector : Strategy::Cooperator;
  const Strategy mutant = invader == Invader::Cooperator ? Strategy::Cooperator : Strategy::Defector;
  const Outcome success = invader == Invader::Cooperator ? Outcome::FixedC : Outcome::FixedD;

  std::vector<ReplicateRecord> records(replicates);
  parallel_for(replicates, options.workers, [&](std::size_t r) {
    const RngStream stream(seed, r);
    RngStream placement = stream.derive(2);
    StrategyVector s0(g.vertex_count(), resident);
    const auto site = static_cast<VertexId>(placement.below(g.vertex_count()));
    s0.set(site, mutant);
    const AbsorptionResult result =
        run_until_absorption(g, rates, params, s0, options.horizon, stream, options.warmup);
    records[r] = {r, site, result.outcome, result.absorption_time, result.final_coop_fraction};
  });

  FixationEstimate est;
  est.replicates = replicates;
  for (const auto& rec : records) {
    if (rec.outcome == Outcome::Timeout) {
      ++est.timeouts;
    } else if (rec.outcome == success) {
      ++est.fixations;
    } else {
      ++est.extinctions;
    }
  }
  est.interval = binomial_interval(est.fixations, est.fixations + est.extinctions);
  if (options.keep_records) est.records = std::move(records);
  return est;
}

MutationFrequency mutation_stationary_frequency(const Graph& g, const ActivationRates& rates,
                                                const GameParams& params, double burn_in,
                                                std::uint64_t samples, std::uint64_t seed,
                                                double sample_dt) {
  if (!(params.mutation > 0.0)) throw ValidationError("v", "mutation-selection needs v > 0");
  if (!(burn_in >= 0.0)) throw ValidationError("burn_in", "burn-in must be non-negative");
  if (samples == 0) throw ValidationError("samples", "need at least one sample");
  if (!(sample_dt > 0.0)) throw ValidationError("dt", "sampling interval must be positive");

  const RngStream stream(seed, 0);
  RngStream init = stream.derive(2);
  StrategyVector s0(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    s0.set(v, init.bernoulli(0.5) ? Strategy::Cooperator : Strategy::Defector);
  }
  CoEvolution sim(g, ActivationEngine(g.vertex_count(), rates, stream.derive(0)), params, std::move(s0),
                  stream.derive(1));
  sim.advance_to(burn_in);
  std::vector<double> trace;
  trace.reserve(samples);
  for (std::uint64_t k = 0; k < samples; ++k) {
    sim.advance_to(burn_in + static_cast<double>(k + 1) * sample_dt);
    trace.push_back(sim.strategies().coop_fraction());
  }
  MutationFrequency out;
  out.stats = summarize(trace);
  out.mean_coop_fraction = out.stats.mean;
  out.update_events = sim.update_events();
  out.mutation_events = sim.mutation_events();
  return out;
}

void write_size_distribution_csv(std::ostream& out, const Histogram& h, const ActivationRates& rates) {
  const auto log_p = theory::stationary_log_pmf_vector(h.max_value(), rates);
  CsvWriter csv(out);
  csv.header({"size", "count", "frequency", "theory_probability"});
  for (std::size_t i = 0; i <= h.max_value(); ++i) {
    csv.field(static_cast<unsigned long long>(i))
        .field(static_cast<unsigned long long>(h.count(i)))
        .field(h.frequency(i))
        .field(std::exp(log_p[i]));
    csv.end_row();
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const char* value_column) {
  CsvWriter csv(out);
  csv.header({"lambda", "mu", value_column, "std_dev", "samples"});
  for (const auto& r : rows) {
    csv.field(r.lambda).field(r.mu).field(r.value).field(r.std_dev).field(static_cast<unsigned long long>(r.samples));
    csv.end_row();
  }
}

void write_fixation_records_csv(std::ostream& out, std::span<const ReplicateRecord> records) {
  CsvWriter csv(out);
  csv.header({"replicate", "invader_vertex", "outcome", "absorption_time", "final_coop_fraction"});
  for (const auto& r : records) {
    csv.field(static_cast<unsigned long long>(r.replicate))
        .field(static_cast<unsigned long long>(r.invader))
        .field(to_string(r.outcome))
        .field(r.absorption_time)
        .field(r.final_coop_fraction);
    csv.end_row();
  }
}

}  // namespace actnet
