#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "actnet/game.hpp"
#include "actnet/graph.hpp"
#include "actnet/sampling.hpp"
#include "actnet/stats.hpp"

namespace actnet {

/// Observation times burn_in, burn_in + dt, ..., up to horizon inclusive.
/// Sampling at fixed simulation-time intervals avoids the length bias of
/// sampling at event times.
struct SamplingSpec {
  double burn_in = 50.0;
  double horizon = 600.0;
  double dt = 1.0;

  void validate() const;
  std::size_t sample_count() const;
  double sample_time(std::size_t k) const { return burn_in + static_cast<double>(k) * dt; }
};

struct RatePoint {
  double lambda = 0.0;
  double mu = 0.0;
};

/// Cross product lambdas x mus, lambda-major.
std::vector<RatePoint> rate_grid(std::span<const double> lambdas, std::span<const double> mus);

// --- activated-subgraph size ------------------------------------------------

Histogram collect_size_distribution(std::size_t n, const ActivationRates& rates,
                                    const SamplingSpec& sampling, const RngStream& rng);

inline Histogram collect_size_distribution(const Graph& g, const ActivationRates& rates,
                                           const SamplingSpec& sampling, const RngStream& rng) {
  return collect_size_distribution(g.vertex_count(), rates, sampling, rng);
}

/// KL(Q || P) between empirical size frequencies Q (support 0..n with n the
/// histogram's max value) and the stationary binomial law P.
double kl_divergence(const Histogram& empirical, const ActivationRates& rates);

/// KL against an explicit log-probability vector (index = size).
double kl_divergence(const Histogram& empirical, std::span<const double> log_p);

// --- activated-subgraph topology --------------------------------------------

struct DegreeStats {
  SummaryStats stats;
  Histogram histogram;
};

/// Pools the activated-subgraph degree of every activated vertex over all
/// sample times.
DegreeStats activated_degree_stats(const Graph& g, const ActivationRates& rates,
                                   const SamplingSpec& sampling, const RngStream& rng);

struct SweepRow {
  double lambda = 0.0;
  double mu = 0.0;
  double value = 0.0;     // time average of the observable
  double std_dev = 0.0;   // across sample times
  std::uint64_t samples = 0;
};

/// Time-averaged largest-component relative size per grid point. Grid point
/// i uses stream (seed, i).
std::vector<SweepRow> largest_component_sweep(const Graph& g, const ActivationRates& base,
                                              std::span<const RatePoint> grid,
                                              const SamplingSpec& sampling, std::uint64_t seed,
                                              unsigned workers = 0);

/// Time-averaged mean degree of the activated subgraph per grid point.
std::vector<SweepRow> mean_degree_sweep(const Graph& g, const ActivationRates& base,
                                        std::span<const RatePoint> grid,
                                        const SamplingSpec& sampling, std::uint64_t seed,
                                        unsigned workers = 0);

// --- single-vertex renewal --------------------------------------------------

struct RenewalObservation {
  double activated_fraction_a = 0.0;  // time average of vertex 0
  double activated_fraction_b = 0.0;  // time average of vertex 1
  double covariance = 0.0;            // time-average covariance of the two indicators
};

/// Runs a two-vertex engine on [0, horizon] and integrates the activation
/// indicators exactly between events.
RenewalObservation observe_renewal_pair(const ActivationRates& rates, double horizon,
                                        const RngStream& rng);

// --- one-step walk ------------------------------------------------------------

struct WalkStepEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double frequency = 0.0;
};

/// At stationary snapshots, picks a vertex and one designated neighbour
/// uniformly, takes one lazy walk step (uniform among activated neighbours,
/// stay if none) and counts arrivals at the designated neighbour.
WalkStepEstimate empirical_walk_step(const Graph& g, const ActivationRates& rates,
                                     const SamplingSpec& sampling, std::uint64_t trials,
                                     const RngStream& rng);

// --- fixation -----------------------------------------------------------------

enum class Invader { Cooperator, Defector };

struct FixationOptions {
  double horizon = 1.0e5;
  double warmup = 50.0;   // activation burn-in before the invader appears
  unsigned workers = 0;
  bool keep_records = true;
};

struct ReplicateRecord {
  std::uint64_t replicate = 0;
  VertexId invader = 0;
  Outcome outcome = Outcome::Timeout;
  double absorption_time = 0.0;
  double final_coop_fraction = 0.0;
};

struct FixationEstimate {
  std::uint64_t replicates = 0;
  std::uint64_t fixations = 0;    // invader strategy took over
  std::uint64_t extinctions = 0;  // resident strategy restored
  std::uint64_t timeouts = 0;     // excluded from the estimate
  BinomialInterval interval;      // fixations / (fixations + extinctions)
  std::vector<ReplicateRecord> records;

  double probability() const noexcept { return interval.estimate; }
};

/// One uniformly placed invader per replicate in the opposite monomorphic
/// population; replicate r uses stream (seed, r) regardless of worker count.
FixationEstimate estimate_fixation(const Graph& g, const ActivationRates& rates,
                                   const GameParams& params, Invader invader,
                                   std::uint64_t replicates, std::uint64_t seed,
                                   const FixationOptions& options = {});

// --- mutation-selection ---------------------------------------------------------

struct MutationFrequency {
  double mean_coop_fraction = 0.0;
  SummaryStats stats;
  std::uint64_t update_events = 0;
  std::uint64_t mutation_events = 0;
};

/// Starts from a uniformly random strategy profile, runs `burn_in` time
/// units, then averages p_C over `samples` observations `sample_dt` apart.
MutationFrequency mutation_stationary_frequency(const Graph& g, const ActivationRates& rates,
                                                const GameParams& params, double burn_in,
                                                std::uint64_t samples, std::uint64_t seed,
                                                double sample_dt = 1.0);

// --- CSV emitters -------------------------------------------------------------

void write_size_distribution_csv(std::ostream& out, const Histogram& h, const ActivationRates& rates);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const char* value_column);
void write_fixation_records_csv(std::ostream& out, std::span<const ReplicateRecord> records);

}  // namespace actnet
