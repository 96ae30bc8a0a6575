#pragma once

#include <cstdint>
#include <random>

namespace actnet {

/// Seedable random stream. A stream is identified by a master seed and a
/// stream id (typically the replicate index); the pair fully determines the
/// variate sequence, and distinct ids yield independent streams.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open();

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double probability) { return uniform_open() < probability; }

  /// Independent child stream keyed by `salt`, e.g. one per subsystem of a
  /// replicate. Depends only on (master_seed, stream_id, salt).
  RngStream derive(std::uint64_t salt) const;

  // UniformRandomBitGenerator, so std::shuffle and friends accept a stream.
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Power-law sojourn parameters: exponents for the quiescent (lambda) and
/// activated (mu) phases, lower bound t0 and truncation cap.
struct ActivationRates {
  double lambda = 3.5;
  double mu = 2.6;
  double t0 = 1.0;
  double cap = 1.0e4;

  /// Throws ValidationError naming the offending field.
  void validate() const;

  /// True when either exponent is below the recommended 2.5, where the
  /// truncation bias of the sojourn mean is no longer negligible.
  bool truncation_bias_warning() const noexcept;

  friend bool operator==(const ActivationRates&, const ActivationRates&) = default;
};

/// Inverse-transform draw from the power-law density with exponent `alpha`
/// on [t0, inf), clamped to `cap`. Result lies in [t0, cap].
double sample_power_law(double alpha, double t0, double cap, RngStream& rng);

/// Same transform for an externally supplied uniform `r` in (0, 1].
double power_law_from_uniform(double alpha, double t0, double cap, double r);

double sample_exponential(double rate, RngStream& rng);

/// Mean of the power-law variate restricted to [t0, cap].
double truncated_mean(double alpha, double t0, double cap);

/// Cumulative distribution of the clamped variate produced by
/// sample_power_law: P(T <= t).
double truncated_power_law_cdf(double alpha, double t0, double cap, double t);

}  // namespace actnet
