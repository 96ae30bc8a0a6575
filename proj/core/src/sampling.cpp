#include "actnet/sampling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "actnet/error.hpp"

namespace actnet {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t master_seed, std::uint64_t stream_id) {
  std::uint64_t state = master_seed;
  const std::uint64_t a = splitmix64(state);
  state ^= stream_id * 0xd1b54a32d192ed03ULL;
  const std::uint64_t b = splitmix64(state);
  const std::uint64_t c = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

void check_power_law_args(double alpha, double t0, double cap) {
  if (!(alpha > 2.0)) {
    throw ValidationError("alpha", "power-law exponent must exceed 2, got " + std::to_string(alpha));
  }
  if (!(t0 > 0.0)) {
    throw ValidationError("t0", "lower bound t0 must be positive");
  }
  if (!(cap >= t0)) {
    throw ValidationError("cap", "truncation cap must be at least t0");
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id), engine_(make_engine(master_seed, stream_id)) {}

RngStream RngStream::derive(std::uint64_t salt) const {
  std::uint64_t state = master_seed_ ^ 0x6a09e667f3bcc909ULL;
  std::uint64_t child_master = splitmix64(state);
  state ^= stream_id_;
  child_master ^= splitmix64(state);
  return RngStream(child_master, salt);
}

double RngStream::uniform_open() {
  // 53 random bits placed at the centre of their bucket: (k + 0.5) / 2^53.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t RngStream::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  u128 m = static_cast<u128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

void ActivationRates::validate() const {
  if (!(lambda > 2.0)) throw ValidationError("lambda", "lambda must exceed 2");
  if (!(mu > 2.0)) throw ValidationError("mu", "mu must exceed 2");
  if (!(t0 > 0.0)) throw ValidationError("t0", "t0 must be positive");
  if (!(cap >= t0)) throw ValidationError("cap", "cap must be at least t0");
}

bool ActivationRates::truncation_bias_warning() const noexcept {
  return lambda < 2.5 || mu < 2.5;
}

double power_law_from_uniform(double alpha, double t0, double cap, double r) {
  const double t = t0 * std::pow(r, 1.0 / (1.0 - alpha));
  return t < cap ? t : cap;
}

double sample_power_law(double alpha, double t0, double cap, RngStream& rng) {
  check_power_law_args(alpha, t0, cap);
  return power_law_from_uniform(alpha, t0, cap, rng.uniform_open());
}

double sample_exponential(double rate, RngStream& rng) {
  if (!(rate > 0.0)) throw ValidationError("rate", "exponential rate must be positive");
  return -std::log(rng.uniform_open()) / rate;
}

double truncated_mean(double alpha, double t0, double cap) {
  if (!(alpha > 2.0)) throw ValidationError("alpha", "power-law exponent must exceed 2");
  if (std::isinf(cap)) return (alpha - 1.0) / (alpha - 2.0) * t0;
  return (alpha - 1.0) / (2.0 - alpha) * std::pow(t0, alpha - 1.0) * std::pow(cap, 2.0 - alpha) +
         (alpha - 1.0) / (alpha - 2.0) * t0;
}

double truncated_power_law_cdf(double alpha, double t0, double cap, double t) {
  if (t < t0) return 0.0;
  if (t >= cap) return 1.0;
  return 1.0 - std::pow(t / t0, 1.0 - alpha);
}

}  // namespace actnet
