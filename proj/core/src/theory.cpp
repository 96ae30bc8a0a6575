#include "actnet/theory.hpp"

#include <cmath>
#include <string>

#include "actnet/error.hpp"

namespace actnet::theory {
namespace {

// log of the two binomial weights: (mu-1)(lambda-2) for activated and
// (lambda-1)(mu-2) for quiescent, and of their sum.
struct LogWeights {
  double active;
  double quiescent;
  double total;
};

LogWeights log_weights(const ActivationRates& rates) {
  rates.validate();
  const double a = (rates.mu - 1.0) * (rates.lambda - 2.0);
  const double q = (rates.lambda - 1.0) * (rates.mu - 2.0);
  return {std::log(a), std::log(q), std::log(a + q)};
}

double log_choose(std::size_t n, std::size_t i) {
  const auto nd = static_cast<double>(n);
  const auto id = static_cast<double>(i);
  return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) - std::lgamma(nd - id + 1.0);
}

}  // namespace

ActivationProbability ActivationProbability::from_value(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("p", "activation probability must lie in (0, 1]");
  return {p};
}

ActivationProbability activation_probability(const ActivationRates& rates) {
  rates.validate();
  const double a = (rates.mu - 1.0) * (rates.lambda - 2.0);
  const double q = (rates.lambda - 1.0) * (rates.mu - 2.0);
  return {a / (a + q)};
}

double stationary_log_pmf(std::size_t n, std::size_t i, const ActivationRates& rates) {
  if (i > n) throw ValidationError("i", "activated count exceeds vertex count");
  const LogWeights w = log_weights(rates);
  const auto id = static_cast<double>(i);
  const auto rest = static_cast<double>(n - i);
  return log_choose(n, i) + id * w.active + rest * w.quiescent - static_cast<double>(n) * w.total;
}

std::vector<double> stationary_log_pmf_vector(std::size_t n, const ActivationRates& rates) {
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = stationary_log_pmf(n, i, rates);
  return out;
}

Moments activated_moments(std::size_t n, const ActivationRates& rates) {
  const double p = activation_probability(rates).p;
  const auto nd = static_cast<double>(n);
  return {nd * p, nd * p * (1.0 - p)};
}

double subgraph_pmf(std::size_t n_prime, std::size_t i, const ActivationRates& rates) {
  if (n_prime < 1) throw ValidationError("n_prime", "subgraph must contain at least one vertex");
  return std::exp(stationary_log_pmf(n_prime, i, rates));
}

double one_step_walk_prob(std::size_t degree, ActivationProbability p) {
  if (degree == 0) throw ValidationError("k", "one-step walk needs a vertex with at least one neighbour");
  const auto k = static_cast<double>(degree);
  return -std::expm1(k * std::log1p(-p.p)) / k;
}

double critical_bc(std::size_t n, std::size_t k, ActivationProbability p) {
  if (k == 0) throw ValidationError("k", "degree must be positive");
  const auto nd = static_cast<double>(n);
  const double denom = nd * one_step_walk_prob(k, p) - 2.0;
  if (!(denom > 0.0)) {
    throw ValidationError("k", "n [1-(1-p)^k]/k - 2 = " + std::to_string(denom) +
                                   " is not positive; cooperation cannot be favoured");
  }
  return (nd - 2.0) / denom;
}

double critical_bc(std::size_t n, std::size_t k, const ActivationRates& rates) {
  return critical_bc(n, k, activation_probability(rates));
}

}  // namespace actnet::theory
