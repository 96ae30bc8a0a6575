#pragma once

#include <cstddef>
#include <vector>

#include "actnet/sampling.hpp"

namespace actnet::theory {

/// Stationary probability that a single vertex is activated.
struct ActivationProbability {
  double p = 0.5;

  /// Constructs from a raw probability; throws unless 0 < p <= 1.
  static ActivationProbability from_value(double p);
};

/// p = (mu-1)(lambda-2) / [(mu-1)(lambda-2) + (lambda-1)(mu-2)], the ratio
/// of the mean activated sojourn to the mean cycle length (untruncated).
ActivationProbability activation_probability(const ActivationRates& rates);

/// Log of the stationary probability of exactly `i` activated vertices out
/// of `n`. Binomial(n, p) evaluated in log space through lgamma so that
/// large n never overflows.
double stationary_log_pmf(std::size_t n, std::size_t i, const ActivationRates& rates);

/// The whole vector log P_0 .. log P_n.
std::vector<double> stationary_log_pmf_vector(std::size_t n, const ActivationRates& rates);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean n*p and variance n*p*(1-p) of the activated count.
Moments activated_moments(std::size_t n, const ActivationRates& rates);

/// Probability that exactly `i` of an arbitrary subset of `n_prime` vertices
/// are activated.
double subgraph_pmf(std::size_t n_prime, std::size_t i, const ActivationRates& rates);

/// Expected probability that a one-step walk from a vertex of degree k moves
/// to one particular neighbour: [1 - (1-p)^k] / k.
double one_step_walk_prob(std::size_t degree, ActivationProbability p);

/// Critical benefit-to-cost ratio for a k-regular network of n vertices:
/// (n-2) / (n [1-(1-p)^k] / k - 2). Throws ValidationError when the
/// denominator is not positive (cooperation cannot be favoured).
double critical_bc(std::size_t n, std::size_t k, const ActivationRates& rates);
double critical_bc(std::size_t n, std::size_t k, ActivationProbability p);

}  // namespace actnet::theory
