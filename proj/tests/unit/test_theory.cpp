#include <algorithm>
#include <cmath>
#include <vector>

#include "actnet/error.hpp"
#include "actnet/theory.hpp"
#include "doctest.h"

using namespace actnet;
using namespace actnet::theory;

namespace {

ActivationRates rates_of(double lambda, double mu) {
  ActivationRates r;
  r.lambda = lambda;
  r.mu = mu;
  return r;
}

// The target is activated along with d-1 of the other k-1 neighbours and
// is then picked with probability 1/d; C(k-1,d-1)/d = C(k,d)/k.
double lemma3_oracle(std::size_t k, double p) {
  double sum = 0.0;
  for (std::size_t d = 1; d <= k; ++d) {
    const double log_c = std::lgamma(k + 1.0) - std::lgamma(d + 1.0) - std::lgamma(k - d + 1.0);
    sum += std::exp(log_c + d * std::log(p) + (k - d) * std::log1p(-p)) / static_cast<double>(k);
  }
  return sum;
}

}  // namespace

TEST_CASE("activation probability") {
  CHECK(activation_probability(rates_of(3.0, 3.0)).p == doctest::Approx(0.5));
  CHECK(activation_probability(rates_of(3.5, 2.6)).p == doctest::Approx(2.4 / 3.9).epsilon(1e-12));
  CHECK(activation_probability(rates_of(3.5, 3.7)).p == doctest::Approx(4.05 / 8.3).epsilon(1e-12));
  CHECK_THROWS_AS(activation_probability(rates_of(2.0, 3.0)), ValidationError);
  CHECK_THROWS_AS(ActivationProbability::from_value(0.0), ValidationError);
  CHECK_THROWS_AS(ActivationProbability::from_value(1.1), ValidationError);
}

TEST_CASE("stationary pmf") {
  const auto sym = rates_of(3.0, 3.0);
  CHECK(std::exp(stationary_log_pmf(2, 0, sym)) == doctest::Approx(0.25));
  CHECK(std::exp(stationary_log_pmf(2, 1, sym)) == doctest::Approx(0.5));
  CHECK(std::exp(stationary_log_pmf(2, 2, sym)) == doctest::Approx(0.25));
  CHECK_THROWS_AS(stationary_log_pmf(2, 3, sym), ValidationError);

  const auto r = rates_of(3.5, 2.6);
  for (std::size_t n : {1000u, 5000u}) {
    const auto lp = stationary_log_pmf_vector(n, r);
    double total = 0.0;
    for (double x : lp) total += std::exp(x);
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
  const auto lp = stationary_log_pmf_vector(1000, r);
  const auto mode = std::max_element(lp.begin(), lp.end()) - lp.begin();
  CHECK((mode == 615 || mode == 616));
}

TEST_CASE("moments agree with the summed pmf") {
  for (auto r : {rates_of(3.5, 2.6), rates_of(2.6, 6.4), rates_of(6.4, 2.6), rates_of(3.0, 3.0)}) {
    const auto lp = stationary_log_pmf_vector(1000, r);
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < lp.size(); ++i) {
      const double w = std::exp(lp[i]);
      m1 += w * i;
      m2 += w * double(i) * double(i);
    }
    const auto mom = activated_moments(1000, r);
    CHECK(std::abs(mom.mean - m1) / m1 < 1e-9);
    CHECK(std::abs(mom.variance - (m2 - m1 * m1)) / mom.variance < 1e-9);
  }
  const auto mom = activated_moments(1000, rates_of(3.5, 2.6));
  CHECK(mom.mean == doctest::Approx(615.3846).epsilon(1e-6));
  CHECK(mom.variance == doctest::Approx(236.6864).epsilon(1e-6));
}

TEST_CASE("subgraph pmf") {
  const auto r = rates_of(3.5, 2.6);
  const double p = activation_probability(r).p;
  CHECK(subgraph_pmf(1, 1, r) == doctest::Approx(p));
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i <= 8; ++i) {
    total += subgraph_pmf(8, i, r);
    mean += i * subgraph_pmf(8, i, r);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean == doctest::Approx(4.923).epsilon(1e-3));
  CHECK_THROWS_AS(subgraph_pmf(0, 0, r), ValidationError);
  CHECK_THROWS_AS(subgraph_pmf(3, 4, r), ValidationError);
}

TEST_CASE("one-step walk probability against the binomial-sum oracle") {
  for (std::size_t k = 1; k <= 64; ++k) {
    for (int j = 1; j <= 20; ++j) {
      const double p = j / 20.0 - 0.025;
      const double closed = one_step_walk_prob(k, ActivationProbability::from_value(p));
      const double oracle = lemma3_oracle(k, p);
      REQUIRE(std::abs(closed - oracle) / oracle < 1e-12);
    }
  }
  const auto p = activation_probability(rates_of(3.5, 2.6));
  CHECK(one_step_walk_prob(8, p) == doctest::Approx(0.124940).epsilon(1e-5));
  CHECK(one_step_walk_prob(1, p) == doctest::Approx(p.p));
  CHECK(one_step_walk_prob(5, ActivationProbability::from_value(1.0)) == doctest::Approx(0.2));
  CHECK_THROWS_AS(one_step_walk_prob(0, p), ValidationError);
}

TEST_CASE("critical benefit-to-cost ratio") {
  const auto r = rates_of(3.5, 2.6);
  const double p = activation_probability(r).p;
  auto direct = [&](double n, double k) {
    return (n - 2.0) / (n * (1.0 - std::pow(1.0 - p, k)) / k - 2.0);
  };
  CHECK(critical_bc(1000, 4, r) == doctest::Approx(direct(1000, 4)).epsilon(1e-12));
  CHECK(critical_bc(1000, 4, r) == doctest::Approx(4.115).epsilon(1e-3));
  CHECK(critical_bc(100, 4, r) == doctest::Approx(direct(100, 4)).epsilon(1e-12));
  // p -> 1 recovers (n-2)/(n/k-2), which tends to k.
  CHECK(critical_bc(100000, 4, ActivationProbability::from_value(1.0)) == doctest::Approx(4.0).epsilon(1e-3));
  double last = INFINITY;
  for (int j = 1; j <= 20; ++j) {
    const double v = critical_bc(1000, 4, ActivationProbability::from_value(0.3 + 0.035 * j));
    REQUIRE(v < last);
    last = v;
  }
  CHECK_THROWS_AS(critical_bc(10, 8, r), ValidationError);
}
