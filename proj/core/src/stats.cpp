#include "actnet/stats.hpp"

#include <algorithm>
#include <cmath>

namespace actnet {
namespace {

// Central moments from weighted values; both summary paths share it.
template <class Visit>
SummaryStats moments(double weight_total, Visit&& visit) {
  SummaryStats s;
  s.count = static_cast<std::uint64_t>(weight_total);
  if (weight_total <= 0.0) return s;
  double sum = 0.0;
  visit([&](double x, double w) { sum += w * x; });
  s.mean = sum / weight_total;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  visit([&](double x, double w) {
    const double d = x - s.mean;
    const double d2 = d * d;
    m2 += w * d2;
    m3 += w * d2 * d;
    m4 += w * d2 * d2;
  });
  m2 /= weight_total;
  m3 /= weight_total;
  m4 /= weight_total;
  s.variance = m2;
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return s;
}

}  // namespace

void Histogram::add(std::size_t value, std::uint64_t times) {
  if (value >= counts_.size()) counts_.resize(value + 1, 0);
  counts_[value] += times;
  total_ += times;
}

void Histogram::merge(const Histogram& other) {
  if (other.counts_.size() > counts_.size()) counts_.resize(other.counts_.size(), 0);
  for (std::size_t i = 0; i < other.counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
}

SummaryStats Histogram::summary() const {
  return moments(static_cast<double>(total_), [&](auto&& f) {
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] != 0) f(static_cast<double>(i), static_cast<double>(counts_[i]));
    }
  });
}

SummaryStats summarize(std::span<const double> values) {
  return moments(static_cast<double>(values.size()), [&](auto&& f) {
    for (double x : values) f(x, 1.0);
  });
}

BinomialInterval binomial_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  BinomialInterval ci;
  if (trials == 0) return ci;
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  ci.estimate = p;
  ci.std_error = std::sqrt(p * (1.0 - p) / n);
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  ci.low = std::max(0.0, centre - half);
  ci.high = std::min(1.0, centre + half);
  return ci;
}

}  // namespace actnet
