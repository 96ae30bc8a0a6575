#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace actnet {

/// Population moments (no small-sample correction).
struct SummaryStats {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::uint64_t count = 0;
};

/// Counts of integer observations 0..max_value.
class Histogram {
 public:
  Histogram() = default;
  explicit Histogram(std::size_t max_value) : counts_(max_value + 1, 0) {}

  void add(std::size_t value, std::uint64_t times = 1);
  void merge(const Histogram& other);

  std::size_t max_value() const noexcept { return counts_.empty() ? 0 : counts_.size() - 1; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t count(std::size_t value) const noexcept {
    return value < counts_.size() ? counts_[value] : 0;
  }
  double frequency(std::size_t value) const noexcept {
    return total_ == 0 ? 0.0 : static_cast<double>(count(value)) / static_cast<double>(total_);
  }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  SummaryStats summary() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

SummaryStats summarize(std::span<const double> values);

/// Wilson score interval for a binomial proportion.
struct BinomialInterval {
  double estimate = 0.0;
  double std_error = 0.0;
  double low = 0.0;
  double high = 0.0;
};

BinomialInterval binomial_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

}  // namespace actnet
