#include <cmath>
#include <sstream>
#include <vector>

#include "actnet/csv.hpp"
#include "actnet/stats.hpp"
#include "doctest.h"

using namespace actnet;

TEST_CASE("summary moments on known samples") {
  const std::vector<double> sym{1, 2, 3, 4, 5};
  const auto s = summarize(sym);
  CHECK(s.mean == doctest::Approx(3.0));
  CHECK(s.variance == doctest::Approx(2.0));
  CHECK(s.skewness == doctest::Approx(0.0));
  // Discrete uniform on 5 points: m4 / m2^2 = 6.8 / 4 = 1.7.
  CHECK(s.excess_kurtosis == doctest::Approx(1.7 - 3.0));

  const std::vector<double> skewed{0, 0, 0, 1};
  const auto k = summarize(skewed);
  // Bernoulli(1/4): skewness (1-2p)/sqrt(p q), excess kurtosis (1-6pq)/(pq).
  const double pq = 0.25 * 0.75;
  CHECK(k.skewness == doctest::Approx(0.5 / std::sqrt(pq)));
  CHECK(k.excess_kurtosis == doctest::Approx((1 - 6 * pq) / pq));

  const std::vector<double> flat{2, 2, 2};
  const auto f = summarize(flat);
  CHECK(f.variance == 0.0);
  CHECK(f.skewness == 0.0);
}

TEST_CASE("histogram summary equals the expanded sample") {
  Histogram h(3);
  h.add(0, 2);
  h.add(2);
  h.add(7, 3);
  CHECK(h.max_value() == 7);
  CHECK(h.total() == 6);
  std::vector<double> expanded{0, 0, 2, 7, 7, 7};
  const auto a = h.summary();
  const auto b = summarize(expanded);
  CHECK(a.mean == doctest::Approx(b.mean));
  CHECK(a.variance == doctest::Approx(b.variance));
  CHECK(a.skewness == doctest::Approx(b.skewness));
  CHECK(a.excess_kurtosis == doctest::Approx(b.excess_kurtosis));
  CHECK(h.frequency(7) == doctest::Approx(0.5));

  Histogram other(1);
  other.add(1);
  Histogram merged = h;
  merged.merge(other);
  CHECK(merged.total() == 7);
  CHECK(merged.count(1) == 1);
  Histogram reversed = other;
  reversed.merge(h);
  CHECK(reversed == merged);
}

TEST_CASE("Wilson interval") {
  const auto ci = binomial_interval(20, 1000);
  CHECK(ci.estimate == doctest::Approx(0.02));
  CHECK(ci.std_error == doctest::Approx(std::sqrt(0.02 * 0.98 / 1000)));
  CHECK(ci.low < 0.02);
  CHECK(ci.high > 0.02);
  CHECK(ci.low == doctest::Approx(0.01299).epsilon(1e-3));
  CHECK(ci.high == doctest::Approx(0.03070).epsilon(1e-3));
  const auto zero = binomial_interval(0, 50);
  CHECK(zero.low == 0.0);
  CHECK(zero.high > 0.0);
  const auto none = binomial_interval(0, 0);
  CHECK(none.estimate == 0.0);
}

TEST_CASE("csv writer") {
  std::ostringstream out;
  CsvWriter csv(out);
  csv.header({"a", "b", "c"});
  csv.field(0.1).field(3).field("x");
  csv.end_row();
  csv.field(1e-20).field(-2LL).field(std::nan(""));
  csv.end_row();
  CHECK(out.str() == "a,b,c\n0.1,3,x\n1e-20,-2,nan\n");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}
