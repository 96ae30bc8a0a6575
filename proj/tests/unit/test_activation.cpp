#include <algorithm>
#include <cmath>
#include <sstream>

#include "actnet/activation.hpp"
#include "actnet/error.hpp"
#include "actnet/experiments.hpp"
#include "actnet/theory.hpp"
#include "doctest.h"

using namespace actnet;

TEST_CASE("initial state is a fair coin with transitions after t0") {
  ActivationRates rates;
  ActivationEngine e(1000, rates, RngStream(1, 0));
  CHECK(std::abs(static_cast<double>(e.activated_count()) - 500.0) < 63.0);
  CHECK(e.now() == 0.0);
  for (VertexId v = 0; v < 1000; ++v) REQUIRE(e.state(v).next_transition >= rates.t0);

  ActivationEngine same(1000, rates, RngStream(1, 0));
  for (VertexId v = 0; v < 1000; ++v) {
    REQUIRE(same.state(v).phase == e.state(v).phase);
    REQUIRE(same.state(v).next_transition == e.state(v).next_transition);
  }
}

TEST_CASE("forced initial phase") {
  ActivationEngine all(50, ActivationRates{}, RngStream(2, 0), InitOptions{1.0});
  CHECK(all.snapshot() == ActiveMask(50, true));
  ActivationEngine none(50, ActivationRates{}, RngStream(2, 0), InitOptions{0.0});
  CHECK(none.activated_count() == 0);
}

TEST_CASE("a single vertex strictly alternates") {
  ActivationEngine e(1, ActivationRates{}, RngStream(3, 0));
  Phase last = e.state(0).phase;
  double t = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto ev = e.step();
    REQUIRE(ev.new_phase != last);
    REQUIRE(ev.time > t);
    last = ev.new_phase;
    t = ev.time;
  }
}

TEST_CASE("event stream invariants over many steps") {
  ActivationEngine e(300, ActivationRates{}, RngStream(4, 0));
  std::size_t count = e.activated_count();
  double t = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const auto ev = e.step();
    REQUIRE(ev.time >= t);
    t = ev.time;
    const std::size_t now = e.activated_count();
    REQUIRE((now == count + 1 || now + 1 == count));
    REQUIRE((now > count) == (ev.new_phase == Phase::Activated));
    count = now;
    REQUIRE(e.state(ev.vertex).next_transition > ev.time);
  }
  CHECK(e.snapshot().count() == e.activated_count());
}

TEST_CASE("advance_to semantics") {
  ActivationEngine e(100, ActivationRates{}, RngStream(5, 0));
  CHECK(e.advance_to(0.0).empty());
  const ActiveMask start = e.snapshot();
  const auto events = e.advance_to(500.0);
  CHECK(e.now() == 500.0);
  CHECK(e.next_event_time() > 500.0);
  CHECK(e.snapshot() == e.snapshot());
  ActiveMask replay = start;
  double t = 0.0;
  for (const auto& ev : events) {
    REQUIRE(ev.time >= t);
    t = ev.time;
    replay.set(ev.vertex, ev.new_phase == Phase::Activated);
  }
  CHECK(replay == e.snapshot());
  CHECK_THROWS_AS(e.advance_to(100.0), ValidationError);
}

TEST_CASE("event trace format") {
  std::ostringstream out;
  write_event_trace(out, {{1.5, 3, Phase::Activated}, {2.0, 1, Phase::Quiescent}});
  CHECK(out.str() == "time,vertex,new_phase\n1.5,3,1\n2,1,0\n");
}

TEST_CASE("symmetric sojourns give half activation") {
  ActivationRates r;
  r.lambda = r.mu = 3.0;
  const auto obs = observe_renewal_pair(r, 1e5, RngStream(6, 0));
  CHECK(obs.activated_fraction_a == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("renewal fraction matches p and vertices are independent") {
  // Exponents below 3 give sojourns of (capped) infinite variance, so a
  // single 1e5 horizon fluctuates by about 0.01 there; those cells average
  // 20 independent runs.
  const double grid[] = {2.6, 3.5, 6.4};
  std::uint64_t id = 0;
  for (double l : grid) {
    for (double m : grid) {
      ActivationRates r;
      r.lambda = l;
      r.mu = m;
      const double p = theory::activation_probability(r).p;
      const int runs = std::min(l, m) < 3.0 ? 20 : 1;
      double fraction = 0.0;
      for (int k = 0; k < runs; ++k) {
        const auto obs = observe_renewal_pair(r, 1e5, RngStream(7, id++));
        fraction += (obs.activated_fraction_a + obs.activated_fraction_b) / (2.0 * runs);
        CHECK(std::abs(obs.covariance) < 0.01);
      }
      CHECK(std::abs(fraction - p) < 0.01);
    }
  }
}

TEST_CASE("engine with no vertices") {
  ActivationEngine e(0, ActivationRates{}, RngStream(8, 0));
  CHECK(e.advance_to(10.0).empty());
  CHECK_THROWS_AS(e.step(), Error);
}
