#include <algorithm>
#include <set>
#include <vector>

#include "actnet/error.hpp"
#include "actnet/graph.hpp"
#include "actnet/sampling.hpp"
#include "doctest.h"

using namespace actnet;

namespace {

void check_simple_symmetric(const Graph& g) {
  std::size_t degree_sum = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto adj = g.neighbors(v);
    degree_sum += adj.size();
    REQUIRE(std::is_sorted(adj.begin(), adj.end()));
    REQUIRE(std::adjacent_find(adj.begin(), adj.end()) == adj.end());
    for (VertexId u : adj) {
      REQUIRE(u < g.vertex_count());
      REQUIRE(u != v);
      REQUIRE(g.has_edge(u, v));
    }
  }
  REQUIRE(degree_sum == 2 * g.edge_count());
}

// Brute-force largest component over the activated subgraph by repeated
// label propagation; independent of the library's BFS.
std::size_t largest_component_oracle(const Graph& g, const ActiveMask& mask) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = v;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [u, v] : g.edges()) {
      if (!mask[u] || !mask[v]) continue;
      const std::size_t m = std::min(label[u], label[v]);
      if (label[u] != m || label[v] != m) {
        label[u] = label[v] = m;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> size(n, 0);
  std::size_t best = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (mask[static_cast<VertexId>(v)]) best = std::max(best, ++size[label[v]]);
  }
  return best;
}

}  // namespace

TEST_CASE("from_edges rejects malformed input") {
  const std::vector<Edge> loop{{0, 0}};
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), ValidationError);
  CHECK_THROWS_AS(Graph::from_edges(3, dup), ValidationError);
  CHECK_THROWS_AS(Graph::from_edges(3, range), ValidationError);
}

TEST_CASE("rrg on 4 vertices with degree 3 is K4") {
  RngStream rng(1, 0);
  const Graph g = gen_rrg(4, 3, rng);
  CHECK(g.edge_count() == 6);
  for (VertexId u = 0; u < 4; ++u)
    for (VertexId v = 0; v < 4; ++v)
      if (u != v) CHECK(g.has_edge(u, v));
}

TEST_CASE("rrg degree is a point mass") {
  RngStream rng(2, 0);
  const Graph g = gen_rrg(1000, 8, rng);
  CHECK(g.edge_count() == 4000);
  for (VertexId v = 0; v < g.vertex_count(); ++v) REQUIRE(g.degree(v) == 8);
  check_simple_symmetric(g);
}

TEST_CASE("rrg infeasible parameters") {
  RngStream rng(3, 0);
  CHECK_THROWS_AS(gen_rrg(5, 3, rng), ValidationError);
  CHECK_THROWS_AS(gen_rrg(5, 5, rng), ValidationError);
}

TEST_CASE("generators produce simple symmetric graphs over many seeds") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 1);
    const Graph r = gen_rrg(60, 4, rng);
    const Graph w = gen_wsn(60, 6, 0.4, rng);
    const Graph b = gen_ban(60, 3, rng);
    check_simple_symmetric(r);
    check_simple_symmetric(w);
    check_simple_symmetric(b);
    REQUIRE(r.vertex_count() == 60);
    REQUIRE(w.edge_count() == 180);
    REQUIRE(b.edge_count() == 6 + 3 * 56);
  }
}

TEST_CASE("rrg is reproducible") {
  RngStream a(7, 7);
  RngStream b(7, 7);
  CHECK(gen_rrg(200, 8, a) == gen_rrg(200, 8, b));
}

TEST_CASE("wsn without rewiring is the ring lattice") {
  RngStream rng(4, 0);
  const Graph g = gen_wsn(10, 4, 0.0, rng);
  CHECK(g.edge_count() == 20);
  for (VertexId v = 0; v < 10; ++v) {
    CHECK(g.has_edge(v, (v + 1) % 10));
    CHECK(g.has_edge(v, (v + 2) % 10));
    CHECK(!g.has_edge(v, (v + 3) % 10));
  }
}

TEST_CASE("wsn keeps the edge count under rewiring") {
  RngStream rng(5, 0);
  for (double p : {0.0, 0.4, 1.0}) {
    const Graph g = gen_wsn(2000, 8, p, rng);
    CHECK(g.mean_degree() == doctest::Approx(8.0));
    check_simple_symmetric(g);
  }
  const Graph rewired = gen_wsn(2000, 8, 0.4, rng);
  std::size_t lattice = 0;
  for (const auto& [u, v] : rewired.edges()) {
    const std::size_t d = std::min<std::size_t>(v - u, 2000 - (v - u));
    lattice += d <= 4;
  }
  // Roughly 60% of lattice edges survive rewiring.
  CHECK(lattice > 0.55 * 8000);
  CHECK(lattice < 0.70 * 8000);
}

TEST_CASE("wsn parameter validation") {
  RngStream rng(6, 0);
  CHECK_THROWS_AS(gen_wsn(10, 11, 0.1, rng), ValidationError);
  CHECK_THROWS_AS(gen_wsn(10, 3, 0.1, rng), ValidationError);
  CHECK_THROWS_AS(gen_wsn(10, 4, 1.5, rng), ValidationError);
}

TEST_CASE("ban seed clique and heavy tail") {
  RngStream rng(8, 0);
  const Graph seed_only = gen_ban(5, 4, rng);
  CHECK(seed_only.edge_count() == 10);
  for (std::uint64_t s = 0; s < 5; ++s) {
    RngStream r(s, 9);
    const Graph g = gen_ban(2000, 4, r);
    CHECK(g.mean_degree() == doctest::Approx(8.0).epsilon(0.01));
    CHECK(static_cast<double>(g.max_degree()) / g.mean_degree() > 5.0);
    CHECK(g.is_connected());
  }
  CHECK_THROWS_AS(gen_ban(5, 0, rng), ValidationError);
  CHECK_THROWS_AS(gen_ban(5, 5, rng), ValidationError);
}

TEST_CASE("edge list loading") {
  auto path = load_edge_list("0 1\n1 2");
  CHECK(path.graph.vertex_count() == 3);
  CHECK(path.graph.edge_count() == 2);

  auto dup = load_edge_list("a b\nb a\n# c");
  CHECK(dup.graph.vertex_count() == 2);
  CHECK(dup.graph.edge_count() == 1);
  CHECK(dup.duplicates_dropped == 1);
  CHECK(dup.labels == std::vector<std::string>{"a", "b"});

  auto loops = load_edge_list("x x\nx y\n\n");
  CHECK(loops.self_loops_dropped == 1);
  CHECK(loops.graph.edge_count() == 1);

  try {
    load_edge_list("x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(load_edge_list("0 1\n1 2 3"), ParseError);
}

TEST_CASE("edge list round trip") {
  RngStream rng(10, 0);
  const Graph g = gen_wsn(100, 4, 0.3, rng);
  const auto back = load_edge_list(write_edge_list(g));
  // Dense ids are assigned in first-seen order, which for this writer keeps
  // every id that appears in an edge.
  CHECK(back.graph.edge_count() == g.edge_count());
  CHECK(back.graph.vertex_count() == g.vertex_count());
}

TEST_CASE("largest component of the activated subgraph") {
  const std::vector<Edge> path_edges{{0, 1}, {1, 2}};
  const Graph path = Graph::from_edges(3, path_edges);
  ActiveMask none(3, false);
  ActiveMask all(3, true);
  ActiveMask ends(3, false);
  ends.set(0, true);
  ends.set(2, true);
  CHECK(largest_component_relative_size(path, none) == 0.0);
  CHECK(largest_component_relative_size(path, all) == 1.0);
  CHECK(largest_component_relative_size(path, ends) == doctest::Approx(1.0 / 3.0));
  CHECK(activated_degree(path, ends, 1) == 2);
  CHECK(activated_degree(path, ends, 0) == 0);

  RngStream rng(12, 0);
  const Graph g = gen_wsn(300, 4, 0.2, rng);
  for (int trial = 0; trial < 20; ++trial) {
    ActiveMask m(300);
    for (VertexId v = 0; v < 300; ++v) m.set(v, rng.bernoulli(0.6));
    CHECK(largest_component_relative_size(g, m) ==
          doctest::Approx(static_cast<double>(largest_component_oracle(g, m)) / 300.0));
  }
}

TEST_CASE("active mask keeps its count") {
  ActiveMask m(5);
  m.set(1, true);
  m.set(1, true);
  m.set(3, true);
  CHECK(m.count() == 2);
  m.set(1, false);
  CHECK(m.count() == 1);
}
