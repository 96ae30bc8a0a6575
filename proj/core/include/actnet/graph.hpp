#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace actnet {

class RngStream;

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Immutable undirected simple graph with contiguous vertex ids and sorted
/// adjacency (CSR layout).
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Throws ValidationError on self-loops,
  /// duplicate edges or out-of-range ids.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;
  double mean_degree() const noexcept;

  bool has_edge(VertexId u, VertexId v) const noexcept;
  bool is_connected() const;

  /// Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
};

/// Per-vertex activation flags with a maintained popcount.
class ActiveMask {
 public:
  ActiveMask() = default;
  explicit ActiveMask(std::size_t n, bool value = false);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t count() const noexcept { return count_; }
  bool operator[](VertexId v) const noexcept { return bits_[v] != 0; }
  void set(VertexId v, bool value) noexcept;

  friend bool operator==(const ActiveMask&, const ActiveMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

/// Random k-regular graph (pairing model with local rejection; restarts when
/// the pairing gets stuck, at most `max_restarts` times).
Graph gen_rrg(std::size_t n, std::size_t k, RngStream& rng, int max_restarts = 1000);

/// Watts-Strogatz small world: ring lattice of even degree k, each clockwise
/// lattice edge rewired with probability `p_rewire`.
Graph gen_wsn(std::size_t n, std::size_t k, double p_rewire, RngStream& rng);

/// Barabasi-Albert growth with preferential attachment from an (m+1)-clique.
Graph gen_ban(std::size_t n, std::size_t m, RngStream& rng);

struct EdgeListResult {
  Graph graph;
  std::vector<std::string> labels;  // original token of each dense id
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

/// Parses whitespace-separated "u v" lines. '#' lines and blank lines are
/// skipped; any other line without exactly two tokens is a ParseError.
EdgeListResult load_edge_list(std::string_view text);

/// Inverse of load_edge_list for dense ids: one "u v" line per edge.
std::string write_edge_list(const Graph& g);

/// Largest connected component of the subgraph induced by activated
/// vertices, divided by the total vertex count.
double largest_component_relative_size(const Graph& g, const ActiveMask& mask);

/// Degree of `v` counting only activated neighbours.
std::size_t activated_degree(const Graph& g, const ActiveMask& mask, VertexId v) noexcept;

}  // namespace actnet
