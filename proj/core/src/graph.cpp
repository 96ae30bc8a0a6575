#include "actnet/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "actnet/error.hpp"
#include "actnet/sampling.hpp"

namespace actnet {
namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Mutable adjacency used while generators rewire or grow.
class AdjacencyBuilder {
 public:
  explicit AdjacencyBuilder(std::size_t n) : adj_(n) {}

  bool has(VertexId u, VertexId v) const { return adj_[u].count(v) != 0; }
  void add(VertexId u, VertexId v) {
    adj_[u].insert(v);
    adj_[v].insert(u);
  }
  void remove(VertexId u, VertexId v) {
    adj_[u].erase(v);
    adj_[v].erase(u);
  }
  std::size_t degree(VertexId v) const { return adj_[v].size(); }

  Graph build() const {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < adj_.size(); ++u) {
      for (VertexId v : adj_[u]) {
        if (u < v) edges.emplace_back(u, v);
      }
    }
    return Graph::from_edges(adj_.size(), edges);
  }

 private:
  std::vector<std::set<VertexId>> adj_;
};

}  // namespace

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<VertexId>::max()) {
    throw ValidationError("n", "vertex count exceeds the 32-bit id space");
  }
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw ValidationError("edges", "edge endpoint out of range");
    if (u == v) throw ValidationError("edges", "self-loop on vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.neighbors_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw ValidationError("edges", "duplicate edge at vertex " + std::to_string(v));
    }
  }
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (VertexId v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
  return best;
}

double Graph::mean_degree() const noexcept {
  const auto n = vertex_count();
  return n == 0 ? 0.0 : static_cast<double>(neighbors_.size()) / static_cast<double>(n);
}

bool Graph::has_edge(VertexId u, VertexId v) const noexcept {
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

bool Graph::is_connected() const {
  const auto n = vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (VertexId v : neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

ActiveMask::ActiveMask(std::size_t n, bool value) : bits_(n, value ? 1 : 0), count_(value ? n : 0) {}

void ActiveMask::set(VertexId v, bool value) noexcept {
  const std::uint8_t next = value ? 1 : 0;
  if (bits_[v] == next) return;
  bits_[v] = next;
  if (value) {
    ++count_;
  } else {
    --count_;
  }
}

Graph gen_rrg(std::size_t n, std::size_t k, RngStream& rng, int max_restarts) {
  if (k >= n) throw ValidationError("k", "degree k must be smaller than n");
  if ((n * k) % 2 != 0) throw ValidationError("k", "n*k must be even for a k-regular graph");
  if (k == 0) return Graph::from_edges(n, {});

  for (int attempt = 0; attempt <= max_restarts; ++attempt) {
    std::vector<VertexId> stubs;
    stubs.reserve(n * k);
    for (VertexId v = 0; v < n; ++v) stubs.insert(stubs.end(), k, v);

    std::unordered_set<std::uint64_t> present;
    present.reserve(n * k);
    std::vector<Edge> edges;
    edges.reserve(n * k / 2);
    bool stuck = false;

    while (!stubs.empty() && !stuck) {
      std::shuffle(stubs.begin(), stubs.end(), rng);
      std::vector<VertexId> leftover;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const VertexId u = stubs[i];
        const VertexId v = stubs[i + 1];
        if (u != v && !present.contains(edge_key(u, v))) {
          present.insert(edge_key(u, v));
          edges.emplace_back(u, v);
        } else {
          leftover.push_back(u);
          leftover.push_back(v);
        }
      }
      if (leftover.size() == stubs.size()) {
        // No progress this round: see whether any admissible pair remains.
        std::vector<VertexId> distinct(leftover);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        bool admissible = false;
        for (std::size_t a = 0; a < distinct.size() && !admissible; ++a) {
          for (std::size_t b = a + 1; b < distinct.size(); ++b) {
            if (!present.contains(edge_key(distinct[a], distinct[b]))) {
              admissible = true;
              break;
            }
          }
        }
        stuck = !admissible;
      }
      stubs = std::move(leftover);
    }
    if (!stuck) return Graph::from_edges(n, edges);
  }
  throw RetryExhausted("random regular graph generation exhausted " +
                       std::to_string(max_restarts) + " restarts");
}

Graph gen_wsn(std::size_t n, std::size_t k, double p_rewire, RngStream& rng) {
  if (k % 2 != 0 || k == 0) throw ValidationError("k", "lattice degree k must be even and positive");
  if (k >= n) throw ValidationError("k", "degree k must be smaller than n");
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) {
    throw ValidationError("rewire", "rewiring probability must lie in [0, 1]");
  }
  AdjacencyBuilder adj(n);
  const std::size_t half = k / 2;
  for (VertexId u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= half; ++j) adj.add(u, static_cast<VertexId>((u + j) % n));
  }
  for (std::size_t j = 1; j <= half; ++j) {
    for (VertexId u = 0; u < n; ++u) {
      const auto v = static_cast<VertexId>((u + j) % n);
      if (!(rng.uniform_open() < p_rewire)) continue;
      if (!adj.has(u, v)) continue;  // already rewired away by an earlier step
      if (adj.degree(u) >= n - 1) continue;
      VertexId w = 0;
      do {
        w = static_cast<VertexId>(rng.below(n));
      } while (w == u || adj.has(u, w));
      adj.remove(u, v);
      adj.add(u, w);
    }
  }
  return adj.build();
}

Graph gen_ban(std::size_t n, std::size_t m, RngStream& rng) {
  if (m < 1 || m >= n) throw ValidationError("m", "attachment count m must satisfy 1 <= m < n");
  std::vector<Edge> edges;
  // Every endpoint appears once per incident edge, so a uniform draw from
  // this list is a degree-proportional draw over vertices.
  std::vector<VertexId> endpoints;
  for (VertexId u = 0; u <= m; ++u) {
    for (VertexId v = u + 1; v <= m; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<VertexId> targets;
  for (auto v = static_cast<VertexId>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const VertexId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (VertexId t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges);
}

EdgeListResult load_edge_list(std::string_view text) {
  EdgeListResult result;
  std::unordered_map<std::string, VertexId> ids;
  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = ids.try_emplace(token, static_cast<VertexId>(result.labels.size()));
    if (inserted) result.labels.push_back(token);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(std::move(tok));
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected exactly two vertex tokens, found " + std::to_string(tokens.size()));
    }
    const VertexId u = intern(tokens[0]);
    const VertexId v = intern(tokens[1]);
    if (u == v) {
      ++result.self_loops_dropped;
      continue;
    }
    if (!present.insert(edge_key(u, v)).second) {
      ++result.duplicates_dropped;
      continue;
    }
    edges.emplace_back(u, v);
  }
  result.graph = Graph::from_edges(result.labels.size(), edges);
  return result;
}

std::string write_edge_list(const Graph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

double largest_component_relative_size(const Graph& g, const ActiveMask& mask) {
  const auto n = g.vertex_count();
  if (n == 0 || mask.count() == 0) return 0.0;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack;
  std::size_t best = 0;
  for (VertexId root = 0; root < n; ++root) {
    if (!mask[root] || seen[root]) continue;
    std::size_t size = 0;
    stack.push_back(root);
    seen[root] = 1;
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId v : g.neighbors(u)) {
        if (mask[v] && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    best = std::max(best, size);
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

std::size_t activated_degree(const Graph& g, const ActiveMask& mask, VertexId v) noexcept {
  std::size_t d = 0;
  for (VertexId u : g.neighbors(v)) d += mask[u] ? 1 : 0;
  return d;
}

}  // namespace actnet
