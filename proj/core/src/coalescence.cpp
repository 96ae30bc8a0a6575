#include "actnet/coalescence.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>

#include "actnet/error.hpp"

namespace actnet::theory {
namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

// Dense index of the unordered pair {i, j}, i != j, among n(n-1)/2 pairs.
std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

SparseMatrix sparse_walk(const std::vector<double>& walk, std::size_t n) {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = walk[i * n + j];
      if (v != 0.0) entries.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
    }
  }
  SparseMatrix m(static_cast<int>(n), static_cast<int>(n));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

// Row (i,j) of the pair system: tau_ij - 1/2 sum_k (l_ik tau_jk + l_jk tau_ik) = 1.
SparseMatrix pair_system(const Graph& g, const std::vector<double>& walk) {
  const std::size_t n = g.vertex_count();
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<Triplet> entries;
  entries.reserve(pairs * (2 * g.max_degree() + 3));

  auto walk_row = [&](std::size_t i, auto&& visit) {
    if (walk[i * n + i] != 0.0) visit(i, walk[i * n + i]);
    for (VertexId k : g.neighbors(static_cast<VertexId>(i))) visit(k, walk[i * n + k]);
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto row = static_cast<int>(pair_index(n, i, j));
      entries.emplace_back(row, row, 1.0);
      // walker at i moves to k, partner stays at j: tau_{k j}
      walk_row(i, [&](std::size_t k, double l) {
        if (k != j) entries.emplace_back(row, static_cast<int>(pair_index(n, k, j)), -0.5 * l);
      });
      walk_row(j, [&](std::size_t k, double l) {
        if (k != i) entries.emplace_back(row, static_cast<int>(pair_index(n, i, k)), -0.5 * l);
      });
    }
  }
  SparseMatrix a(static_cast<int>(pairs), static_cast<int>(pairs));
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  return a;
}

}  // namespace

std::string_view to_string(WalkConvention c) noexcept {
  switch (c) {
    case WalkConvention::Lazy:
      return "lazy";
    case WalkConvention::NoSelfLoop:
      return "no-self-loop";
  }
  return "lazy";
}

WalkConvention walk_convention_from_string(std::string_view name) {
  if (name == "lazy") return WalkConvention::Lazy;
  if (name == "no-self-loop") return WalkConvention::NoSelfLoop;
  throw ValidationError("convention", "unknown walk convention '" + std::string(name) +
                                          "' (expected lazy or no-self-loop)");
}

std::vector<double> walk_matrix(const Graph& g, ActivationProbability p, WalkConvention convention) {
  const std::size_t n = g.vertex_count();
  std::vector<double> walk(n * n, 0.0);
  for (VertexId i = 0; i < n; ++i) {
    const std::size_t k = g.degree(i);
    if (k == 0) continue;
    const double step = one_step_walk_prob(k, p);
    for (VertexId j : g.neighbors(i)) walk[i * n + j] = step;
    if (convention == WalkConvention::Lazy) walk[i * n + i] = 1.0 - step * static_cast<double>(k);
  }
  return walk;
}

CoalescenceSolution coalescence_solve(const Graph& g, const ActivationRates& rates,
                                      const CoalescenceOptions& options) {
  return coalescence_solve(g, activation_probability(rates), options);
}

CoalescenceSolution coalescence_solve(const Graph& g, ActivationProbability p,
                                      const CoalescenceOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw SolverError("coalescence needs at least two vertices");
  if (n > options.max_vertices) {
    throw SolverError("graph has " + std::to_string(n) + " vertices, above the solver bound of " +
                      std::to_string(options.max_vertices));
  }
  if (!g.is_connected()) throw SolverError("coalescence times are undefined on a disconnected graph");

  CoalescenceSolution sol;
  sol.n = n;
  sol.p = p.p;
  sol.convention = options.convention;
  sol.walk = walk_matrix(g, p, options.convention);

  const SparseMatrix system = pair_system(g, sol.walk);
  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(system.rows());
  Eigen::VectorXd x;

  const bool iterative = options.method == SolverMethod::Iterative ||
                         (options.method == SolverMethod::Auto && n > options.direct_limit);
  sol.iterative = iterative;
  if (!iterative) {
    Eigen::SparseMatrix<double> col_major = system;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(col_major);
    if (lu.info() != Eigen::Success) throw SolverError("coalescence system is singular");
    x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw SolverError("sparse LU solve failed");
  } else {
    Eigen::BiCGSTAB<SparseMatrix, Eigen::DiagonalPreconditioner<double>> solver;
    solver.setTolerance(options.tolerance);
    solver.setMaxIterations(static_cast<int>(std::max<std::size_t>(1000, 20 * n)));
    solver.compute(system);
    x = solver.solve(rhs);
    if (solver.info() != Eigen::Success) {
      throw SolverError("iterative coalescence solve did not converge (estimated error " +
                        std::to_string(solver.error()) + ")");
    }
  }

  sol.tau.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double t = x[static_cast<Eigen::Index>(pair_index(n, i, j))];
      sol.tau[i * n + j] = t;
      sol.tau[j * n + i] = t;
    }
  }

  const auto nn = static_cast<Eigen::Index>(n);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> tau(
      sol.tau.data(), nn, nn);
  const SparseMatrix walk = sparse_walk(sol.walk, n);

  sol.tau_i.resize(n);
  sol.walk2_diagonal.resize(n);
  const SparseMatrix walk2 = walk * walk;
  for (std::size_t i = 0; i < n; ++i) {
    double remeet = 1.0;
    for (std::size_t k = 0; k < n; ++k) remeet += sol.walk[i * n + k] * sol.tau[i * n + k];
    sol.tau_i[i] = remeet;
    const auto ii = static_cast<Eigen::Index>(i);
    sol.walk2_diagonal[i] = walk2.coeff(ii, ii);
  }

  // tau^(m) = (1/n) sum_ij (L^m)_ij tau_ij = (1/n) trace(L^m tau), tau symmetric.
  Eigen::MatrixXd power_times_tau = tau;
  for (std::size_t m = 0; m < sol.tau_n.size(); ++m) {
    if (m > 0) power_times_tau = walk * power_times_tau;
    sol.tau_n[m] = power_times_tau.trace() / static_cast<double>(n);
  }

  double sum = 0.0;
  double sum_walk2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += sol.tau_i[i];
    sum_walk2 += sol.tau_i[i] * sol.walk2_diagonal[i];
  }
  sol.mean_tau_i = sum / static_cast<double>(n);
  sol.mean_tau_i_walk2 = sum_walk2 / static_cast<double>(n);

  sol.max_residual = recurrence_residual(sol);
  if (!(sol.max_residual < options.max_residual)) {
    throw SolverError("coalescence solution residual " + std::to_string(sol.max_residual) +
                      " exceeds " + std::to_string(options.max_residual));
  }
  return sol;
}

double recurrence_residual(const CoalescenceSolution& sol) {
  const std::size_t n = sol.n;
  const auto nn = static_cast<Eigen::Index>(n);
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> tau(sol.tau.data(), nn, nn);
  const SparseMatrix walk = sparse_walk(sol.walk, n);
  // (L tau)_ij = sum_k l_ik tau_kj and (tau L^T)_ij = sum_k tau_ik l_jk.
  const RowMajor left = walk * tau;
  const RowMajor right = tau * walk.transpose();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = 0; j < nn; ++j) {
      if (i == j) continue;
      const double r = tau(i, j) - 1.0 - 0.5 * (left(i, j) + right(i, j));
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

FixationFirstOrder fixation_first_order(const CoalescenceSolution& sol, double b, double c, double w) {
  if (!(w >= 0.0)) throw ValidationError("w", "selection intensity must be non-negative");
  const auto n = static_cast<double>(sol.n);
  const double cost_term = sol.mean_tau_i - 2.0 * sol.p;
  const double benefit_term = sol.mean_tau_i_walk2 - 2.0 * sol.p;
  const double drift = -c * cost_term + b * benefit_term;
  return {1.0 / n + w / (2.0 * n) * drift, 1.0 / n - w / (2.0 * n) * drift};
}

double first_order_crossing(const CoalescenceSolution& sol) {
  const double cost_term = sol.mean_tau_i - 2.0 * sol.p;
  const double benefit_term = sol.mean_tau_i_walk2 - 2.0 * sol.p;
  if (!(benefit_term > 0.0)) {
    throw SolverError("first-order benefit term is not positive; no crossing exists");
  }
  return cost_term / benefit_term;
}

}  // namespace actnet::theory
