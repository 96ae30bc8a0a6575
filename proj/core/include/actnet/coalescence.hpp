#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "actnet/graph.hpp"
#include "actnet/theory.hpp"

namespace actnet::theory {

/// How the probability mass of "no activated neighbour" is treated in the
/// one-step walk matrix.
enum class WalkConvention {
  Lazy,        // residual (1-p)^k stays on the diagonal; rows are stochastic
  NoSelfLoop,  // diagonal is zero; rows sum to 1-(1-p)^k
};

std::string_view to_string(WalkConvention c) noexcept;
WalkConvention walk_convention_from_string(std::string_view name);

enum class SolverMethod { Auto, Direct, Iterative };

struct CoalescenceOptions {
  WalkConvention convention = WalkConvention::Lazy;
  SolverMethod method = SolverMethod::Auto;
  std::size_t max_vertices = 500;   // larger graphs are rejected
  std::size_t direct_limit = 40;    // Auto switches to the iterative solver above this; LU fill grows fast
  double tolerance = 1e-13;         // relative residual target of the iterative solver
  double max_residual = 1e-8;       // post-solve acceptance bound on the recurrence
};

/// Solution of the pairwise coalescence recurrence on a walk matrix built
/// from the one-step walk probabilities.
struct CoalescenceSolution {
  std::size_t n = 0;
  double p = 0.0;
  WalkConvention convention = WalkConvention::Lazy;
  std::vector<double> walk;    // n*n row-major l_ij
  std::vector<double> tau;     // n*n row-major, symmetric, zero diagonal
  std::vector<double> tau_i;   // remeeting times 1 + sum_k l_ik tau_ik
  std::vector<double> walk2_diagonal;    // two-step return probabilities
  std::array<double, 4> tau_n{};         // tau^(0..3)
  double mean_tau_i = 0.0;               // (1/n) sum_i tau_i
  double mean_tau_i_walk2 = 0.0;         // (1/n) sum_i tau_i l^(2)_ii
  double max_residual = 0.0;             // of the recurrence at the solution
  bool iterative = false;

  double walk_at(std::size_t i, std::size_t j) const { return walk[i * n + j]; }
  double tau_at(std::size_t i, std::size_t j) const { return tau[i * n + j]; }
};

/// Walk matrix for `g` with activation probability `p` under `convention`.
std::vector<double> walk_matrix(const Graph& g, ActivationProbability p, WalkConvention convention);

/// Solves tau_ij = 1 + 1/2 sum_k (l_ik tau_jk + l_jk tau_ik) for i != j with
/// tau_ii = 0. Throws SolverError on disconnected graphs, graphs larger than
/// `options.max_vertices`, or when the solution misses `max_residual`.
CoalescenceSolution coalescence_solve(const Graph& g, ActivationProbability p,
                                      const CoalescenceOptions& options = {});
CoalescenceSolution coalescence_solve(const Graph& g, const ActivationRates& rates,
                                      const CoalescenceOptions& options = {});

/// Largest absolute deviation of `tau` from the recurrence, over i != j.
double recurrence_residual(const CoalescenceSolution& sol);

struct FixationFirstOrder {
  double rho_c = 0.0;
  double rho_d = 0.0;
};

/// Weak-selection fixation probabilities of a single cooperator and a
/// single defector for the donation game (R=b-c, S=-c, T=b, P=0).
FixationFirstOrder fixation_first_order(const CoalescenceSolution& sol, double b, double c, double w);

/// Benefit-to-cost ratio at which the first-order rho_C - rho_D changes sign.
double first_order_crossing(const CoalescenceSolution& sol);

}  // namespace actnet::theory
