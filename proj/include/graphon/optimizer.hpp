#pragma once

#include <cstdint>

#include "graphon/graphon.hpp"
#include "graphon/variational.hpp"

namespace graphon {

struct SolverOptions {
  int k_max = 6;
  int starts = 24;
  std::uint64_t seed = 42;
  /// Constraint tolerance: a start counts as converged when both
  /// |epsilon - e| and |tau - t| are below it.
  double tol = 1e-8;
  /// Worker threads for independent starts. Results do not depend on it.
  int threads = 1;
};

enum class AnsatzKind { kFreeK, kSymmetricBipodal, kN2Symmetric };

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::kFreeK;
  /// k for kFreeK, n for kN2Symmetric, ignored for kSymmetricBipodal.
  int size = 2;
};

struct OptimizationResult {
  MultipodalGraphon graphon = MultipodalGraphon::constant(0.0);  ///< canonical form
  Multipliers multipliers;
  double entropy = 0.0;
  double edge_error = 0.0;      ///< |epsilon - e|
  double triangle_error = 0.0;  ///< |tau - t|
  double el_residual = 0.0;
  double worth_spread = 0.0;
  int n_starts = 0;
  int n_converged = 0;
  /// Converged optima within 1e-6 entropy of the best that are pairwise more
  /// than 1e-4 apart (canonical block max-norm, or different pode counts).
  int distinct_optima = 0;
  double e = 0.0;
  double t = 0.0;
};

/// Max S over k-podal graphons with epsilon = e and tau = t. Throws
/// kInfeasible outside the feasible region, kInvalidArgument for k outside
/// [1, 8], kSolverFailure when no start converges.
OptimizationResult maximize_entropy(double e, double t, int k, const SolverOptions& opts = {});

/// maximize_entropy for k = 1..opts.k_max; the best entropy wins, ties
/// within 1e-8 go to the smaller k.
OptimizationResult maximize_entropy_auto(double e, double t, const SolverOptions& opts = {});

/// Solve within a reduced family. Throws kInfeasible ("ansatz infeasible")
/// when (e, t) is out of the family's reach.
OptimizationResult ansatz_solve(double e, double t, const AnsatzSpec& ansatz,
                                const SolverOptions& opts = {});

/// Diagonal block A of the symmetric bipodal graphon (widths 1/2, diagonal A,
/// off-diagonal 2e - A) with triangle density t: A = e + cbrt(t - e^3).
double symmetric_bipodal_diagonal(double e, double t);

/// Helper for tests and diagnostics: fill in multipliers, residuals and
/// constraint errors for a graphon claimed to be optimal at (e, t).
OptimizationResult describe_solution(const MultipodalGraphon& g, double e, double t);

}  // namespace graphon
