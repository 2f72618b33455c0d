#pragma once

#include <cstdint>
#include <vector>

#include "graphon/graphon.hpp"

namespace graphon {

/// Blocks closer than this to 0 or 1 are treated as saturated (boundary
/// points of the box) by multiplier extraction and residual checks.
inline constexpr double kSaturationThreshold = 1e-9;

/// Lagrange pair of dS = alpha d(epsilon) + (beta/3) d(tau).
struct Multipliers {
  double alpha = 0.0;
  double beta = 0.0;
  /// The extraction system was rank-deficient (e.g. on the Erdos-Renyi
  /// curve). (alpha, beta) is then the representative with beta = 0.
  bool degenerate = false;
};

/// Area-weighted least squares of H'(B_ij) = alpha + beta G_ij over interior
/// blocks. Throws kSaturated ("all blocks saturated") without interior blocks.
Multipliers extract_multipliers(const MultipodalGraphon& g);

/// Max Euler-Lagrange violation: |H'(B) - alpha - beta G| on interior blocks,
/// plus the one-sided excess on saturated blocks (a 0-saturated block is
/// consistent when alpha + beta G >= H'(delta), a 1-saturated block when
/// alpha + beta G <= H'(1 - delta)).
double el_residual(const MultipodalGraphon& g, const Multipliers& mult);

/// V_ij = H(B_ij) - alpha B_ij - beta G_ij B_ij.
Matrix pointwise_value(const MultipodalGraphon& g, const Multipliers& mult);

/// dV_ij/dB_ij at fixed G: H'(B_ij) - alpha - beta G_ij. Saturated blocks
/// evaluate H' at the saturation threshold.
Matrix pointwise_value_derivative(const MultipodalGraphon& g, const Multipliers& mult);

/// W(a) = sum_i c_i (H(a_i) - alpha a_i) - (beta/2) sum_ij c_i c_j a_i a_j B_ij.
double worth(const MultipodalGraphon& g, const Multipliers& mult, const ColumnProfile& a);

/// Worth of each actual pode column (row i of B).
std::vector<double> pode_worths(const MultipodalGraphon& g, const Multipliers& mult);

/// max - min of the pode worths.
double worth_spread(const MultipodalGraphon& g, const Multipliers& mult);

struct WorthMaximizer {
  ColumnProfile column;
  double worth = 0.0;
};

struct WorthSearch {
  std::vector<WorthMaximizer> maxima;  ///< distinct, sorted by worth descending
  int failed_starts = 0;               ///< no convergence or not a local maximum
};

struct WorthSearchOptions {
  int random_starts = 8;
  std::uint64_t seed = 42;
  int max_sweeps = 10000;
  double tolerance = 1e-12;
  double dedup_tolerance = 1e-5;
};

/// Local maximizers of W over [0,1]^k from structured starts (every actual
/// column, all-zero, all-one) plus seeded random starts.
WorthSearch maximize_worth(const MultipodalGraphon& g, const Multipliers& mult,
                           const WorthSearchOptions& opts = {});

/// Largest worth found by maximize_worth minus the largest pode worth.
double worth_gap(const MultipodalGraphon& g, const Multipliers& mult,
                 const WorthSearchOptions& opts = {});

struct OptimalityDiagnostics {
  Multipliers multipliers;
  double el_residual = 0.0;
  double worth_spread = 0.0;
  double worth_gap = 0.0;
};

/// el_residual, worth_spread and worth_gap of g at mult.
OptimalityDiagnostics diagnose(const MultipodalGraphon& g, const Multipliers& mult,
                               const WorthSearchOptions& opts = {});

}  // namespace graphon
