#pragma once

#include <optional>

#include "graphon/graphon.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/variational.hpp"

namespace graphon {

/// Free-energy comparisons closer than this count as ties.
inline constexpr double kVisibilityTolerance = 1e-9;
/// |margin| below this is reported as marginal.
inline constexpr double kMarginalBand = 1e-6;

/// F(g) = S(g) - alpha epsilon(g) - (beta/3) tau(g).
double free_energy(const MultipodalGraphon& g, const Multipliers& mult);

/// Unconstrained maximum of F over k-podal graphons, k = 1..opts.k_max.
/// Seeds: constants 0, 1 and H'^-1(alpha), the complete multipartite cusp
/// graphons at e = 1/2 and next to hint's edge density, hint itself, and
/// random graphons. The result's e and t are the maximizer's densities.
OptimizationResult maximize_free_energy(const Multipliers& mult, const SolverOptions& opts = {},
                                        const std::optional<MultipodalGraphon>& hint = std::nullopt);

struct InvisibilityReport {
  double e = 0.0;
  double t = 0.0;
  Multipliers multipliers;
  MultipodalGraphon constrained = MultipodalGraphon::constant(0.0);
  double constrained_entropy = 0.0;
  double constrained_free_energy = 0.0;
  MultipodalGraphon best_competitor = MultipodalGraphon::constant(0.0);
  double competitor_free_energy = 0.0;
  bool visible = true;
  /// competitor_free_energy - constrained_free_energy.
  double margin = 0.0;
  /// Invisible, but by less than kMarginalBand.
  bool marginal = false;
};

/// Solve at (e, t), then look for a graphon with more free energy at the
/// optimum's multipliers. Degenerate multipliers use (H'(e), 0).
InvisibilityReport invisibility_test(double e, double t, const SolverOptions& opts = {});

}  // namespace graphon
