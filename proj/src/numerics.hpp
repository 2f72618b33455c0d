#pragma once

#include <functional>

#include "family.hpp"

namespace graphon::detail {

struct SolveControls {
  int ascent_iterations = 400;
  int bfgs_iterations = 400;
  int newton_iterations = 60;
  double newton_tolerance = 1e-10;
};

/// Outcome of one local solve in a family's parameter space.
struct LocalSolution {
  Vector z;
  double alpha = 0.0;
  double beta = 0.0;
  double entropy = 0.0;
  double edge = 0.0;
  double triangle = 0.0;
  /// Max-norm of the stationarity system at z (EL in logit form plus width
  /// contrasts; constraint rows excluded).
  double stationarity = 0.0;
  bool newton_converged = false;
};

/// Objective for projected BFGS: returns f and writes grad.
using Objective = std::function<double(const Vector&, Vector&)>;

/// Minimize f over the family's parameter box from z (modified in place).
/// Returns the final objective value.
double projected_bfgs(const Family& fam, const Objective& f, Vector& z, int max_iterations);

/// Local maximum of S subject to epsilon = e, tau = t: Gauss-Newton
/// restoration onto the constraint set, quasi-Newton ascent along the
/// projected gradient (restoring after every step), then Newton on the
/// stationarity system.
LocalSolution solve_constrained(const Family& fam, Vector z, double e, double t,
                                const SolveControls& ctl);

/// Newton polish only, from (z, alpha, beta).
LocalSolution polish_constrained(const Family& fam, Vector z, double e, double t,
                                 double alpha, double beta, const SolveControls& ctl);

/// Local maximum of F = S - alpha epsilon - (beta/3) tau (no constraints).
LocalSolution solve_free_energy(const Family& fam, Vector z, double alpha, double beta,
                                const SolveControls& ctl);

}  // namespace graphon::detail
