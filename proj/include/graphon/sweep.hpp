#pragma once

#include <string>
#include <vector>

#include "graphon/ergm.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/phase.hpp"

namespace graphon {

enum class TMode {
  kAbsolute,  ///< t runs over [t_min, t_max]
  kRelative,  ///< t = lo(e) + f (hi(e) - lo(e)) with f over [t_min, t_max]
};

struct SweepSpec {
  double e_min = 0.0;
  double e_max = 1.0;
  int e_steps = 1;
  TMode t_mode = TMode::kAbsolute;
  double t_min = 0.0;
  double t_max = 0.0;
  int t_steps = 1;
  SolverOptions solver;
  int workers = 1;

  /// Throws kInvalidArgument on empty or out-of-range grids.
  void validate() const;
};

struct SweepCell {
  double e = 0.0;
  double t = 0.0;
};

struct SweepRow {
  SweepCell cell;
  OptimizationResult result;
  PhaseLabel label;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;     ///< grid order: e outer, t inner
  std::vector<std::string> log;   ///< skipped cells and failures
};

/// steps evenly spaced values from lo to hi inclusive (lo alone for 1).
std::vector<double> linspace(double lo, double hi, int steps);

/// Every grid point, feasible or not, in grid order.
std::vector<SweepCell> sweep_cells(const SweepSpec& spec);

/// Solve and classify every feasible cell. Each cell draws its own seed
/// from (solver.seed, cell index), so output does not depend on workers.
SweepOutcome run_sweep(const SweepSpec& spec);

inline constexpr const char* kSweepHeader =
    "e,t,entropy,alpha,beta,k,sym_n,sym_m,rank,p2,p3,p4,region_tag,el_residual,worth_spread,"
    "distinct_optima";

std::string sweep_csv(const SweepOutcome& out);

/// SVG 1.1 scatter of the rows over the (e, t) plane, colored by region
/// tag, with the boundary curves and the ER curve.
std::string sweep_svg(const SweepOutcome& out);

/// e,t_min,t_er,t_max,n,c0,p for steps values of e; n, c0, p stay empty
/// below e = 1/2.
std::string boundary_csv(double e_min, double e_max, int steps);

struct ErgmGridOutcome {
  std::vector<InvisibilityReport> rows;
  std::vector<std::string> log;
};

ErgmGridOutcome run_ergm_grid(const SweepSpec& spec);

/// e,t,alpha,beta,visible,margin
std::string ergm_grid_csv(const ErgmGridOutcome& out);

}  // namespace graphon
