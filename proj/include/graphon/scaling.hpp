#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphon/error.hpp"
#include "graphon/optimizer.hpp"

namespace graphon {

enum class BoundaryKind { kFlat, kScallop, kTop };

const char* boundary_name(BoundaryKind kind);
/// "flat", "scallop" or "top"; throws kInvalidArgument otherwise.
BoundaryKind parse_boundary(const std::string& name);

struct ScalingSample {
  double delta = 0.0;  ///< distance to the boundary in t
  double beta = 0.0;
  double alpha = 0.0;
  double delta_B = 0.0;  ///< entropy gain over the boundary graphon
  double block_min = 0.0;
  double block_max = 0.0;
  double el_residual = 0.0;
  /// Study-specific extras: flat {A, beta_scaled, ratio}, scallop
  /// {diag_max, beta_sqrt}, top {beta_over_alpha, ratio, width_max}.
  std::map<std::string, double> aux;
  OptimizationResult result;
};

struct ScalingReport {
  BoundaryKind boundary = BoundaryKind::kFlat;
  double e = 0.0;
  std::vector<ScalingSample> samples;  ///< delta descending
  /// Least-squares slope and r^2 of log delta_B against log delta.
  double fitted_exponent = 0.0;
  double fitted_r2 = 0.0;
};

/// Thrown when a solve fails; carries the samples that did succeed.
class ScalingFailure : public Error {
 public:
  ScalingFailure(const std::string& what, ScalingReport partial)
      : Error(ErrorCode::kSolverFailure, what), partial_(std::move(partial)) {}
  const ScalingReport& partial() const noexcept { return partial_; }

 private:
  ScalingReport partial_;
};

/// Solves at t for each t in t_values (e < 1/2). delta_B = S - H(2e)/2.
ScalingReport flat_boundary_study(double e, const std::vector<double>& t_values,
                                  const SolverOptions& opts = {});

/// Solves at t0(e) + dt. delta_B = S - S(scallop graphon at t0).
ScalingReport scallop_study(double e, const std::vector<double>& dt_values,
                            const SolverOptions& opts = {});

/// Solves at e^{3/2} - dt. delta_B = S.
ScalingReport top_boundary_study(double e, const std::vector<double>& dt_values,
                                 const SolverOptions& opts = {});

ScalingReport scaling_study(BoundaryKind kind, double e, const std::vector<double>& deltas,
                            const SolverOptions& opts = {});

/// Header "delta,beta,alpha,delta_B,block_min,block_max,el_residual".
std::string scaling_csv(const ScalingReport& report);

}  // namespace graphon
