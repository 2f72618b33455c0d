#include "graphon/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "graphon/boundary.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace graphon {

namespace {

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
};

Fit log_log_fit(const std::vector<ScalingSample>& samples) {
  std::vector<double> x, y;
  for (const auto& s : samples) {
    if (s.delta > 0.0 && s.delta_B > 0.0) {
      x.push_back(std::log(s.delta));
      y.push_back(std::log(s.delta_B));
    }
  }
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return {};
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  f.slope = sxy / sxx;
  f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

double diagonal_max(const MultipodalGraphon& g) { return g.blocks().diagonal().maxCoeff(); }

template <typename Fn>
ScalingReport run_study(BoundaryKind kind, double e, std::vector<double> deltas,
                        const SolverOptions& opts, Fn target_and_finish) {
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  for (double d : deltas) {
    if (!(d > 0.0)) fail(ErrorCode::kInvalidArgument, "scaling deltas must be positive");
  }
  ScalingReport report;
  report.boundary = kind;
  report.e = e;
  std::vector<std::optional<ScalingSample>> slots(deltas.size());
  std::vector<std::string> errors(deltas.size());
  SolverOptions inner = opts;
  inner.threads = 1;
  detail::parallel_for(static_cast<int>(deltas.size()), opts.threads, [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      slots[idx] = target_and_finish(deltas[idx], inner);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kInvalidArgument) throw;
      errors[idx] = err.what();
    }
  });
  std::string first_error;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (slots[i]) {
      report.samples.push_back(std::move(*slots[i]));
    } else if (first_error.empty()) {
      first_error = "delta " + detail::num(deltas[i]) + ": " + errors[i];
    }
  }
  const Fit fit = log_log_fit(report.samples);
  report.fitted_exponent = fit.slope;
  report.fitted_r2 = fit.r2;
  if (!first_error.empty()) throw ScalingFailure(first_error, std::move(report));
  return report;
}

ScalingSample base_sample(double delta, const OptimizationResult& r, double delta_B) {
  ScalingSample s;
  s.delta = delta;
  s.beta = r.multipliers.beta;
  s.alpha = r.multipliers.alpha;
  s.delta_B = delta_B;
  s.block_min = r.graphon.blocks().minCoeff();
  s.block_max = r.graphon.blocks().maxCoeff();
  s.el_residual = r.el_residual;
  s.result = r;
  return s;
}

}  // namespace

const char* boundary_name(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::kFlat:
      return "flat";
    case BoundaryKind::kScallop:
      return "scallop";
    case BoundaryKind::kTop:
      return "top";
  }
  return "?";
}

BoundaryKind parse_boundary(const std::string& name) {
  if (name == "flat") return BoundaryKind::kFlat;
  if (name == "scallop") return BoundaryKind::kScallop;
  if (name == "top") return BoundaryKind::kTop;
  fail(ErrorCode::kInvalidArgument, "unknown boundary kind '" + name + "' (flat, scallop, top)");
}

ScalingReport flat_boundary_study(double e, const std::vector<double>& t_values,
                                  const SolverOptions& opts) {
  if (!(e > 0.0 && e < 0.5)) fail(ErrorCode::kInvalidArgument, "flat study needs 0 < e < 1/2");
  for (double t : t_values) {
    if (!(t > 0.0 && t < e * e * e)) fail(ErrorCode::kInvalidArgument, "flat study needs 0 < t < e^3");
  }
  const double base = 0.5 * binary_entropy(2.0 * e);
  return run_study(BoundaryKind::kFlat, e, t_values, opts, [&](double t, const SolverOptions& o) {
    const OptimizationResult r = maximize_entropy_auto(e, t, o);
    ScalingSample s = base_sample(t, r, r.entropy - base);
    const double log_inv = std::log(1.0 / t);
    s.aux["A"] = diagonal_max(r.graphon);
    s.aux["beta_scaled"] = s.beta * 2.0 * e * e / log_inv;
    s.aux["ratio"] = s.delta_B / (t * log_inv);
    return s;
  });
}

ScalingReport scallop_study(double e, const std::vector<double>& dt_values,
                            const SolverOptions& opts) {
  if (!(e > 0.5 && e < 1.0)) fail(ErrorCode::kInvalidArgument, "scallop study needs 1/2 < e < 1");
  const ScallopSpec sp = scallop_params(e);
  const double base = scallop_family_entropy(sp.n, e, sp.c0);
  return run_study(BoundaryKind::kScallop, e, dt_values, opts,
                   [&](double dt, const SolverOptions& o) {
                     const OptimizationResult r = maximize_entropy_auto(e, sp.t0 + dt, o);
                     ScalingSample s = base_sample(dt, r, r.entropy - base);
                     s.aux["diag_max"] = diagonal_max(r.graphon);
                     s.aux["beta_sqrt"] = s.beta * std::sqrt(dt);
                     return s;
                   });
}

ScalingReport top_boundary_study(double e, const std::vector<double>& dt_values,
                                 const SolverOptions& opts) {
  if (!(e > 0.0 && e < 1.0)) fail(ErrorCode::kInvalidArgument, "top study needs 0 < e < 1");
  const double top = max_triangle_density(e);
  return run_study(BoundaryKind::kTop, e, dt_values, opts, [&](double dt, const SolverOptions& o) {
    const OptimizationResult r = maximize_entropy_auto(e, top - dt, o);
    ScalingSample s = base_sample(dt, r, r.entropy);
    s.aux["beta_over_alpha"] = s.alpha != 0.0 ? s.beta / s.alpha : 0.0;
    s.aux["ratio"] = s.delta_B / (dt * std::log(1.0 / dt));
    const auto& w = r.graphon.widths();
    s.aux["width_max"] = *std::max_element(w.begin(), w.end());
    return s;
  });
}

ScalingReport scaling_study(BoundaryKind kind, double e, const std::vector<double>& deltas,
                            const SolverOptions& opts) {
  switch (kind) {
    case BoundaryKind::kFlat:
      return flat_boundary_study(e, deltas, opts);
    case BoundaryKind::kScallop:
      return scallop_study(e, deltas, opts);
    case BoundaryKind::kTop:
      return top_boundary_study(e, deltas, opts);
  }
  fail(ErrorCode::kInvalidArgument, "unknown boundary kind");
}

std::string scaling_csv(const ScalingReport& report) {
  std::ostringstream out;
  out << "delta,beta,alpha,delta_B,block_min,block_max,el_residual\n";
  for (const auto& s : report.samples) {
    out << detail::num(s.delta) << ',' << detail::num(s.beta) << ',' << detail::num(s.alpha)
        << ',' << detail::num(s.delta_B) << ',' << detail::num(s.block_min) << ','
        << detail::num(s.block_max) << ',' << detail::num(s.el_residual) << '\n';
  }
  return out.str();
}

}  // namespace graphon
