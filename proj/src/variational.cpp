#include "graphon/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "graphon/error.hpp"
#include "graphon/random.hpp"
#include "logistic.hpp"

namespace graphon {

namespace {

constexpr double kDegenerateCondition = 1e10;

bool is_interior(double b) {
  return b >= kSaturationThreshold && b <= 1.0 - kSaturationThreshold;
}

double saturated_slope(double b) {
  return binary_entropy_deriv1(std::clamp(b, kSaturationThreshold, 1.0 - kSaturationThreshold));
}

}  // namespace

Multipliers extract_multipliers(const MultipodalGraphon& g) {
  const auto k = static_cast<Eigen::Index>(g.size());
  const Matrix overlap = overlap_matrix(g);
  std::vector<double> weight, lhs, gval;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double b = g.block(i, j);
      if (!is_interior(b)) continue;
      const double area = (i == j ? 1.0 : 2.0) * g.width(static_cast<std::size_t>(i)) *
                          g.width(static_cast<std::size_t>(j));
      weight.push_back(area);
      lhs.push_back(binary_entropy_deriv1(b));
      gval.push_back(overlap(i, j));
    }
  }
  if (weight.empty()) fail(ErrorCode::kSaturated, "all blocks saturated");

  const auto rows = static_cast<Eigen::Index>(weight.size());
  Matrix design(rows, 2);
  Vector rhs(rows);
  double weight_sum = 0.0, weighted_lhs = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double s = std::sqrt(weight[static_cast<std::size_t>(r)]);
    design(r, 0) = s;
    design(r, 1) = s * gval[static_cast<std::size_t>(r)];
    rhs(r) = s * lhs[static_cast<std::size_t>(r)];
    weight_sum += weight[static_cast<std::size_t>(r)];
    weighted_lhs += weight[static_cast<std::size_t>(r)] * lhs[static_cast<std::size_t>(r)];
  }

  Eigen::JacobiSVD<Matrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const bool degenerate =
      rows < 2 || sv(1) <= 0.0 || sv(0) / sv(1) > kDegenerateCondition;
  if (degenerate) return {weighted_lhs / weight_sum, 0.0, true};
  const Vector sol = svd.solve(rhs);
  return {sol(0), sol(1), false};
}

double el_residual(const MultipodalGraphon& g, const Multipliers& mult) {
  const auto k = static_cast<Eigen::Index>(g.size());
  const Matrix overlap = overlap_matrix(g);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double b = g.block(i, j);
      const double target = mult.alpha + mult.beta * overlap(i, j);
      double violation;
      if (is_interior(b)) {
        violation = std::abs(binary_entropy_deriv1(b) - target);
      } else if (b < kSaturationThreshold) {
        violation = std::max(0.0, saturated_slope(b) - target);
      } else {
        violation = std::max(0.0, target - saturated_slope(b));
      }
      worst = std::max(worst, violation);
    }
  }
  return worst;
}

Matrix pointwise_value(const MultipodalGraphon& g, const Multipliers& mult) {
  const Matrix overlap = overlap_matrix(g);
  const auto k = static_cast<Eigen::Index>(g.size());
  Matrix v(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double b = g.block(i, j);
      v(i, j) = binary_entropy(b) - mult.alpha * b - mult.beta * overlap(i, j) * b;
    }
  }
  return v;
}

Matrix pointwise_value_derivative(const MultipodalGraphon& g, const Multipliers& mult) {
  const Matrix overlap = overlap_matrix(g);
  const auto k = static_cast<Eigen::Index>(g.size());
  Matrix d(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      d(i, j) = saturated_slope(g.block(i, j)) - mult.alpha - mult.beta * overlap(i, j);
    }
  }
  return d;
}

double worth(const MultipodalGraphon& g, const Multipliers& mult, const ColumnProfile& a) {
  const auto k = g.size();
  if (a.values.size() != k) {
    fail(ErrorCode::kInvalidArgument, "column profile length must equal the pode count");
  }
  double local = 0.0, quadratic = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double ai = a.values[i];
    local += g.width(i) * (binary_entropy(ai) - mult.alpha * ai);
    double row = 0.0;
    for (std::size_t j = 0; j < k; ++j) row += g.width(j) * a.values[j] * g.block(i, j);
    quadratic += g.width(i) * ai * row;
  }
  return local - 0.5 * mult.beta * quadratic;
}

std::vector<double> pode_worths(const MultipodalGraphon& g, const Multipliers& mult) {
  std::vector<double> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    ColumnProfile column;
    for (std::size_t j = 0; j < g.size(); ++j) column.values.push_back(g.block(i, j));
    out.push_back(worth(g, mult, column));
  }
  return out;
}

double worth_spread(const MultipodalGraphon& g, const Multipliers& mult) {
  const auto w = pode_worths(g, mult);
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  return *hi - *lo;
}

namespace {

// Coordinate-wise maximization of W in logit coordinates. Each update solves
// H'(a_i) = alpha + beta (B diag(c) a)_i exactly for a_i with the other
// coordinates held fixed, which is a Gauss-Seidel sweep of the fixed-point
// equations; W increases monotonically.
class WorthAscent {
 public:
  WorthAscent(const MultipodalGraphon& g, const Multipliers& mult) : g_(g), mult_(mult) {}

  bool run(std::vector<double>& logits, const WorthSearchOptions& opts) const {
    const auto k = g_.size();
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      double change = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double before = detail::sigmoid(logits[i]);
        logits[i] = best_coordinate(logits, i);
        change = std::max(change, std::abs(detail::sigmoid(logits[i]) - before));
      }
      if (change < opts.tolerance) return true;
    }
    return false;
  }

  bool is_local_max(const std::vector<double>& logits) const {
    const auto k = static_cast<Eigen::Index>(g_.size());
    Matrix hess(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const double ci = g_.width(static_cast<std::size_t>(i));
      for (Eigen::Index j = 0; j < k; ++j) {
        hess(i, j) = -mult_.beta * ci * g_.width(static_cast<std::size_t>(j)) * g_.block(i, j);
      }
      hess(i, i) -= ci / detail::logistic_variance(logits[static_cast<std::size_t>(i)]);
    }
    // Congruence scaling keeps the inertia and tames 1/(a(1-a)) blowups.
    Vector scale(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const double d = std::abs(hess(i, i));
      scale(i) = d > 0 ? 1.0 / std::sqrt(d) : 1.0;
    }
    const Matrix scaled = scale.asDiagonal() * hess * scale.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(scaled, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff() <= 1e-8;
  }

 private:
  double coordinate_value(double y, double ci, double self, double cross) const {
    const double a = detail::sigmoid(y);
    return ci * (detail::entropy_of_logit(y) - mult_.alpha * a) -
           0.5 * mult_.beta * (ci * ci * self * a * a + 2.0 * a * ci * cross);
  }

  double best_coordinate(const std::vector<double>& logits, std::size_t i) const {
    const auto k = g_.size();
    const double ci = g_.width(i);
    double cross = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) cross += g_.width(j) * g_.block(i, j) * detail::sigmoid(logits[j]);
    }
    const double self = g_.block(i, i);
    const double kappa = mult_.beta * ci * self;
    const double r = mult_.alpha + mult_.beta * cross;
    // Stationarity in the logit y of a_i: -y - r - kappa sigmoid(y) = 0.
    const auto phi = [&](double y) { return -y - r - kappa * detail::sigmoid(y); };
    const double lo = -r - std::abs(kappa) - 1.0;
    const double hi = -r + std::abs(kappa) + 1.0;

    std::vector<double> cuts{lo};
    if (kappa < -4.0) {
      const double root = std::sqrt(1.0 + 4.0 / kappa);
      for (double s : {(1.0 - root) / 2.0, (1.0 + root) / 2.0}) {
        const double y = detail::logit(s);
        if (y > lo && y < hi) cuts.push_back(y);
      }
    }
    cuts.push_back(hi);

    double best_y = logits[i];
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      double a = cuts[s], b = cuts[s + 1];
      double fa = phi(a), fb = phi(b);
      // Only + to - crossings are maxima of the coordinate objective.
      if (!(fa > 0 && fb < 0)) continue;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = phi(m);
        if (fm > 0) {
          a = m;
        } else {
          b = m;
        }
      }
      const double y = 0.5 * (a + b);
      const double val = coordinate_value(y, ci, self, cross);
      if (val > best_val) {
        best_val = val;
        best_y = y;
      }
    }
    return best_y;
  }

  const MultipodalGraphon& g_;
  const Multipliers& mult_;
};

double clamp_logit(double u) {
  const double x = std::clamp(u, 1e-300, 1.0);
  if (x >= 1.0) return 700.0;
  return detail::logit(x);
}

}  // namespace

WorthSearch maximize_worth(const MultipodalGraphon& g, const Multipliers& mult,
                           const WorthSearchOptions& opts) {
  const auto k = g.size();
  std::vector<std::vector<double>> starts;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> y(k);
    for (std::size_t j = 0; j < k; ++j) y[j] = clamp_logit(g.block(i, j));
    starts.push_back(std::move(y));
  }
  starts.emplace_back(k, -700.0);
  starts.emplace_back(k, 700.0);
  std::mt19937_64 rng(derive_seed(opts.seed, 0x776f727468ULL));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < opts.random_starts; ++s) {
    std::vector<double> y(k);
    for (auto& v : y) v = clamp_logit(unif(rng));
    starts.push_back(std::move(y));
  }

  WorthAscent ascent(g, mult);
  WorthSearch out;
  for (auto& y : starts) {
    if (!ascent.run(y, opts) || !ascent.is_local_max(y)) {
      ++out.failed_starts;
      continue;
    }
    ColumnProfile column;
    for (double v : y) column.values.push_back(detail::sigmoid(v));
    const bool duplicate = std::any_of(out.maxima.begin(), out.maxima.end(), [&](const auto& m) {
      double d = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        d = std::max(d, std::abs(m.column.values[j] - column.values[j]));
      }
      return d < opts.dedup_tolerance;
    });
    if (duplicate) continue;
    const double w = worth(g, mult, column);
    out.maxima.push_back({std::move(column), w});
  }
  std::stable_sort(out.maxima.begin(), out.maxima.end(),
                   [](const auto& a, const auto& b) { return a.worth > b.worth; });
  return out;
}

double worth_gap(const MultipodalGraphon& g, const Multipliers& mult,
                 const WorthSearchOptions& opts) {
  const auto pode = pode_worths(g, mult);
  const double best_pode = *std::max_element(pode.begin(), pode.end());
  const auto search = maximize_worth(g, mult, opts);
  if (search.maxima.empty()) return 0.0;
  return search.maxima.front().worth - best_pode;
}

OptimalityDiagnostics diagnose(const MultipodalGraphon& g, const Multipliers& mult,
                               const WorthSearchOptions& opts) {
  OptimalityDiagnostics d;
  d.multipliers = mult;
  d.el_residual = el_residual(g, mult);
  d.worth_spread = worth_spread(g, mult);
  d.worth_gap = worth_gap(g, mult, opts);
  return d;
}

}  // namespace graphon
