#include "numerics.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace graphon::detail {

namespace {

constexpr double kMaxStep = 4.0;
constexpr double kFeasible = 1e-12;

bool pushes_out(const Family& fam, const Vector& z, int p, double descent) {
  if (!fam.at_bound(z, p)) return false;
  return (z(p) > 0 && descent > 0) || (z(p) < 0 && descent < 0);
}

// Stationarity system in logit form. Unknowns: the free parameters, plus
// (alpha, beta) when the constraints are active.
class KktSystem {
 public:
  KktSystem(const Family& fam, bool constrained, double e, double t)
      : fam_(fam), constrained_(constrained), e_(e), t_(t) {
    const auto widths = fam.width_params();
    contrast_of_.assign(static_cast<std::size_t>(fam.param_count()), -1);
    for (std::size_t q = 0; q < widths.size(); ++q) {
      contrast_of_[static_cast<std::size_t>(widths[q])] = static_cast<int>(q);
    }
  }

  // Blocks pinned at the logit clamp whose EL target lies beyond it, and
  // width parameters at their bound, are dropped from the system.
  std::vector<int> free_params(const Vector& z, double alpha, double beta) const {
    const FamilyEval ev = fam_.evaluate(z);
    std::vector<int> out;
    for (int p = 0; p < fam_.param_count(); ++p) {
      if (fam_.at_bound(z, p)) {
        if (!fam_.is_block_param(p)) continue;
        const double target = -alpha - beta * ev.param_overlap(p);
        if ((z(p) > 0 && target >= z(p)) || (z(p) < 0 && target <= z(p))) continue;
      }
      out.push_back(p);
    }
    return out;
  }

  Vector residual(const Vector& z, double alpha, double beta, const std::vector<int>& free) const {
    const FamilyEval ev = fam_.evaluate(z);
    const Vector v = ev.entropy_width_partials - alpha * ev.edge_width_partials -
                     (beta / 3.0) * ev.triangle_width_partials;
    const Vector contrasts = fam_.width_contrasts(v);
    const auto n = static_cast<Eigen::Index>(free.size());
    Vector r(n + (constrained_ ? 2 : 0));
    for (Eigen::Index i = 0; i < n; ++i) {
      const int p = free[static_cast<std::size_t>(i)];
      if (fam_.is_block_param(p)) {
        r(i) = -z(p) - alpha - beta * ev.param_overlap(p);
      } else {
        r(i) = contrasts(contrast_of_[static_cast<std::size_t>(p)]);
      }
    }
    if (constrained_) {
      r(n) = ev.edge - e_;
      r(n + 1) = ev.triangle - t_;
    }
    return r;
  }

  bool constrained() const { return constrained_; }

 private:
  const Family& fam_;
  bool constrained_;
  double e_, t_;
  std::vector<int> contrast_of_;
};

struct NewtonState {
  Vector z;
  double alpha;
  double beta;
};

Vector pack(const NewtonState& s, const std::vector<int>& free, bool with_mult) {
  const auto n = static_cast<Eigen::Index>(free.size());
  Vector w(n + (with_mult ? 2 : 0));
  for (Eigen::Index i = 0; i < n; ++i) w(i) = s.z(free[static_cast<std::size_t>(i)]);
  if (with_mult) {
    w(n) = s.alpha;
    w(n + 1) = s.beta;
  }
  return w;
}

NewtonState unpack(const Family& fam, const NewtonState& base, const Vector& w,
                   const std::vector<int>& free, bool with_mult) {
  NewtonState s = base;
  const auto n = static_cast<Eigen::Index>(free.size());
  for (Eigen::Index i = 0; i < n; ++i) s.z(free[static_cast<std::size_t>(i)]) = w(i);
  fam.project(s.z);
  if (with_mult) {
    s.alpha = w(n);
    s.beta = w(n + 1);
  }
  return s;
}

// Returns the final max-norm of the residual.
double newton(const Family& fam, const KktSystem& sys, NewtonState& st, const SolveControls& ctl) {
  const bool with_mult = sys.constrained();
  double norm = std::numeric_limits<double>::infinity();
  for (int it = 0; it < ctl.newton_iterations; ++it) {
    const auto free = sys.free_params(st.z, st.alpha, st.beta);
    const Vector r = sys.residual(st.z, st.alpha, st.beta, free);
    norm = r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0;
    if (norm < ctl.newton_tolerance) break;

    const Vector w = pack(st, free, with_mult);
    Matrix jac(r.size(), w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(w(j)));
      Vector wp = w, wm = w;
      wp(j) += h;
      wm(j) -= h;
      // Evaluate without projection so the difference quotient stays centred.
      NewtonState sp = st, sm = st;
      const auto n = static_cast<Eigen::Index>(free.size());
      for (Eigen::Index i = 0; i < n; ++i) {
        sp.z(free[static_cast<std::size_t>(i)]) = wp(i);
        sm.z(free[static_cast<std::size_t>(i)]) = wm(i);
      }
      if (with_mult) {
        sp.alpha = wp(n), sp.beta = wp(n + 1);
        sm.alpha = wm(n), sm.beta = wm(n + 1);
      }
      jac.col(j) = (sys.residual(sp.z, sp.alpha, sp.beta, free) -
                    sys.residual(sm.z, sm.alpha, sm.beta, free)) / (2.0 * h);
    }
    const Vector step = jac.completeOrthogonalDecomposition().solve(-r);
    if (!step.allFinite()) break;

    const double merit = r.squaredNorm();
    bool accepted = false;
    double s = 1.0;
    for (int ls = 0; ls < 40; ++ls, s *= 0.5) {
      NewtonState trial = unpack(fam, st, w + s * step, free, with_mult);
      const Vector rt = sys.residual(trial.z, trial.alpha, trial.beta, free);
      if (rt.allFinite() && rt.squaredNorm() < (1.0 - 1e-4 * s) * merit) {
        st = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  const auto free = sys.free_params(st.z, st.alpha, st.beta);
  const Vector r = sys.residual(st.z, st.alpha, st.beta, free);
  return r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0;
}

LocalSolution finish(const Family& fam, const KktSystem& sys, const NewtonState& st,
                     double norm, const SolveControls& ctl) {
  LocalSolution out;
  out.z = st.z;
  out.alpha = st.alpha;
  out.beta = st.beta;
  const FamilyEval ev = fam.evaluate(st.z);
  out.entropy = ev.entropy;
  out.edge = ev.edge;
  out.triangle = ev.triangle;
  const auto free = sys.free_params(st.z, st.alpha, st.beta);
  const Vector r = sys.residual(st.z, st.alpha, st.beta, free);
  const auto n = static_cast<Eigen::Index>(free.size());
  out.stationarity = n ? r.head(n).lpNorm<Eigen::Infinity>() : 0.0;
  out.newton_converged = norm < ctl.newton_tolerance;
  return out;
}

// Minimum-norm Gauss-Newton on (epsilon - e, tau - t) = 0 within the box.
double restore_feasibility(const Family& fam, Vector& z, double e, double t) {
  double violation = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    const FamilyEval ev = fam.evaluate(z);
    Eigen::Vector2d h(ev.edge - e, ev.triangle - t);
    violation = h.lpNorm<Eigen::Infinity>();
    if (violation < 1e-14) break;
    Matrix jac(2, z.size());
    jac.row(0) = ev.edge_grad.transpose();
    jac.row(1) = ev.triangle_grad.transpose();
    for (Eigen::Index p = 0; p < z.size(); ++p) {
      if (fam.at_bound(z, static_cast<int>(p))) jac.col(p).setZero();
    }
    Vector step = jac.completeOrthogonalDecomposition().solve(-Vector(h));
    if (!step.allFinite()) break;
    const double longest = step.lpNorm<Eigen::Infinity>();
    if (longest > kMaxStep) step *= kMaxStep / longest;
    bool accepted = false;
    double s = 1.0;
    for (int ls = 0; ls < 30; ++ls, s *= 0.5) {
      Vector trial = z + s * step;
      fam.project(trial);
      const FamilyEval et = fam.evaluate(trial);
      const Eigen::Vector2d ht(et.edge - e, et.triangle - t);
      if (ht.norm() < (1.0 - 1e-4 * s) * h.norm()) {
        z = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  const FamilyEval ev = fam.evaluate(z);
  return std::max(std::abs(ev.edge - e), std::abs(ev.triangle - t));
}

// Gradient of S projected onto the tangent space of the constraint set,
// with frozen (bound-active) parameters held fixed.
struct TangentStep {
  double entropy = 0.0;
  Vector gradient;
  Vector mask;
  Matrix basis;  // orthonormal basis of the masked constraint normals
  double lambda_edge = 0.0;
  double lambda_triangle = 0.0;

  Vector project(const Vector& v) const {
    Vector out = mask.cwiseProduct(v);
    if (basis.cols() > 0) out -= basis * (basis.transpose() * out);
    return mask.cwiseProduct(out);
  }
};

TangentStep tangent_gradient(const Family& fam, const Vector& z) {
  const FamilyEval ev = fam.evaluate(z);
  const auto n = z.size();
  TangentStep out;
  out.entropy = ev.entropy;
  out.mask = Vector::Ones(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    if (pushes_out(fam, z, static_cast<int>(p), ev.entropy_grad(p))) out.mask(p) = 0.0;
  }
  Matrix normals(n, 2);
  normals.col(0) = out.mask.cwiseProduct(ev.edge_grad);
  normals.col(1) = out.mask.cwiseProduct(ev.triangle_grad);
  Eigen::JacobiSVD<Matrix> svd(normals, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-12 * std::max(1.0, sv(0))) ++rank;
  }
  out.basis = svd.matrixU().leftCols(rank);
  const Vector lam = svd.solve(ev.entropy_grad);
  out.lambda_edge = lam(0);
  out.lambda_triangle = lam(1);
  out.gradient = out.project(ev.entropy_grad);
  return out;
}

}  // namespace

double projected_bfgs(const Family& fam, const Objective& f, Vector& z, int max_iterations) {
  const auto n = z.size();
  fam.project(z);
  Vector g(n);
  double fz = f(z, g);
  Matrix hinv = Matrix::Identity(n, n);
  int stalls = 0;
  for (int it = 0; it < max_iterations; ++it) {
    Vector pg = g;
    for (Eigen::Index p = 0; p < n; ++p) {
      if (pushes_out(fam, z, static_cast<int>(p), -g(p))) pg(p) = 0.0;
    }
    if (pg.lpNorm<Eigen::Infinity>() < 1e-12) break;

    Vector d = -hinv * pg;
    for (Eigen::Index p = 0; p < n; ++p) {
      if (pushes_out(fam, z, static_cast<int>(p), d(p))) d(p) = 0.0;
    }
    if (d.dot(pg) >= 0.0) {
      hinv.setIdentity();
      d = -pg;
    }
    const double longest = d.lpNorm<Eigen::Infinity>();
    if (longest > kMaxStep) d *= kMaxStep / longest;

    Vector zn(n), gn(n);
    double fn = fz;
    bool accepted = false;
    double s = 1.0;
    for (int ls = 0; ls < 40; ++ls, s *= 0.5) {
      zn = z + s * d;
      fam.project(zn);
      fn = f(zn, gn);
      if (std::isfinite(fn) && fn <= fz + 1e-4 * g.dot(zn - z)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (hinv.isIdentity()) break;
      hinv.setIdentity();
      continue;
    }
    const Vector sk = zn - z;
    const Vector yk = gn - g;
    const double sy = sk.dot(yk);
    if (sy > 1e-12 * sk.norm() * yk.norm() && sy > 0.0) {
      const double rho = 1.0 / sy;
      const Matrix eye = Matrix::Identity(n, n);
      hinv = (eye - rho * sk * yk.transpose()) * hinv * (eye - rho * yk * sk.transpose()) +
             rho * sk * sk.transpose();
    }
    stalls = (fz - fn <= 1e-14 * (1.0 + std::abs(fz))) ? stalls + 1 : 0;
    z = zn;
    g = gn;
    fz = fn;
    if (stalls >= 5) break;
  }
  return fz;
}

LocalSolution solve_constrained(const Family& fam, Vector z, const double e, const double t,
                                const SolveControls& ctl) {
  const auto n = z.size();
  fam.project(z);
  if (restore_feasibility(fam, z, e, t) > kFeasible) {
    return polish_constrained(fam, std::move(z), e, t, 0.0, 0.0, ctl);
  }
  TangentStep tan = tangent_gradient(fam, z);
  Matrix hinv = Matrix::Identity(n, n);
  int stalls = 0;
  for (int it = 0; it < ctl.ascent_iterations; ++it) {
    if (tan.gradient.lpNorm<Eigen::Infinity>() < 1e-13) break;
    Vector d = tan.project(hinv * tan.gradient);
    if (d.dot(tan.gradient) <= 0.0) {
      hinv.setIdentity();
      d = tan.gradient;
    }
    const double longest = d.lpNorm<Eigen::Infinity>();
    if (longest > kMaxStep) d *= kMaxStep / longest;

    bool accepted = false;
    Vector zn;
    double s = 1.0;
    for (int ls = 0; ls < 40; ++ls, s *= 0.5) {
      zn = z + s * d;
      fam.project(zn);
      if (restore_feasibility(fam, zn, e, t) > kFeasible) continue;
      if (fam.evaluate(zn).entropy >= tan.entropy + 1e-4 * s * tan.gradient.dot(d)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (hinv.isIdentity()) break;
      hinv.setIdentity();
      continue;
    }
    TangentStep next = tangent_gradient(fam, zn);
    // Minimization convention for the update: gradient of -S.
    const Vector sk = next.project(zn - z);
    const Vector yk = tan.gradient - next.gradient;
    const double sy = sk.dot(yk);
    if (sy > 1e-12 * sk.norm() * yk.norm() && sy > 0.0) {
      const double rho = 1.0 / sy;
      const Matrix eye = Matrix::Identity(n, n);
      hinv = (eye - rho * sk * yk.transpose()) * hinv * (eye - rho * yk * sk.transpose()) +
             rho * sk * sk.transpose();
    }
    stalls = (next.entropy - tan.entropy <= 1e-15 * (1.0 + tan.entropy)) ? stalls + 1 : 0;
    z = std::move(zn);
    tan = std::move(next);
    if (stalls >= 5) break;
  }
  return polish_constrained(fam, std::move(z), e, t, tan.lambda_edge, 3.0 * tan.lambda_triangle,
                            ctl);
}

LocalSolution polish_constrained(const Family& fam, Vector z, double e, double t,
                                 double alpha, double beta, const SolveControls& ctl) {
  const KktSystem sys(fam, true, e, t);
  fam.project(z);
  NewtonState st{std::move(z), alpha, beta};
  const NewtonState start = st;
  const double norm = newton(fam, sys, st, ctl);
  LocalSolution before = finish(fam, sys, start, std::numeric_limits<double>::infinity(), ctl);
  LocalSolution after = finish(fam, sys, st, norm, ctl);
  const auto violation = [&](const LocalSolution& s) {
    return std::max(std::abs(s.edge - e), std::abs(s.triangle - t));
  };
  // Keep the Newton point unless it lost feasibility or entropy.
  if (violation(after) <= std::max(kFeasible, violation(before)) &&
      after.entropy >= before.entropy - 1e-8) {
    return after;
  }
  return before;
}

LocalSolution solve_free_energy(const Family& fam, Vector z, double alpha, double beta,
                                const SolveControls& ctl) {
  const Objective obj = [&](const Vector& x, Vector& grad) {
    const FamilyEval ev = fam.evaluate(x);
    grad = -(ev.entropy_grad - alpha * ev.edge_grad - (beta / 3.0) * ev.triangle_grad);
    return -(ev.entropy - alpha * ev.edge - (beta / 3.0) * ev.triangle);
  };
  projected_bfgs(fam, obj, z, ctl.bfgs_iterations);
  const KktSystem sys(fam, false, 0.0, 0.0);
  NewtonState st{z, alpha, beta};
  Vector scratch(z.size());
  const double f_before = -obj(z, scratch);
  NewtonState polished = st;
  const double norm = newton(fam, sys, polished, ctl);
  // Newton may walk to a nearby saddle; keep it only if F did not drop.
  if (-obj(polished.z, scratch) >= f_before - 1e-12) return finish(fam, sys, polished, norm, ctl);
  return finish(fam, sys, st, std::numeric_limits<double>::infinity(), ctl);
}

}  // namespace graphon::detail
