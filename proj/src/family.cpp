#include "family.hpp"

#include <algorithm>
#include <cmath>

#include "graphon/error.hpp"
#include "logistic.hpp"

namespace graphon::detail {

namespace {

double bounded_logit(double u) {
  const double lo = sigmoid(-kLogitClamp);
  return logit(std::clamp(u, lo, 1.0 - lo));
}

}  // namespace

Family Family::free_podes(int k) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "pode count must be positive");
  Family f(k, WidthMap::kSoftmax);
  f.block_param_.assign(static_cast<std::size_t>(k * k), 0);
  int p = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      f.block_param_[f.idx(i, j)] = p;
      f.block_param_[f.idx(j, i)] = p;
      ++p;
    }
  }
  f.n_block_params_ = p;
  f.block_offset_ = 0;
  f.n_params_ = p + (k - 1);
  return f;
}

Family Family::n2_symmetric(int n) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "(n,2) family needs n >= 1");
  const int k = n + 2;
  Family f(k, WidthMap::kN2);
  f.n_ = n;
  f.block_offset_ = 1;
  const int diag = 1;
  const int clique = n >= 2 ? 2 : -1;
  const int cross = n >= 2 ? 3 : 2;
  const int pair_diag = cross + 1;
  const int pair = cross + 2;
  f.block_param_.assign(static_cast<std::size_t>(k * k), 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      int p;
      const bool ci = i < n, cj = j < n;
      if (ci && cj) {
        p = i == j ? diag : clique;
      } else if (ci || cj) {
        p = cross;
      } else {
        p = i == j ? pair_diag : pair;
      }
      f.block_param_[f.idx(i, j)] = p;
    }
  }
  f.n_block_params_ = pair;
  f.n_params_ = pair + 1;
  return f;
}

void Family::widths(const Vector& z, std::vector<double>& c, Matrix& dc) const {
  c.assign(static_cast<std::size_t>(k_), 0.0);
  dc = Matrix::Zero(k_, n_params_);
  if (map_ == WidthMap::kSoftmax) {
    const int off = n_block_params_;
    double mx = 0.0;
    for (int i = 0; i + 1 < k_; ++i) mx = std::max(mx, z(off + i));
    double total = 0.0;
    for (int i = 0; i < k_; ++i) {
      const double y = i + 1 < k_ ? z(off + i) : 0.0;
      c[static_cast<std::size_t>(i)] = std::exp(y - mx);
      total += c[static_cast<std::size_t>(i)];
    }
    for (auto& v : c) v /= total;
    for (int i = 0; i < k_; ++i) {
      for (int j = 0; j + 1 < k_; ++j) {
        const double ci = c[static_cast<std::size_t>(i)];
        dc(i, off + j) = ci * ((i == j ? 1.0 : 0.0) - c[static_cast<std::size_t>(j)]);
      }
    }
  } else {
    const double s = sigmoid(z(0));
    const double w = s / n_;
    const double dw = logistic_variance(z(0)) / n_;
    for (int i = 0; i < n_; ++i) {
      c[static_cast<std::size_t>(i)] = w;
      dc(i, 0) = dw;
    }
    // (1 - n w) / 2 = (1 - s) / 2, computed from sigmoid(-z) to keep precision.
    const double pair = 0.5 * sigmoid(-z(0));
    c[static_cast<std::size_t>(n_)] = pair;
    c[static_cast<std::size_t>(n_ + 1)] = pair;
    dc(n_, 0) = -0.5 * n_ * dw;
    dc(n_ + 1, 0) = -0.5 * n_ * dw;
  }
}

Vector Family::params_from(const MultipodalGraphon& g) const {
  if (static_cast<int>(g.size()) != k_) {
    fail(ErrorCode::kInvalidArgument, "seed graphon has the wrong pode count");
  }
  Vector z = Vector::Zero(n_params_);
  std::vector<double> sum(static_cast<std::size_t>(n_params_), 0.0);
  std::vector<int> count(static_cast<std::size_t>(n_params_), 0);
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      const auto p = static_cast<std::size_t>(block_param_[idx(i, j)]);
      sum[p] += bounded_logit(g.block(i, j));
      ++count[p];
    }
  }
  for (int p = 0; p < n_params_; ++p) {
    if (count[static_cast<std::size_t>(p)] > 0) {
      z(p) = sum[static_cast<std::size_t>(p)] / count[static_cast<std::size_t>(p)];
    }
  }
  if (map_ == WidthMap::kSoftmax) {
    const double last = std::log(g.width(static_cast<std::size_t>(k_ - 1)));
    for (int i = 0; i + 1 < k_; ++i) {
      z(n_block_params_ + i) = std::log(g.width(static_cast<std::size_t>(i))) - last;
    }
  } else {
    double clique = 0.0;
    for (int i = 0; i < n_; ++i) clique += g.width(static_cast<std::size_t>(i));
    z(0) = logit(std::clamp(clique, 1e-12, 1.0 - 1e-12));
  }
  project(z);
  return z;
}

MultipodalGraphon Family::graphon(const Vector& z) const {
  std::vector<double> c;
  Matrix dc;
  widths(z, c, dc);
  Matrix b(k_, k_);
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) b(i, j) = sigmoid(logit_of(z, i, j));
  }
  // Softmax output sums to one up to round-off; fold the residue into the
  // widest pode.
  double total = 0.0;
  for (double v : c) total += v;
  auto widest = std::max_element(c.begin(), c.end());
  *widest += 1.0 - total;
  return MultipodalGraphon(std::move(c), std::move(b));
}

FamilyEval Family::evaluate(const Vector& z) const {
  std::vector<double> c;
  Matrix dc;
  widths(z, c, dc);
  const auto k = static_cast<Eigen::Index>(k_);
  Matrix u(k, k), var(k, k), h(k, k), x(k, k);
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      const double xij = logit_of(z, i, j);
      x(i, j) = xij;
      u(i, j) = sigmoid(xij);
      var(i, j) = logistic_variance(xij);
      h(i, j) = entropy_of_logit(xij);
    }
  }
  Vector cv(k);
  for (int i = 0; i < k_; ++i) cv(i) = c[static_cast<std::size_t>(i)];
  const Matrix overlap = u * cv.asDiagonal() * u;

  FamilyEval out;
  out.entropy_grad = Vector::Zero(n_params_);
  out.edge_grad = Vector::Zero(n_params_);
  out.triangle_grad = Vector::Zero(n_params_);
  Vector ds = Vector::Zero(k), de = Vector::Zero(k), dt = Vector::Zero(k);
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      const double area = cv(i) * cv(j);
      out.entropy += area * h(i, j);
      out.edge += area * u(i, j);
      out.triangle += area * u(i, j) * overlap(i, j);
      const int p = block_param_[idx(i, j)];
      // H'(u) = -x, du/dx = u(1 - u)
      out.entropy_grad(p) += area * (-x(i, j)) * var(i, j);
      out.edge_grad(p) += area * var(i, j);
      out.triangle_grad(p) += 3.0 * area * overlap(i, j) * var(i, j);
      ds(i) += 2.0 * cv(j) * h(i, j);
      de(i) += 2.0 * cv(j) * u(i, j);
      dt(i) += 3.0 * cv(j) * u(i, j) * overlap(i, j);
    }
  }
  out.param_overlap = Vector::Zero(n_params_);
  Vector tied_area = Vector::Zero(n_params_);
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      const int p = block_param_[idx(i, j)];
      out.param_overlap(p) += cv(i) * cv(j) * overlap(i, j);
      tied_area(p) += cv(i) * cv(j);
    }
  }
  for (int p = 0; p < n_params_; ++p) {
    if (tied_area(p) > 0.0) out.param_overlap(p) /= tied_area(p);
  }
  out.entropy_width_partials = ds;
  out.edge_width_partials = de;
  out.triangle_width_partials = dt;
  out.entropy_grad += dc.transpose() * ds;
  out.edge_grad += dc.transpose() * de;
  out.triangle_grad += dc.transpose() * dt;
  return out;
}

Vector Family::width_contrasts(const Vector& v) const {
  if (map_ == WidthMap::kSoftmax) {
    Vector out(k_ - 1);
    for (int i = 0; i + 1 < k_; ++i) out(i) = v(i) - v(k_ - 1);
    return out;
  }
  Vector out(1);
  out(0) = v(0) - v(n_);
  return out;
}

std::vector<int> Family::width_params() const {
  std::vector<int> out;
  for (int p = 0; p < n_params_; ++p) {
    if (!is_block_param(p)) out.push_back(p);
  }
  return out;
}

void Family::project(Vector& z) const {
  for (int p = 0; p < n_params_; ++p) {
    const double bound = is_block_param(p) ? kLogitClamp : kWidthParamClamp;
    z(p) = std::clamp(z(p), -bound, bound);
  }
}

bool Family::at_bound(const Vector& z, int p) const {
  const double bound = is_block_param(p) ? kLogitClamp : kWidthParamClamp;
  return std::abs(z(p)) >= bound - 1e-12;
}

}  // namespace graphon::detail
