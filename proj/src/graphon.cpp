#include "graphon/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "graphon/error.hpp"

namespace graphon {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-12;

}  // namespace

double binary_entropy(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return -(u * std::log(u) + (1.0 - u) * std::log1p(-u));
}

double binary_entropy_deriv1(double u) {
  if (u <= 0.0 || u >= 1.0) fail(ErrorCode::kPole, "H'(u) has a pole at u = 0 and u = 1");
  return std::log1p(-u) - std::log(u);
}

double binary_entropy_deriv2(double u) {
  if (u <= 0.0 || u >= 1.0) fail(ErrorCode::kPole, "H''(u) has a pole at u = 0 and u = 1");
  return -(1.0 / u + 1.0 / (1.0 - u));
}

double binary_entropy_deriv1_inverse(double y) {
  // H'(u) = -logit(u)
  if (y >= 0) {
    const double z = std::exp(-y);
    return z / (1.0 + z);
  }
  return 1.0 / (1.0 + std::exp(y));
}

MultipodalGraphon::MultipodalGraphon(std::vector<double> widths, Matrix blocks)
    : widths_(std::move(widths)), blocks_(std::move(blocks)) {
  const auto k = widths_.size();
  if (k == 0) fail(ErrorCode::kInvalidArgument, "graphon needs at least one pode");
  if (static_cast<std::size_t>(blocks_.rows()) != k ||
      static_cast<std::size_t>(blocks_.cols()) != k) {
    fail(ErrorCode::kInvalidArgument, "block matrix must be k x k for k podes");
  }
  double total = 0.0;
  for (double c : widths_) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      fail(ErrorCode::kInvalidArgument, "pode widths must be positive");
    }
    total += c;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os << "pode widths must sum to 1 (got " << total << ")";
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double v = blocks_(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        fail(ErrorCode::kInvalidArgument, "block values must lie in [0,1]");
      }
      if (std::abs(v - blocks_(j, i)) > kSymmetryTolerance) {
        fail(ErrorCode::kInvalidArgument, "block matrix must be symmetric");
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = 0.5 * (blocks_(i, j) + blocks_(j, i));
      blocks_(i, j) = v;
      blocks_(j, i) = v;
    }
  }
}

MultipodalGraphon MultipodalGraphon::constant(double value) {
  Matrix b(1, 1);
  b(0, 0) = value;
  return MultipodalGraphon({1.0}, std::move(b));
}

MultipodalGraphon MultipodalGraphon::with_block(std::size_t i, std::size_t j,
                                                double value) const {
  Matrix b = blocks_;
  b(i, j) = value;
  b(j, i) = value;
  return MultipodalGraphon(widths_, std::move(b));
}

MultipodalGraphon MultipodalGraphon::permuted(std::span<const std::size_t> perm) const {
  const auto k = size();
  if (perm.size() != k) fail(ErrorCode::kInvalidArgument, "permutation has wrong length");
  std::vector<bool> seen(k, false);
  for (auto p : perm) {
    if (p >= k || seen[p]) fail(ErrorCode::kInvalidArgument, "not a permutation");
    seen[p] = true;
  }
  std::vector<double> c(k);
  Matrix b(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    c[i] = widths_[perm[i]];
    for (std::size_t j = 0; j < k; ++j) b(i, j) = blocks_(perm[i], perm[j]);
  }
  return MultipodalGraphon(std::move(c), std::move(b));
}

MultipodalGraphon MultipodalGraphon::split(std::size_t i, double fraction) const {
  const auto k = size();
  if (i >= k || !(fraction > 0.0 && fraction < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "invalid pode split");
  }
  std::vector<std::size_t> src(k + 1);
  std::iota(src.begin(), src.begin() + static_cast<long>(k), 0);
  src[k] = i;
  std::vector<double> c(widths_);
  c.push_back(widths_[i] * (1.0 - fraction));
  c[i] = widths_[i] * fraction;
  Matrix b(k + 1, k + 1);
  for (std::size_t a = 0; a <= k; ++a) {
    for (std::size_t bb = 0; bb <= k; ++bb) b(a, bb) = blocks_(src[a], src[bb]);
  }
  return MultipodalGraphon(std::move(c), std::move(b));
}

SubgraphSpec SubgraphSpec::edge() { return {2, {{0, 1}}}; }

SubgraphSpec SubgraphSpec::triangle() { return {3, {{0, 1}, {1, 2}, {2, 0}}}; }

SubgraphSpec SubgraphSpec::cycle(int length) {
  if (length < 3) fail(ErrorCode::kInvalidArgument, "cycles need at least 3 vertices");
  SubgraphSpec k{length, {}};
  for (int v = 0; v < length; ++v) k.edges.emplace_back(v, (v + 1) % length);
  return k;
}

void SubgraphSpec::validate() const {
  if (vertex_count < 1) fail(ErrorCode::kInvalidArgument, "subgraph needs a vertex");
  if (vertex_count > 8) {
    fail(ErrorCode::kInvalidArgument, "subgraph has more than 8 vertices (enumeration cost guard)");
  }
  std::vector<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      fail(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    if (u == v) fail(ErrorCode::kInvalidArgument, "loops are not allowed");
    const std::pair<int, int> key{std::min(u, v), std::max(u, v)};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      fail(ErrorCode::kInvalidArgument, "duplicate edge");
    }
    seen.emplace_back(key);
  }
}

double edge_density(const MultipodalGraphon& g) {
  const auto k = g.size();
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < k; ++j) row += g.width(j) * g.block(i, j);
    total += g.width(i) * row;
  }
  return total;
}

Matrix overlap_matrix(const MultipodalGraphon& g) {
  const auto k = static_cast<Eigen::Index>(g.size());
  Vector c(k);
  for (Eigen::Index i = 0; i < k; ++i) c(i) = g.width(static_cast<std::size_t>(i));
  const Matrix& b = g.blocks();
  Matrix overlap = b * c.asDiagonal() * b;
  return 0.5 * (overlap + overlap.transpose());
}

double triangle_density(const MultipodalGraphon& g) {
  const auto k = g.size();
  const Matrix overlap = overlap_matrix(g);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      total += g.width(i) * g.width(j) * g.block(i, j) * overlap(i, j);
    }
  }
  return total;
}

double shannon_entropy(const MultipodalGraphon& g) {
  const auto k = g.size();
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      total += g.width(i) * g.width(j) * binary_entropy(g.block(i, j));
    }
  }
  return total;
}

double operator_trace_power(const MultipodalGraphon& g, int m) {
  if (m < 1) fail(ErrorCode::kInvalidArgument, "trace power needs m >= 1");
  const auto k = static_cast<Eigen::Index>(g.size());
  Matrix weighted(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      weighted(i, j) = g.width(static_cast<std::size_t>(i)) * g.block(i, j);
    }
  }
  Matrix power = weighted;
  for (int step = 1; step < m; ++step) power = power * weighted;
  return power.trace();
}

double cycle_density(const MultipodalGraphon& g, int m) {
  if (m < 3) {
    fail(ErrorCode::kInvalidArgument,
         "cycle density needs m >= 3; 1- and 2-cycles are not subgraph densities");
  }
  return operator_trace_power(g, m);
}

double hom_density(const MultipodalGraphon& g, const SubgraphSpec& k) {
  k.validate();
  const auto pode_count = g.size();
  const auto v = static_cast<std::size_t>(k.vertex_count);
  std::vector<std::size_t> assign(v, 0);
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (auto a : assign) term *= g.width(a);
    for (auto [x, y] : k.edges) {
      term *= g.block(assign[static_cast<std::size_t>(x)], assign[static_cast<std::size_t>(y)]);
    }
    total += term;
    std::size_t pos = 0;
    while (pos < v && ++assign[pos] == pode_count) assign[pos++] = 0;
    if (pos == v) break;
  }
  return total;
}

std::vector<double> spectrum(const MultipodalGraphon& g) {
  const auto k = static_cast<Eigen::Index>(g.size());
  Matrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      m(i, j) = std::sqrt(g.width(static_cast<std::size_t>(i)) *
                          g.width(static_cast<std::size_t>(j))) *
                g.block(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> eig(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::stable_sort(eig.begin(), eig.end(), [](double a, double b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return a > b;
  });
  return eig;
}

MultipodalGraphon merge_podes(const MultipodalGraphon& g, std::size_t i, std::size_t j) {
  const auto k = g.size();
  if (i == j || i >= k || j >= k) fail(ErrorCode::kInvalidArgument, "invalid pode merge");
  if (i > j) std::swap(i, j);
  const double ci = g.width(i);
  const double cj = g.width(j);
  const double cm = ci + cj;
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < k; ++a) {
    if (a != j) keep.push_back(a);
  }
  std::vector<double> c(keep.size());
  Matrix b(keep.size(), keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    c[a] = keep[a] == i ? cm : g.width(keep[a]);
  }
  const auto row_value = [&](std::size_t other) {
    return (ci * g.block(i, other) + cj * g.block(j, other)) / cm;
  };
  const double diag = (ci * ci * g.block(i, i) + 2.0 * ci * cj * g.block(i, j) +
                       cj * cj * g.block(j, j)) /
                      (cm * cm);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t bb = 0; bb < keep.size(); ++bb) {
      const auto x = keep[a];
      const auto y = keep[bb];
      double v;
      if (x == i && y == i) {
        v = diag;
      } else if (x == i) {
        v = row_value(y);
      } else if (y == i) {
        v = row_value(x);
      } else {
        v = g.block(x, y);
      }
      b(a, bb) = std::clamp(v, 0.0, 1.0);
    }
  }
  // Re-normalize the widths against round-off in the sum.
  const double total = std::accumulate(c.begin(), c.end(), 0.0);
  for (auto& x : c) x /= total;
  return MultipodalGraphon(std::move(c), std::move(b));
}

namespace {

double row_distance(const MultipodalGraphon& g, std::size_t i, std::size_t j) {
  double d = 0.0;
  for (std::size_t l = 0; l < g.size(); ++l) {
    d = std::max(d, std::abs(g.block(i, l) - g.block(j, l)));
  }
  return d;
}

MultipodalGraphon sort_podes(const MultipodalGraphon& g) {
  const auto k = g.size();
  std::vector<double> row_sum(k, 0.0);
  std::vector<std::vector<double>> sorted_rows(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      row_sum[i] += g.width(j) * g.block(i, j);
      sorted_rows[i].push_back(g.block(i, j));
    }
    std::sort(sorted_rows[i].rbegin(), sorted_rows[i].rend());
  }
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (row_sum[a] != row_sum[b]) return row_sum[a] > row_sum[b];
    if (g.width(a) != g.width(b)) return g.width(a) > g.width(b);
    if (g.block(a, a) != g.block(b, b)) return g.block(a, a) > g.block(b, b);
    return sorted_rows[a] > sorted_rows[b];
  });
  return g.permuted(perm);
}

}  // namespace

MultipodalGraphon canonicalize(const MultipodalGraphon& g, double merge_tol) {
  MultipodalGraphon current = sort_podes(g);
  bool merged = true;
  while (merged && current.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i < current.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < current.size() && !merged; ++j) {
        if (row_distance(current, i, j) < merge_tol) {
          current = sort_podes(merge_podes(current, i, j));
          merged = true;
        }
      }
    }
  }
  return current;
}

FunctionalGradients functional_gradients(const MultipodalGraphon& g, bool with_entropy) {
  const auto k = static_cast<Eigen::Index>(g.size());
  const Matrix overlap = overlap_matrix(g);
  FunctionalGradients out{Matrix::Zero(k, k), Matrix::Zero(k, k), Matrix::Zero(k, k),
                          Vector::Zero(k),    Vector::Zero(k),    Vector::Zero(k)};
  for (Eigen::Index i = 0; i < k; ++i) {
    const double ci = g.width(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < k; ++j) {
      const double cj = g.width(static_cast<std::size_t>(j));
      const double b = g.block(i, j);
      const double mult = (i == j ? 1.0 : 2.0) * ci * cj;
      if (with_entropy) {
        if (b <= 0.0 || b >= 1.0) {
          fail(ErrorCode::kSaturated, "entropy gradient undefined at a saturated block");
        }
        out.entropy_blocks(i, j) = mult * binary_entropy_deriv1(b);
        out.entropy_widths(i) += 2.0 * cj * binary_entropy(b);
      }
      out.edge_blocks(i, j) = mult;
      out.triangle_blocks(i, j) = 3.0 * mult * overlap(i, j);
      out.edge_widths(i) += 2.0 * cj * b;
      out.triangle_widths(i) += 3.0 * cj * b * overlap(i, j);
    }
  }
  return out;
}

}  // namespace graphon
