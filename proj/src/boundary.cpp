#include "graphon/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "graphon/error.hpp"

namespace graphon {

namespace {

constexpr double kBoundaryTolerance = 1e-12;
constexpr double kCuspTolerance = 1e-12;

}  // namespace

double scallop_family_triangle_density(int n, double e, double c) {
  const double nn = n;
  return nn * (nn + 1) * (nn + 2) * c * c * c - 3 * nn * (nn + 1) * c * c + 3 * nn * e * c;
}

double scallop_family_block(int n, double e, double c) {
  const double rest = 1.0 - n * c;
  return 2.0 * (e + n * c * c - 1.0 + rest * rest) / (rest * rest);
}

double scallop_family_entropy(int n, double e, double c) {
  const double rest = 1.0 - n * c;
  return 0.5 * rest * rest * binary_entropy(scallop_family_block(n, e, c));
}

double scallop_family_entropy_slope(int n, double e, double c) {
  const double p = scallop_family_block(n, e, c);
  return n * ((n + 2) * c - 1.0) * std::log1p(-p) + 2.0 * n * (1.0 - (n + 1) * c) * std::log(p);
}

MultipodalGraphon scallop_family_graphon(int n, double e, double c) {
  const auto k = static_cast<Eigen::Index>(n + 2);
  const double rest = 1.0 - n * c;
  std::vector<double> widths(static_cast<std::size_t>(k), c);
  widths[static_cast<std::size_t>(n)] = 0.5 * rest;
  widths[static_cast<std::size_t>(n + 1)] = 0.5 * rest;
  Matrix b = Matrix::Ones(k, k);
  for (Eigen::Index i = 0; i < k; ++i) b(i, i) = 0.0;
  const double p = std::clamp(scallop_family_block(n, e, c), 0.0, 1.0);
  b(n, n + 1) = p;
  b(n + 1, n) = p;
  return MultipodalGraphon(std::move(widths), std::move(b));
}

ScallopSpec scallop_params(double e) {
  if (!(e >= 0.5)) {
    fail(ErrorCode::kInvalidArgument,
         "edge density below 1/2 lies in the flat region; use min_triangle_density");
  }
  if (!(e < 1.0)) fail(ErrorCode::kInvalidArgument, "edge density must be below 1");
  int n = 1;
  while (!(e < static_cast<double>(n + 1) / (n + 2))) ++n;
  ScallopSpec s;
  s.n = n;
  s.e = e;
  const double disc = std::max(0.0, 1.0 - (n + 2.0) * e / (n + 1.0));
  s.c0 = (1.0 + std::sqrt(disc)) / (n + 2.0);
  s.t0 = std::max(0.0, scallop_family_triangle_density(n, e, s.c0));
  s.p = std::clamp(scallop_family_block(n, e, s.c0), 0.0, 1.0);
  s.at_cusp = std::abs(e - static_cast<double>(n) / (n + 1)) <= kCuspTolerance;
  return s;
}

double min_triangle_density(double e) {
  if (e <= 0.5) return 0.0;
  if (e >= 1.0) return 1.0;
  return scallop_params(e).t0;
}

double max_triangle_density(double e) { return std::pow(e, 1.5); }

double er_curve(double e) { return e * e * e; }

bool contains(double e, double t) {
  if (!(e >= 0.0 && e <= 1.0)) return false;
  return t >= min_triangle_density(e) - kBoundaryTolerance &&
         t <= max_triangle_density(e) + kBoundaryTolerance;
}

MultipodalGraphon reference_graphon(Region region, double e) {
  switch (region) {
    case Region::kBottomFlat: {
      if (!(e >= 0.0 && e <= 0.5)) {
        fail(ErrorCode::kInvalidArgument, "bottom_flat reference needs 0 <= e <= 1/2");
      }
      Matrix b(2, 2);
      b << 0.0, 2.0 * e, 2.0 * e, 0.0;
      return MultipodalGraphon({0.5, 0.5}, std::move(b));
    }
    case Region::kScallop: {
      const auto s = scallop_params(e);
      return scallop_family_graphon(s.n, e, s.c0);
    }
    case Region::kTop: {
      if (!(e > 0.0 && e < 1.0)) fail(ErrorCode::kInvalidArgument, "top reference needs 0 < e < 1");
      const double r = std::sqrt(e);
      Matrix b(2, 2);
      b << 1.0, 0.0, 0.0, 0.0;
      return MultipodalGraphon({r, 1.0 - r}, std::move(b));
    }
    case Region::kErdosRenyi: {
      if (!(e >= 0.0 && e <= 1.0)) fail(ErrorCode::kInvalidArgument, "er reference needs 0 <= e <= 1");
      return MultipodalGraphon::constant(e);
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown region");
}

}  // namespace graphon
