#include "graphon/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphon/boundary.hpp"
#include "graphon/error.hpp"

namespace graphon {

double PhaseLabel::order_param(int k) const {
  const int i = k - 2;
  if (i < 0 || i >= static_cast<int>(order_params.size())) return 0.0;
  return order_params[static_cast<std::size_t>(i)];
}

double newton_determinant(std::span<const double> power_sums, int k) {
  if (k < 1 || static_cast<int>(power_sums.size()) < k) {
    fail(ErrorCode::kInvalidArgument, "newton_determinant needs k >= 1 power sums");
  }
  std::vector<double> el(static_cast<std::size_t>(k) + 1, 0.0);
  el[0] = 1.0;
  for (int m = 1; m <= k; ++m) {
    double acc = 0.0;
    for (int j = 1; j <= m; ++j) {
      const double term = el[static_cast<std::size_t>(m - j)] * power_sums[static_cast<std::size_t>(j - 1)];
      acc += (j % 2 == 1) ? term : -term;
    }
    el[static_cast<std::size_t>(m)] = acc / m;
  }
  return el[static_cast<std::size_t>(k)];
}

double order_parameter(const MultipodalGraphon& g, int k) {
  if (k < 2 || k > 6) fail(ErrorCode::kInvalidArgument, "order parameter index must be in [2, 6]");
  std::vector<double> sums;
  for (int j = 1; j <= k; ++j) sums.push_back(cycle_density(g, 3 * j));
  return newton_determinant(sums, k);
}

int rank(const MultipodalGraphon& g, double threshold) {
  const auto spec = spectrum(g);
  const double top = spec.empty() ? 0.0 : std::abs(spec.front());
  const double cut = threshold * std::max(1.0, top);
  return static_cast<int>(
      std::count_if(spec.begin(), spec.end(), [&](double v) { return std::abs(v) > cut; }));
}

namespace {

// Swapping podes i and j leaves the graphon unchanged (within tol).
bool swappable(const MultipodalGraphon& g, std::size_t i, std::size_t j, double tol) {
  if (std::abs(g.width(i) - g.width(j)) > tol) return false;
  if (std::abs(g.block(i, i) - g.block(j, j)) > tol) return false;
  for (std::size_t l = 0; l < g.size(); ++l) {
    if (l == i || l == j) continue;
    if (std::abs(g.block(i, l) - g.block(j, l)) > tol) return false;
  }
  return true;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

std::optional<std::pair<int, int>> detect_symmetry(const MultipodalGraphon& g, double tol) {
  const std::size_t k = g.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (swappable(g, i, j, tol)) parent[find_root(parent, j)] = find_root(parent, i);
    }
  }
  struct Class {
    std::size_t root;
    int size;
    double width;
  };
  std::vector<Class> classes;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t r = find_root(parent, i);
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Class& c) { return c.root == r; });
    if (it == classes.end()) {
      classes.push_back({r, 1, g.width(i)});
    } else {
      ++it->size;
    }
  }
  if (classes.size() == 1) return std::pair{classes[0].size, 0};
  if (classes.size() != 2) return std::nullopt;
  const Class& a = classes[0];
  const Class& b = classes[1];
  const bool a_first = std::abs(a.width - b.width) > tol ? a.width > b.width : a.size >= b.size;
  return a_first ? std::pair{a.size, b.size} : std::pair{b.size, a.size};
}

PhaseLabel classify(const OptimizationResult& result, int k_max) {
  const MultipodalGraphon& g = result.graphon;
  PhaseLabel label;
  label.rank = rank(g);
  label.symmetry = detect_symmetry(g);
  for (int k = 2; k <= std::clamp(k_max, 2, 6); ++k) label.order_params.push_back(order_parameter(g, k));

  const int k = static_cast<int>(g.size());
  const auto sym = label.symmetry;
  const double e = result.e;
  const double t = result.t;
  if (label.rank == 1) {
    label.region_tag = "ER";
  } else if (sym && *sym == std::pair{2, 0}) {
    label.region_tag = "A(2,0)";
  } else if (sym && sym->second == 2 && e > 0.5 && e < 1.0 && label.rank == sym->first + 2 &&
             scallop_params(e).n == sym->first && t >= min_triangle_density(e)) {
    label.region_tag = "C(" + std::to_string(sym->first) + ",2)";
  } else if (k == 2 && sym && *sym == std::pair{1, 1} && label.rank == 2 && t > er_curve(e)) {
    label.region_tag = "F(1,1)";
  }
  return label;
}

}  // namespace graphon
