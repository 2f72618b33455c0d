#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphon/graphon.hpp"
#include "graphon/optimizer.hpp"

namespace graphon {

struct PhaseLabel {
  int rank = 1;
  std::optional<std::pair<int, int>> symmetry;
  /// p_2 .. p_kmax of g^3.
  std::vector<double> order_params;
  /// Advisory only: "ER", "A(2,0)", "C(n,2)", "F(1,1)" or "unclassified".
  std::string region_tag = "unclassified";

  /// p_k, or 0 when k is outside the computed range.
  double order_param(int k) const;
};

/// Elementary symmetric polynomial e_k from power sums t_1..t_k by Newton's
/// recursion k e_k = sum_j (-1)^(j-1) e_(k-j) t_j.
double newton_determinant(std::span<const double> power_sums, int k);

/// p_k(g^3): newton_determinant over the cycle densities at 3, 6, ..., 3k.
/// Requires 2 <= k <= 6.
double order_parameter(const MultipodalGraphon& g, int k);

/// Eigenvalues of D^{1/2} B D^{1/2} above threshold * max(1, |lambda|_max).
int rank(const MultipodalGraphon& g, double threshold = 1e-8);

/// (n, m) when the podes fall into two classes that can each be permuted
/// freely, (k, 0) for a single class. The class with wider podes comes
/// first; equal widths keep the larger class first.
std::optional<std::pair<int, int>> detect_symmetry(const MultipodalGraphon& g,
                                                   double tol = 1e-7);

/// Rank, symmetry, order parameters p_2..p_kmax and a region tag.
PhaseLabel classify(const OptimizationResult& result, int k_max = 4);

}  // namespace graphon
