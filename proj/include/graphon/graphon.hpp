#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace graphon {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Binary entropy H(u) = -[u ln u + (1-u) ln(1-u)] and its derivatives.
// ---------------------------------------------------------------------------

/// H(u), extended continuously with H(0) = H(1) = 0.
double binary_entropy(double u);

/// H'(u) = ln(1-u) - ln(u). Throws ErrorCode::kPole at u = 0 or u = 1.
double binary_entropy_deriv1(double u);

/// H''(u) = -(1/u + 1/(1-u)). Throws ErrorCode::kPole at u = 0 or u = 1.
double binary_entropy_deriv2(double u);

/// Inverse of H': the unique u in (0,1) with H'(u) = y, i.e. 1/(1+e^y).
double binary_entropy_deriv1_inverse(double y);

/// A k-podal graphon: pode widths c_i and a symmetric k x k matrix of block
/// values. Immutable after construction; all mutators return new values.
class MultipodalGraphon {
 public:
  /// Validates the invariants (widths positive and summing to one within
  /// 1e-12, blocks square, in [0,1], symmetric within 1e-12). The stored
  /// block matrix is the exact symmetrization (B + B^T) / 2.
  MultipodalGraphon(std::vector<double> widths, Matrix blocks);

  static MultipodalGraphon constant(double value);

  std::size_t size() const noexcept { return widths_.size(); }
  double width(std::size_t i) const { return widths_[i]; }
  const std::vector<double>& widths() const noexcept { return widths_; }
  double block(std::size_t i, std::size_t j) const { return blocks_(i, j); }
  const Matrix& blocks() const noexcept { return blocks_; }

  /// Copy with B_ij = B_ji = value.
  MultipodalGraphon with_block(std::size_t i, std::size_t j, double value) const;

  /// Copy with pode order perm[0], perm[1], ... (perm is a permutation).
  MultipodalGraphon permuted(std::span<const std::size_t> perm) const;

  /// Copy where pode i is replaced by two podes of widths fraction * c_i and
  /// (1 - fraction) * c_i carrying identical rows. Every functional is
  /// unchanged by this refinement.
  MultipodalGraphon split(std::size_t i, double fraction = 0.5) const;

  friend bool operator==(const MultipodalGraphon& a, const MultipodalGraphon& b) {
    return a.widths_ == b.widths_ && a.blocks_ == b.blocks_;
  }

 private:
  std::vector<double> widths_;
  Matrix blocks_;
};

/// A small simple graph K used for homomorphism densities.
struct SubgraphSpec {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  static SubgraphSpec edge();
  static SubgraphSpec triangle();
  static SubgraphSpec cycle(int length);

  /// Throws kInvalidArgument unless the graph is simple with endpoints in
  /// range and 1 <= vertex_count <= 8.
  void validate() const;
};

/// Piecewise-constant candidate column over the podes of a reference graphon.
struct ColumnProfile {
  std::vector<double> values;
};

// ---------------------------------------------------------------------------
// Density and entropy functionals.
// ---------------------------------------------------------------------------

/// epsilon(g) = sum_ij c_i c_j B_ij.
double edge_density(const MultipodalGraphon& g);

/// tau(g) = sum_ijk c_i c_j c_k B_ij B_jk B_ki.
double triangle_density(const MultipodalGraphon& g);

/// S(g) = sum_ij c_i c_j H(B_ij).
double shannon_entropy(const MultipodalGraphon& g);

/// G_ij = sum_m c_m B_im B_jm, i.e. B diag(c) B.
Matrix overlap_matrix(const MultipodalGraphon& g);

/// Density of m-cycles, trace((diag(c) B)^m). Requires m >= 3.
double cycle_density(const MultipodalGraphon& g, int m);

/// trace((diag(c) B)^m) for any m >= 1; the power sums behind cycle_density
/// without the realizability restriction.
double operator_trace_power(const MultipodalGraphon& g, int m);

/// Homomorphism density of K by enumeration of all pode assignments.
double hom_density(const MultipodalGraphon& g, const SubgraphSpec& k);

/// Eigenvalues of D^{1/2} B D^{1/2}, sorted by descending magnitude.
std::vector<double> spectrum(const MultipodalGraphon& g);

/// Sorts podes by (c-weighted row sum, width) descending and merges podes
/// whose block rows agree within merge_tol in max norm.
MultipodalGraphon canonicalize(const MultipodalGraphon& g, double merge_tol = 1e-7);

/// Merges podes i and j into one pode, averaging rows with width weights.
/// Preserves the edge density exactly.
MultipodalGraphon merge_podes(const MultipodalGraphon& g, std::size_t i, std::size_t j);

/// Gradients of (S, epsilon, tau) with respect to each symmetric block value
/// B_ij = B_ji (one entry per unordered pair, stored symmetrically) and each
/// pode width c_i treated as a free variable.
struct FunctionalGradients {
  Matrix entropy_blocks;
  Matrix edge_blocks;
  Matrix triangle_blocks;
  Vector entropy_widths;
  Vector edge_widths;
  Vector triangle_widths;
};

/// Throws kSaturated when a block sits at 0 or 1 (entropy gradient pole).
/// With with_entropy = false the entropy parts stay zero and saturated
/// blocks are allowed.
FunctionalGradients functional_gradients(const MultipodalGraphon& g, bool with_entropy = true);

}  // namespace graphon
