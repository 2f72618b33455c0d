#pragma once

#include <vector>

#include "graphon/graphon.hpp"

namespace graphon::detail {

/// Logit bound for block parameters: blocks stay within [e^-40, 1 - e^-40].
inline constexpr double kLogitClamp = 40.0;
inline constexpr double kWidthParamClamp = 30.0;

/// Values and parameter gradients of (S, epsilon, tau).
struct FamilyEval {
  double entropy = 0.0;
  double edge = 0.0;
  double triangle = 0.0;
  Vector entropy_grad;
  Vector edge_grad;
  Vector triangle_grad;
  /// Partial derivatives with respect to each pode width c_i.
  Vector entropy_width_partials;
  Vector edge_width_partials;
  Vector triangle_width_partials;
  /// Area-weighted mean of G over the blocks tied to each block parameter
  /// (0 for width parameters).
  Vector param_overlap;
};

/// A smooth parametrization of (a subset of) k-podal graphons. Each block
/// logit is one parameter; pode widths are a smooth map of the remaining
/// parameters (softmax for the free family, a scaled sigmoid for the
/// (n,2)-symmetric family).
class Family {
 public:
  /// All k-podal graphons: k(k+1)/2 block logits then k-1 softmax
  /// parameters (the last softmax input is pinned at 0).
  static Family free_podes(int k);

  /// (n,2)-symmetric graphons: n podes of width c, two of width (1-nc)/2.
  /// Parameters: width logit, then logits of the diagonal clique block,
  /// the clique-clique block (n >= 2 only), clique-pair, pair diagonal,
  /// pair-pair blocks.
  static Family n2_symmetric(int n);

  int pode_count() const noexcept { return k_; }
  int param_count() const noexcept { return n_params_; }
  bool is_block_param(int p) const { return p < n_block_params_ + block_offset_ && p >= block_offset_; }

  /// Parameters of the family member closest to g (g must have pode_count
  /// podes; symmetric families average over the orbit).
  Vector params_from(const MultipodalGraphon& g) const;

  MultipodalGraphon graphon(const Vector& z) const;
  FamilyEval evaluate(const Vector& z) const;

  /// Stationarity contrasts for the width parameters, given per-pode
  /// partials v of a Lagrangian: one entry per width parameter (in
  /// parameter order), zero exactly when the width gradient vanishes.
  Vector width_contrasts(const Vector& v) const;
  std::vector<int> width_params() const;

  /// Clamp parameters into the box the solver works in.
  void project(Vector& z) const;
  bool at_bound(const Vector& z, int p) const;

 private:
  enum class WidthMap { kSoftmax, kN2 };

  Family(int k, WidthMap map) : k_(k), map_(map) {}

  void widths(const Vector& z, std::vector<double>& c, Matrix& dc) const;
  double logit_of(const Vector& z, int i, int j) const { return z(block_param_[idx(i, j)]); }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * k_ + j); }

  int k_;
  WidthMap map_;
  int n_params_ = 0;
  int n_block_params_ = 0;
  int block_offset_ = 0;
  int n_ = 0;
  std::vector<int> block_param_;
};

}  // namespace graphon::detail
