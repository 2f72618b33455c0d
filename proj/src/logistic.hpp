#pragma once

#include <cmath>

namespace graphon::detail {

/// 1 / (1 + e^{-x})
inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double z = std::exp(x);
  return z / (1.0 + z);
}

/// ln(1 + e^x)
inline double softplus(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

inline double logit(double u) { return std::log(u) - std::log1p(-u); }

/// H(sigmoid(x)) without forming 1 - u.
inline double entropy_of_logit(double x) {
  return sigmoid(x) * softplus(-x) + sigmoid(-x) * softplus(x);
}

/// u (1 - u) for u = sigmoid(x).
inline double logistic_variance(double x) { return sigmoid(x) * sigmoid(-x); }

}  // namespace graphon::detail
