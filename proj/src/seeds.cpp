#include "seeds.hpp"

#include <algorithm>
#include <cmath>

#include "graphon/boundary.hpp"

namespace graphon::detail {

MultipodalGraphon random_graphon(int k, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& v : c) {
    v = expo(rng) + 1e-3;
    total += v;
  }
  for (auto& v : c) v /= total;
  Matrix b(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) b(i, j) = b(j, i) = unit(rng);
  }
  return MultipodalGraphon(std::move(c), std::move(b));
}

std::optional<MultipodalGraphon> adapt_pode_count(const MultipodalGraphon& g, int k, Rng& rng,
                                                  double jitter) {
  if (static_cast<int>(g.size()) > k) return std::nullopt;
  std::uniform_real_distribution<double> frac(0.3, 0.7);
  std::uniform_real_distribution<double> wobble(-jitter, jitter);
  MultipodalGraphon out = g;
  while (static_cast<int>(out.size()) < k) {
    const auto& w = out.widths();
    const auto widest = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
    out = out.split(widest, frac(rng));
    if (jitter > 0.0) {
      const std::size_t fresh = out.size() - 1;
      for (std::size_t j = 0; j < out.size(); ++j) {
        out = out.with_block(fresh, j, std::clamp(out.block(fresh, j) + wobble(rng), 0.0, 1.0));
      }
    }
  }
  return out;
}

MultipodalGraphon clamp_blocks(const MultipodalGraphon& g, double floor) {
  Matrix b = g.blocks().cwiseMax(floor).cwiseMin(1.0 - floor);
  return MultipodalGraphon(g.widths(), std::move(b));
}

std::optional<MultipodalGraphon> mix_toward_constant(const MultipodalGraphon& ref, double e,
                                                     double t) {
  const auto at = [&](double s) {
    Matrix b = (1.0 - s) * ref.blocks() + s * Matrix::Constant(ref.blocks().rows(),
                                                              ref.blocks().cols(), e);
    return MultipodalGraphon(ref.widths(), b.cwiseMax(0.0).cwiseMin(1.0));
  };
  const double t_ref = triangle_density(ref);
  const double t_er = e * e * e;
  if ((t - t_ref) * (t - t_er) > 0.0) return std::nullopt;
  double lo = 0.0, hi = 1.0;
  const double sign = t_er > t_ref ? 1.0 : -1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sign * (triangle_density(at(mid)) - t) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return at(0.5 * (lo + hi));
}

std::optional<MultipodalGraphon> scallop_family_point(int n, double e, double t) {
  if (e <= 0.5 || e >= 1.0) return std::nullopt;
  const double disc = 1.0 - (n + 2) * e / (n + 1);
  if (disc < 0.0) return std::nullopt;
  ScallopSpec spec;
  spec.c0 = (1.0 + std::sqrt(disc)) / (n + 2);
  spec.t0 = scallop_family_triangle_density(n, e, spec.c0);
  const auto valid = [&](double c) {
    const double p = scallop_family_block(n, e, c);
    return c > 0.0 && n * c < 1.0 && p >= 0.0 && p <= 1.0;
  };
  const auto tri = [&](double c) { return scallop_family_triangle_density(n, e, c); };
  if (t < spec.t0) return std::nullopt;
  // t(c) decreases on the valid range below c0; walk down until t is bracketed.
  double hi = spec.c0, lo = spec.c0;
  const double step = spec.c0 / 400.0;
  while (lo - step > 0.0 && valid(lo - step) && tri(lo) < t) lo -= step;
  if (tri(lo) < t) return std::nullopt;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tri(mid) > t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return scallop_family_graphon(n, e, 0.5 * (lo + hi));
}

std::vector<MultipodalGraphon> structured_seeds(double e, double t) {
  std::vector<MultipodalGraphon> out;
  out.push_back(MultipodalGraphon::constant(e));

  const double a = e + std::cbrt(t - e * e * e);
  const double d = 2.0 * e - a;
  if (a >= 0.0 && a <= 1.0 && d >= 0.0 && d <= 1.0) {
    Matrix b(2, 2);
    b << a, d, d, a;
    out.emplace_back(std::vector<double>{0.5, 0.5}, b);
  }
  if (e > 0.5 && e < 1.0) {
    if (auto g = scallop_family_point(scallop_params(e).n, e, t)) out.push_back(*g);
    if (auto g = mix_toward_constant(reference_graphon(Region::kScallop, e), e, t)) {
      out.push_back(*g);
    }
  }
  if (e > 0.0 && e < 1.0) {
    if (auto g = mix_toward_constant(reference_graphon(Region::kTop, e), e, t)) out.push_back(*g);
  }
  return out;
}

}  // namespace graphon::detail
