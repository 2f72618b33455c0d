#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "graphon/error.hpp"
#include "graphon/graphon.hpp"
#include "oracles.hpp"

using namespace graphon;
using doctest::Approx;

namespace {

MultipodalGraphon bipartite(double v) {
  Matrix b(2, 2);
  b << 0.0, v, v, 0.0;
  return MultipodalGraphon({0.5, 0.5}, b);
}

// (S, epsilon, tau) as plain sums over explicit widths, so widths need not
// sum to one.
struct Raw {
  double s, e, t;
};

Raw raw_functionals(const std::vector<double>& c, const Matrix& b) {
  Raw r{0.0, 0.0, 0.0};
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double w = c[i] * c[j];
      r.s += w * oracle::h(b(i, j));
      r.e += w * b(i, j);
      for (std::size_t l = 0; l < k; ++l) r.t += w * c[l] * b(i, j) * b(j, l) * b(l, i);
    }
  }
  return r;
}

bool close_rel(double analytic, double fd, double rel) {
  return std::abs(analytic - fd) <= rel * std::max(std::abs(fd), 1e-3);
}

}  // namespace

TEST_CASE("binary entropy and derivatives") {
  CHECK(binary_entropy(0.5) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy_deriv1(0.5) == Approx(0.0));
  CHECK(binary_entropy_deriv2(0.5) == Approx(-4.0));
  CHECK_THROWS_AS(binary_entropy_deriv1(0.0), Error);
  CHECK_THROWS_AS(binary_entropy_deriv2(1.0), Error);
  for (double y : {-15.0, -2.0, 0.0, 0.7, 15.0}) {
    CHECK(binary_entropy_deriv1(binary_entropy_deriv1_inverse(y)) == Approx(y).epsilon(1e-9));
  }
}

TEST_CASE("graphon invariants are enforced") {
  Matrix b = Matrix::Constant(2, 2, 0.5);
  CHECK_THROWS_AS(MultipodalGraphon({0.5, 0.6}, b), Error);
  CHECK_THROWS_AS(MultipodalGraphon({1.0, 0.0}, b), Error);
  Matrix bad = b;
  bad(0, 1) = 1.5;
  bad(1, 0) = 1.5;
  CHECK_THROWS_AS(MultipodalGraphon({0.5, 0.5}, bad), Error);
  Matrix asym = b;
  asym(0, 1) = 0.6;
  CHECK_THROWS_AS(MultipodalGraphon({0.5, 0.5}, asym), Error);
}

TEST_CASE("densities of reference graphons") {
  const auto c = MultipodalGraphon::constant(0.5);
  CHECK(edge_density(c) == Approx(0.5));
  CHECK(triangle_density(c) == Approx(0.125));
  CHECK(shannon_entropy(c) == Approx(std::log(2.0)));
  const auto bp = bipartite(0.6);
  CHECK(edge_density(bp) == Approx(0.3).epsilon(1e-15));
  CHECK(triangle_density(bp) == 0.0);
  CHECK(shannon_entropy(bp) == Approx(0.5 * oracle::h(0.6)).epsilon(1e-15));
  CHECK(shannon_entropy(bp) == Approx(0.3365059).epsilon(1e-7));
  Matrix zero_one(2, 2);
  zero_one << 1.0, 0.0, 0.0, 1.0;
  CHECK(shannon_entropy(MultipodalGraphon({0.3, 0.7}, zero_one)) == 0.0);
}

TEST_CASE("overlap matrix") {
  const Matrix g = overlap_matrix(bipartite(0.6));
  CHECK(g(0, 0) == Approx(0.18));
  CHECK(g(1, 1) == Approx(0.18));
  CHECK(g(0, 1) == 0.0);
  CHECK(overlap_matrix(MultipodalGraphon::constant(0.3))(0, 0) == Approx(0.09));
}

TEST_CASE("cycle densities and spectrum") {
  CHECK(cycle_density(MultipodalGraphon::constant(0.5), 4) == Approx(0.0625));
  CHECK(cycle_density(bipartite(0.6), 4) == Approx(0.0162));
  CHECK(cycle_density(bipartite(0.6), 3) == 0.0);
  CHECK_THROWS_AS(cycle_density(bipartite(0.6), 2), Error);
  const auto s = spectrum(bipartite(0.8));
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s[0]) == Approx(0.4));
  CHECK(s[0] + s[1] == Approx(0.0).scale(1.0));
  const auto cs = spectrum(MultipodalGraphon::constant(0.7));
  CHECK(cs[0] == Approx(0.7));
  Matrix z = Matrix::Zero(3, 3);
  for (double v : spectrum(MultipodalGraphon({0.2, 0.3, 0.5}, z))) CHECK(v == 0.0);

  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const auto g = oracle::random_graphon(4, rng);
    const auto ev = oracle::eigenvalues(g);
    for (int m = 3; m <= 12; ++m) {
      double sum = 0.0;
      for (double v : ev) sum += std::pow(v, m);
      CHECK(cycle_density(g, m) == Approx(sum).epsilon(1e-10).scale(1e-3));
    }
  }
}

TEST_CASE("hom_density matches the specialised functionals") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const auto g = oracle::random_graphon(3, rng);
    CHECK(std::abs(hom_density(g, SubgraphSpec::edge()) - edge_density(g)) < 1e-12);
    CHECK(std::abs(hom_density(g, SubgraphSpec::triangle()) - triangle_density(g)) < 1e-12);
    CHECK(std::abs(hom_density(g, SubgraphSpec::cycle(5)) - cycle_density(g, 5)) < 1e-12);
    CHECK(std::abs(triangle_density(g) - oracle::triangle_sum(g)) < 1e-14);
    CHECK(std::abs(edge_density(g) - oracle::edge_sum(g)) < 1e-14);
    CHECK(std::abs(shannon_entropy(g) - oracle::entropy_sum(g)) < 1e-14);
  }
  CHECK(hom_density(MultipodalGraphon::constant(0.5), SubgraphSpec::cycle(4)) == Approx(0.0625));
  SubgraphSpec loop{2, {{0, 0}}};
  CHECK_THROWS_AS(loop.validate(), Error);
  SubgraphSpec dup{3, {{0, 1}, {1, 0}}};
  CHECK_THROWS_AS(dup.validate(), Error);
}

TEST_CASE("canonical form") {
  std::mt19937_64 rng(3);
  const auto g = canonicalize(oracle::random_graphon(4, rng));
  CHECK(canonicalize(g) == g);
  std::vector<std::size_t> perm{2, 0, 3, 1};
  CHECK(canonicalize(g.permuted(perm)) == g);

  Matrix b(3, 3);
  b << 0.2, 0.2, 0.7, 0.2, 0.2, 0.7, 0.7, 0.7, 0.1;
  const auto merged = canonicalize(MultipodalGraphon({0.25, 0.25, 0.5}, b));
  REQUIRE(merged.size() == 2);
  CHECK(std::find(merged.widths().begin(), merged.widths().end(), 0.5) != merged.widths().end());

  const auto m = merge_podes(g, 0, 2);
  CHECK(m.size() == 3);
  CHECK(edge_density(m) == Approx(edge_density(g)).epsilon(1e-14));
}

TEST_CASE("functionals are invariant under permutation and equal splits") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 2 + rep % 4;
    const auto g = oracle::random_graphon(k, rng);
    std::vector<std::size_t> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto split = g.split(static_cast<std::size_t>(rep % k), 0.5);
    for (const auto& h : {g.permuted(perm), split}) {
      CHECK(std::abs(edge_density(h) - edge_density(g)) < 1e-12);
      CHECK(std::abs(triangle_density(h) - triangle_density(g)) < 1e-12);
      CHECK(std::abs(shannon_entropy(h) - shannon_entropy(g)) < 1e-12);
      for (int m = 3; m <= 6; ++m) CHECK(std::abs(cycle_density(h, m) - cycle_density(g, m)) < 1e-12);
      CHECK(std::abs(hom_density(h, SubgraphSpec::cycle(4)) - hom_density(g, SubgraphSpec::cycle(4))) < 1e-12);
    }
    auto a = spectrum(g);
    auto b = spectrum(g.permuted(perm));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
  }
}

TEST_CASE("raising an off-diagonal block raises the densities") {
  std::mt19937_64 rng(23);
  const auto g = oracle::random_graphon(3, rng);
  const auto h = g.with_block(0, 2, std::min(1.0, g.block(0, 2) + 0.01));
  CHECK(edge_density(h) > edge_density(g));
  CHECK(triangle_density(h) >= triangle_density(g));
}

TEST_CASE("analytic gradients match central differences on 20 random graphons") {
  std::mt19937_64 rng(2024);
  constexpr double kStep = 1e-6;
  constexpr double kRel = 1e-6;
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 2 + rep % 4;
    const auto g = oracle::random_graphon(k, rng);
    const auto grad = functional_gradients(g);
    const std::vector<double> c = g.widths();
    for (int i = 0; i < k; ++i) {
      for (int j = i; j < k; ++j) {
        Matrix up = g.blocks(), dn = g.blocks();
        up(i, j) += kStep;
        dn(i, j) -= kStep;
        if (i != j) {
          up(j, i) += kStep;
          dn(j, i) -= kStep;
        }
        const Raw a = raw_functionals(c, up), b = raw_functionals(c, dn);
        CHECK(close_rel(grad.entropy_blocks(i, j), (a.s - b.s) / (2 * kStep), kRel));
        CHECK(close_rel(grad.edge_blocks(i, j), (a.e - b.e) / (2 * kStep), kRel));
        CHECK(close_rel(grad.triangle_blocks(i, j), (a.t - b.t) / (2 * kStep), kRel));
      }
      auto cu = c, cd = c;
      cu[static_cast<std::size_t>(i)] += kStep;
      cd[static_cast<std::size_t>(i)] -= kStep;
      const Raw a = raw_functionals(cu, g.blocks()), b = raw_functionals(cd, g.blocks());
      CHECK(close_rel(grad.entropy_widths(i), (a.s - b.s) / (2 * kStep), kRel));
      CHECK(close_rel(grad.edge_widths(i), (a.e - b.e) / (2 * kStep), kRel));
      CHECK(close_rel(grad.triangle_widths(i), (a.t - b.t) / (2 * kStep), kRel));
    }
  }
  const auto bp = bipartite(0.6);
  Matrix interior = bp.blocks();
  interior(0, 0) = interior(1, 1) = 0.2;
  const auto grad = functional_gradients(MultipodalGraphon({0.5, 0.5}, interior));
  CHECK(grad.edge_blocks(0, 1) == Approx(0.5));
  CHECK_THROWS_AS(functional_gradients(bp), Error);
  const auto dens = functional_gradients(bp, false);
  CHECK(dens.triangle_blocks(0, 1) == 0.0);
  CHECK(dens.edge_blocks(0, 1) == Approx(0.5));
}
