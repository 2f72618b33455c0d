#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "graphon/boundary.hpp"
#include "graphon/error.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/phase.hpp"
#include "oracles.hpp"

using namespace graphon;
using doctest::Approx;

namespace {

MultipodalGraphon bipartite(double p) {
  Matrix b(2, 2);
  b << 0.0, p, p, 0.0;
  return MultipodalGraphon({0.5, 0.5}, b);
}

// Rank-r graphon on k podes: B = U U^T with U >= 0, scaled into [0, 1].
MultipodalGraphon low_rank(int k, int r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd f(k, r);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < r; ++j) f(i, j) = u(rng);
  Eigen::MatrixXd b = f * f.transpose();
  b /= b.maxCoeff();
  std::uniform_real_distribution<double> w(0.1, 1.0);
  std::vector<double> c(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& v : c) total += (v = w(rng));
  for (auto& v : c) v /= total;
  return MultipodalGraphon(std::move(c), std::move(b));
}

std::vector<double> cubes(const MultipodalGraphon& g) {
  std::vector<double> out;
  for (double l : oracle::eigenvalues(g)) out.push_back(l * l * l);
  return out;
}

}  // namespace

TEST_CASE("Newton determinant") {
  const std::array<double, 2> a{5.0, 13.0};
  CHECK(newton_determinant(a, 2) == Approx(6.0).epsilon(1e-14));
  const std::array<double, 3> z{0.0, 0.0, 0.0};
  CHECK(newton_determinant(z, 3) == 0.0);
  const std::array<double, 4> ones{4.0, 4.0, 4.0, 4.0};
  CHECK(newton_determinant(ones, 4) == Approx(1.0).epsilon(1e-14));
  CHECK(newton_determinant(ones, 3) == Approx(4.0).epsilon(1e-14));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> xs(5);
    for (auto& x : xs) x = u(rng);
    std::vector<double> sums(5, 0.0);
    for (int j = 0; j < 5; ++j)
      for (double x : xs) sums[static_cast<std::size_t>(j)] += std::pow(x, j + 1);
    for (int k = 1; k <= 5; ++k) {
      const double want = oracle::elementary(xs, k);
      CHECK(newton_determinant(sums, k) == Approx(want).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("order parameters") {
  CHECK(std::abs(order_parameter(MultipodalGraphon::constant(0.4), 2)) < 1e-15);
  CHECK(order_parameter(bipartite(0.8), 2) == Approx(-0.004096).epsilon(1e-12));
  CHECK(std::abs(order_parameter(bipartite(0.8), 3)) < 1e-15);

  SUBCASE("match the spectral oracle") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = oracle::random_graphon(2 + trial % 4, rng);
      const auto c = cubes(g);
      for (int k = 2; k <= 6; ++k) {
        const double want = oracle::elementary(c, k);
        const double got = order_parameter(g, k);
        CHECK(std::abs(got - want) <= 1e-9 * std::max(std::abs(want), 1e-3));
      }
    }
  }
  SUBCASE("vanish above the rank") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
      const int k = 3 + trial % 4;
      const int r = 1 + trial % (k - 1);
      const auto g = low_rank(k, r, rng);
      CHECK(rank(g) == r);
      for (int m = r + 1; m <= 6; ++m) CHECK(std::abs(order_parameter(g, m)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(order_parameter(bipartite(0.5), 1), Error);
  CHECK_THROWS_AS(order_parameter(bipartite(0.5), 7), Error);
}

TEST_CASE("rank") {
  CHECK(rank(MultipodalGraphon::constant(0.3)) == 1);
  CHECK(rank(reference_graphon(Region::kBottomFlat, 0.3)) == 2);
  CHECK(rank(reference_graphon(Region::kScallop, 0.7)) == 4);
  CHECK(rank(MultipodalGraphon::constant(0.3).split(0, 0.4)) == 1);
}

TEST_CASE("symmetry detection") {
  CHECK(detect_symmetry(MultipodalGraphon::constant(0.3)) == std::pair{1, 0});
  CHECK(detect_symmetry(reference_graphon(Region::kBottomFlat, 0.3)) == std::pair{2, 0});
  const auto s6 = reference_graphon(Region::kScallop, 0.6);
  CHECK(detect_symmetry(s6) == std::pair{1, 2});
  const auto s7 = reference_graphon(Region::kScallop, 0.7);
  CHECK(detect_symmetry(s7) == std::pair{2, 2});

  std::mt19937_64 rng(3);
  CHECK_FALSE(detect_symmetry(oracle::random_graphon(4, rng)).has_value());

  std::vector<std::size_t> perm(s7.size());
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    CHECK(detect_symmetry(s7.permuted(perm)) == std::pair{2, 2});
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("classification") {
  SUBCASE("Erdos-Renyi") {
    const auto label = classify(maximize_entropy_auto(0.5, 0.125));
    CHECK(label.rank == 1);
    CHECK(label.region_tag == "ER");
  }
  SUBCASE("flat boundary") {
    const auto label = classify(maximize_entropy_auto(0.3, 1e-4));
    CHECK(label.rank == 2);
    CHECK(label.symmetry == std::pair{2, 0});
    CHECK(label.region_tag == "A(2,0)");
  }
  SUBCASE("scallop") {
    const double t = min_triangle_density(0.6) + 1e-4;
    const auto label = classify(maximize_entropy_auto(0.6, t));
    CHECK(label.rank == 3);
    CHECK(label.symmetry == std::pair{1, 2});
    CHECK(label.region_tag == "C(1,2)");
    CHECK(label.order_param(2) < 0.0);
    CHECK(std::abs(label.order_param(4)) < 1e-12);
  }
  SUBCASE("above the ER curve") {
    const auto label = classify(maximize_entropy_auto(0.49, 0.34));
    CHECK(label.rank == 2);
    CHECK(label.symmetry == std::pair{1, 1});
    CHECK(label.region_tag == "F(1,1)");
  }
}

TEST_CASE("order parameters keep their sign inside the flat phase") {
  SolverOptions opts;
  opts.k_max = 3;
  for (double t : {1e-4, 1e-3, 3e-3, 1e-2}) {
    const auto label = classify(maximize_entropy_auto(0.3, t, opts));
    CHECK(label.region_tag == "A(2,0)");
    CHECK(label.order_param(2) < -1e-6);
  }
}
