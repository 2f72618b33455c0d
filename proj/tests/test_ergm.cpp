#include <doctest.h>

#include <cmath>

#include "graphon/boundary.hpp"
#include "graphon/ergm.hpp"
#include "graphon/optimizer.hpp"
#include "oracles.hpp"

using namespace graphon;
using doctest::Approx;

TEST_CASE("free energy") {
  const Multipliers m{0.7, -1.3, false};
  CHECK(free_energy(MultipodalGraphon::constant(0.0), m) == 0.0);
  CHECK(free_energy(MultipodalGraphon::constant(1.0), m) == Approx(-0.7 + 1.3 / 3.0).epsilon(1e-15));
  CHECK(free_energy(MultipodalGraphon::constant(0.5), Multipliers{}) ==
        Approx(std::log(2.0)).epsilon(1e-15));

  std::mt19937_64 rng(21);
  for (int i = 0; i < 10; ++i) {
    const auto g = oracle::random_graphon(3, rng);
    const double want = oracle::entropy_sum(g) - m.alpha * oracle::edge_sum(g) -
                        m.beta / 3.0 * oracle::triangle_sum(g);
    CHECK(free_energy(g, m) == Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("free energy maximization") {
  SolverOptions opts;
  opts.k_max = 3;
  opts.starts = 8;
  SUBCASE("beta = 0 gives the logistic constant") {
    for (double alpha : {-2.0, 0.0, 1.5}) {
      const OptimizationResult r = maximize_free_energy(Multipliers{alpha, 0.0, false}, opts);
      const double p = 1.0 / (1.0 + std::exp(alpha));
      for (std::size_t i = 0; i < r.graphon.size(); ++i)
        for (std::size_t j = 0; j < r.graphon.size(); ++j)
          CHECK(std::abs(r.graphon.block(i, j) - p) < 1e-8);
      CHECK(r.entropy == Approx(oracle::h(p)).epsilon(1e-10));
    }
  }
  SUBCASE("never below the constrained optimum") {
    for (auto [e, t] : {std::pair{0.3, 0.02}, std::pair{0.6, 0.2}, std::pair{0.5, 0.3}}) {
      const OptimizationResult c = maximize_entropy_auto(e, t);
      const OptimizationResult f = maximize_free_energy(c.multipliers, opts, c.graphon);
      CHECK(free_energy(f.graphon, c.multipliers) >=
            free_energy(c.graphon, c.multipliers) - kVisibilityTolerance);
    }
  }
}

TEST_CASE("invisibility") {
  SUBCASE("Erdos-Renyi points are visible") {
    for (double p : {0.2, 0.5, 0.8}) {
      const InvisibilityReport rep = invisibility_test(p, p * p * p);
      CHECK(rep.visible);
      CHECK_FALSE(rep.marginal);
      CHECK(std::abs(rep.margin) < 1e-9);
    }
  }
  SUBCASE("near the scallop") {
    const double t = min_triangle_density(0.6) + 1e-4;
    const InvisibilityReport rep = invisibility_test(0.6, t);
    CHECK_FALSE(rep.visible);
    CHECK(rep.margin > 1e-3);
    CHECK(rep.competitor_free_energy ==
          Approx(free_energy(rep.best_competitor, rep.multipliers)).epsilon(1e-12));
  }
  SUBCASE("above the Erdos-Renyi curve") {
    const InvisibilityReport rep = invisibility_test(0.5, 0.34);
    CHECK_FALSE(rep.visible);
    CHECK(rep.margin > 1e-3);
    CHECK(rep.constrained_free_energy ==
          Approx(free_energy(rep.constrained, rep.multipliers)).epsilon(1e-12));
  }
}
