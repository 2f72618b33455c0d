#include <doctest.h>

#include <cmath>

#include "graphon/boundary.hpp"
#include "graphon/error.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/phase.hpp"
#include "oracles.hpp"

using namespace graphon;
using doctest::Approx;

namespace {

void check_optimal(const OptimizationResult& r) {
  CHECK(r.edge_error < 1e-8);
  CHECK(r.triangle_error < 1e-8);
  CHECK(r.el_residual < 1e-6);
  CHECK(r.worth_spread < 1e-6);
  CHECK(worth_gap(r.graphon, r.multipliers) < 1e-6);
}

bool symmetric_bipodal(const MultipodalGraphon& g) {
  return g.size() == 2 && std::abs(g.width(0) - 0.5) < 1e-4 &&
         std::abs(g.block(0, 0) - g.block(1, 1)) < 1e-6;
}

}  // namespace

TEST_CASE("Erdos-Renyi points give the constant graphon") {
  const OptimizationResult r = maximize_entropy(0.5, 0.125, 2);
  REQUIRE(r.graphon.size() == 1);
  CHECK(r.graphon.block(0, 0) == 0.5);
  CHECK(std::abs(r.entropy - std::log(2.0)) < 1e-9);
  CHECK(r.distinct_optima == 1);
  const OptimizationResult a = maximize_entropy_auto(0.5, 0.125);
  CHECK(a.graphon.size() == 1);
  for (double e : {0.2, 0.45, 0.8}) {
    const OptimizationResult er = maximize_entropy_auto(e, e * e * e);
    REQUIRE(er.graphon.size() == 1);
    CHECK(std::abs(er.entropy - oracle::h(e)) < 1e-9);
  }
}

TEST_CASE("flat region optimum is symmetric bipodal") {
  const double e = 0.3, t = 1e-4;
  const OptimizationResult r = maximize_entropy(e, t, 2);
  REQUIRE(symmetric_bipodal(r.graphon));
  const double a = oracle::bipodal_diagonal(e, t);
  CHECK(std::abs(r.graphon.blocks().diagonal().maxCoeff() - a) < 1e-8);
  CHECK(std::abs(r.graphon.block(0, 1) - (2 * e - a)) < 1e-8);
  CHECK(a == Approx(t / (3 * e * e)).epsilon(0.02));
  check_optimal(r);

  const OptimizationResult auto_r = maximize_entropy_auto(e, t);
  CHECK(auto_r.graphon.size() == 2);
  CHECK(symmetric_bipodal(auto_r.graphon));
  CHECK(std::abs(auto_r.entropy - r.entropy) < 1e-10);
}

TEST_CASE("symmetric bipodal ansatz") {
  const OptimizationResult edge = ansatz_solve(0.3, 0.0, {AnsatzKind::kSymmetricBipodal, 2});
  CHECK(std::abs(edge.graphon.blocks().minCoeff()) < 1e-15);
  CHECK(edge.graphon.blocks().maxCoeff() == Approx(0.6).epsilon(1e-15));
  CHECK(edge.entropy == Approx(0.5 * oracle::h(0.6)).epsilon(1e-14));

  const OptimizationResult r = ansatz_solve(0.3, 1e-4, {AnsatzKind::kSymmetricBipodal, 2});
  CHECK(std::abs(r.graphon.blocks().diagonal().maxCoeff() - oracle::bipodal_diagonal(0.3, 1e-4)) < 1e-12);
  CHECK(std::abs(symmetric_bipodal_diagonal(0.3, 1e-4) - oracle::bipodal_diagonal(0.3, 1e-4)) < 1e-12);
  CHECK(r.el_residual < 1e-8);
  CHECK_THROWS_AS(ansatz_solve(0.6, 0.3, {AnsatzKind::kSymmetricBipodal, 2}), Error);
}

TEST_CASE("first scallop optimum is (1,2)-symmetric tripodal") {
  const double e = 0.6, t = min_triangle_density(e) + 1e-4;
  const OptimizationResult r = maximize_entropy(e, t, 3);
  REQUIRE(r.graphon.size() == 3);
  const auto sym = detect_symmetry(r.graphon);
  REQUIRE(sym.has_value());
  CHECK(*sym == std::pair{1, 2});
  check_optimal(r);

  const OptimizationResult a = ansatz_solve(e, t, {AnsatzKind::kN2Symmetric, 1});
  CHECK(std::abs(a.entropy - r.entropy) < 1e-8);
}

TEST_CASE("(n,2) ansatz near the scallop") {
  const double e = 0.6, t = min_triangle_density(e) + 1e-3;
  const OptimizationResult r = ansatz_solve(e, t, {AnsatzKind::kN2Symmetric, 1});
  REQUIRE(r.graphon.size() == 3);
  const auto& w = r.graphon.widths();
  const double c = *std::max_element(w.begin(), w.end());
  const double c0 = scallop_params(e).c0;
  CHECK(c < c0);
  CHECK(c > c0 - 0.05);
  int pair = 0;
  for (double v : w) pair += std::abs(v - (1 - c) / 2) < 1e-9 ? 1 : 0;
  CHECK(pair == 2);
  check_optimal(r);
  const OptimizationResult free = maximize_entropy_auto(e, t);
  CHECK(free.entropy >= r.entropy - 1e-8);
}

TEST_CASE("second scallop optimum is (2,2)-symmetric 4-podal") {
  const double e = 0.7, t = min_triangle_density(e) + 1e-4;
  const OptimizationResult r = maximize_entropy_auto(e, t);
  REQUIRE(r.graphon.size() == 4);
  const auto sym = detect_symmetry(r.graphon);
  REQUIRE(sym.has_value());
  CHECK(*sym == std::pair{2, 2});
  check_optimal(r);
  CHECK(r.entropy >= shannon_entropy(reference_graphon(Region::kScallop, e)) - 1e-8);
}

TEST_CASE("infeasible points and bad arguments") {
  try {
    maximize_entropy_auto(0.6, 0.05);
    FAIL("expected infeasible");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kInfeasible);
    CHECK(std::string(err.what()).rfind("below minimal triangle density 0.1415", 0) == 0);
  }
  CHECK_THROWS_AS(maximize_entropy(0.5, 0.4, 2), Error);
  CHECK_THROWS_AS(maximize_entropy(0.5, 0.2, 9), Error);
  SolverOptions none;
  none.starts = 0;
  CHECK_THROWS_AS(maximize_entropy(0.5, 0.2, 2, none), Error);
}

TEST_CASE("results do not depend on the thread count") {
  SolverOptions one, three;
  one.k_max = three.k_max = 3;
  three.threads = 3;
  const auto a = maximize_entropy_auto(0.4, 0.03, one);
  const auto b = maximize_entropy_auto(0.4, 0.03, three);
  CHECK(a.graphon == b.graphon);
  CHECK(a.entropy == b.entropy);
  CHECK(a.n_converged == b.n_converged);
}
