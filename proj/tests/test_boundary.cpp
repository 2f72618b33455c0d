#include <doctest.h>

#include <cmath>

#include "graphon/boundary.hpp"
#include "graphon/error.hpp"
#include "oracles.hpp"

using namespace graphon;
using doctest::Approx;

namespace {

double cubic(int n, double e, double c) {
  return n * (n + 1) * (n + 2) * c * c * c - 3 * n * (n + 1) * c * c + 3 * n * e * c;
}

}  // namespace

TEST_CASE("scallop parameters at e = 0.6") {
  const ScallopSpec s = scallop_params(0.6);
  CHECK(s.n == 1);
  CHECK(std::abs(s.c0 - 0.4387426) < 1e-6);
  const double c_min = oracle::golden_min([](double c) { return cubic(1, 0.6, c); }, 1.0 / 3, 0.5);
  CHECK(std::abs(s.c0 - c_min) < 1e-7);
  CHECK(std::abs(s.t0 - cubic(1, 0.6, c_min)) < 1e-10);
  CHECK(std::abs(s.t0 - oracle::triangle_sum(reference_graphon(Region::kScallop, 0.6))) < 1e-12);
  // p keeps the edge density: 1 - c^2 - (1-c)^2 + (1-c)^2 p / 2 = e.
  const double q = 1.0 - s.c0;
  CHECK(std::abs(1.0 - s.c0 * s.c0 - q * q + q * q * s.p / 2.0 - 0.6) < 1e-12);
  CHECK(s.p == Approx(0.6825496).epsilon(1e-6));
  CHECK_FALSE(s.at_cusp);
}

TEST_CASE("scallop parameters at cusps and index switches") {
  const ScallopSpec half = scallop_params(0.5);
  CHECK(half.n == 1);
  CHECK(half.c0 == Approx(0.5));
  CHECK(half.t0 == 0.0);
  CHECK(half.at_cusp);
  CHECK(scallop_params(0.7).n == 2);
  CHECK(scallop_params(2.0 / 3.0).n == 2);
  CHECK(scallop_params(std::nextafter(2.0 / 3.0, 0.0)).n == 1);
  CHECK(scallop_params(0.75).n == 3);
  CHECK(scallop_params(std::nextafter(0.75, 0.0)).n == 2);
  CHECK_THROWS_AS(scallop_params(0.4), Error);
  CHECK_THROWS_AS(scallop_params(1.0), Error);
}

TEST_CASE("the scallop cubic is minimised at c0 on every arc") {
  for (double e : {0.55, 0.6, 0.65, 0.7, 0.74, 0.78, 0.85, 0.89}) {
    const ScallopSpec s = scallop_params(e);
    const int n = s.n;
    CAPTURE(e);
    const double lo = 1.0 / (n + 2), hi = 1.0 / (n + 1);
    CHECK(s.c0 > lo);
    CHECK(s.c0 < hi);
    const double h = 1e-5;
    const double c = s.c0;
    const double slope = 3.0 * n * (n + 1) * (n + 2) * c * c - 6.0 * n * (n + 1) * c + 3.0 * n * e;
    CHECK(std::abs(slope) < 1e-10);
    CHECK(std::abs(c - oracle::golden_min([&](double x) { return cubic(n, e, x); }, lo, hi)) < 1e-7);
    const double curv = 6.0 * n * (n + 1) * (n + 2) * s.c0 - 6.0 * n * (n + 1);
    CHECK(curv > 0.0);
    CHECK(s.p >= 0.0);
    CHECK(s.p <= 1.0);
    CHECK(s.t0 >= 0.0);
    CHECK(s.t0 < e * e * e);
    CHECK(std::abs(scallop_family_triangle_density(n, e, s.c0) - s.t0) < 1e-15);
    // The family entropy decreases in c at c0.
    const double fd = (scallop_family_entropy(n, e, s.c0 + h) - scallop_family_entropy(n, e, s.c0 - h)) / (2 * h);
    CHECK(fd < 0.0);
    CHECK(scallop_family_entropy_slope(n, e, s.c0) == Approx(fd).epsilon(1e-6));
    const auto g = scallop_family_graphon(n, e, s.c0);
    CHECK(std::abs(oracle::edge_sum(g) - e) < 1e-12);
  }
}

TEST_CASE("boundary curves") {
  CHECK(min_triangle_density(0.3) == 0.0);
  CHECK(min_triangle_density(0.5) == 0.0);
  CHECK(min_triangle_density(0.6) == Approx(0.1415010).epsilon(1e-6));
  CHECK(max_triangle_density(0.5) == Approx(0.3535534).epsilon(1e-7));
  CHECK(er_curve(0.5) == 0.125);
  CHECK_FALSE(contains(0.6, 0.10));
  CHECK(contains(0.6, 0.2));
  CHECK(contains(0.3, 0.0));
  CHECK_FALSE(contains(0.5, 0.36));
  for (double cusp : {2.0 / 3.0, 0.75, 0.8}) {
    const double l = min_triangle_density(cusp - 1e-12), r = min_triangle_density(cusp + 1e-12);
    CHECK(std::abs(l - r) < 1e-9);
  }
}

TEST_CASE("reference graphons reproduce their boundary points") {
  const auto flat = reference_graphon(Region::kBottomFlat, 0.3);
  CHECK(std::abs(edge_density(flat) - 0.3) < 1e-10);
  CHECK(triangle_density(flat) == 0.0);
  CHECK(shannon_entropy(flat) == Approx(0.5 * oracle::h(0.6)));
  const auto top = reference_graphon(Region::kTop, 0.49);
  CHECK(std::abs(edge_density(top) - 0.49) < 1e-10);
  CHECK(std::abs(triangle_density(top) - std::pow(0.49, 1.5)) < 1e-10);
  CHECK(shannon_entropy(top) == 0.0);
  CHECK(top.width(0) == Approx(0.7));
  for (double e : {0.6, 0.7, 0.8}) {
    const auto sc = reference_graphon(Region::kScallop, e);
    CHECK(std::abs(edge_density(sc) - e) < 1e-12);
    CHECK(std::abs(triangle_density(sc) - min_triangle_density(e)) < 1e-10);
  }
  const auto er = reference_graphon(Region::kErdosRenyi, 0.4);
  CHECK(std::abs(triangle_density(er) - er_curve(0.4)) < 1e-12);
}
