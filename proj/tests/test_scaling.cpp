#include <doctest.h>

#include <cmath>
#include <sstream>

#include "graphon/error.hpp"
#include "graphon/scaling.hpp"
#include "oracles.hpp"

using namespace graphon;
using doctest::Approx;

TEST_CASE("boundary names") {
  CHECK(parse_boundary("flat") == BoundaryKind::kFlat);
  CHECK(parse_boundary("scallop") == BoundaryKind::kScallop);
  CHECK(parse_boundary("top") == BoundaryKind::kTop);
  CHECK(std::string(boundary_name(BoundaryKind::kScallop)) == "scallop");
  CHECK_THROWS_AS(parse_boundary("side"), Error);
}

TEST_CASE("flat boundary study") {
  SolverOptions opts;
  opts.k_max = 3;
  const double e = 0.3;
  const ScalingReport rep = flat_boundary_study(e, {1e-4, 1e-3, 3e-4}, opts);
  REQUIRE(rep.samples.size() == 3);
  CHECK(rep.samples[0].delta == 1e-3);
  CHECK(rep.samples[2].delta == 1e-4);
  const double base = 0.5 * oracle::h(2.0 * e);
  for (const auto& s : rep.samples) {
    const double a = oracle::bipodal_diagonal(e, s.delta);
    CHECK(s.aux.at("A") == Approx(a).epsilon(1e-6));
    CHECK(std::abs(s.aux.at("A") - s.delta / (3.0 * e * e)) < 0.02 * s.aux.at("A"));
    CHECK(s.delta_B == Approx(s.result.entropy - base).epsilon(1e-12));
    CHECK(s.delta_B > 0.0);
    CHECK(s.el_residual < 1e-6);
  }
  for (std::size_t i = 1; i < rep.samples.size(); ++i) {
    CHECK(rep.samples[i].beta > rep.samples[i - 1].beta);
    CHECK(rep.samples[i].delta_B < rep.samples[i - 1].delta_B);
  }
  // delta_B ~ t log(1/t): the local slope sits just below one.
  CHECK(rep.fitted_exponent > 0.8);
  CHECK(rep.fitted_exponent < 1.0);

  const std::string csv = scaling_csv(rep);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "delta,beta,alpha,delta_B,block_min,block_max,el_residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("study arguments") {
  CHECK_THROWS_AS(flat_boundary_study(0.3, {1e-3, -1.0}), Error);
  CHECK_THROWS_AS(flat_boundary_study(0.6, {1e-3}), Error);
}
