#include "graphon/ergm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphon/boundary.hpp"
#include "graphon/error.hpp"
#include "graphon/random.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "seeds.hpp"

namespace graphon {

namespace {

using detail::Family;
using detail::LocalSolution;
using detail::Rng;

constexpr double kSeedFloor = 1e-8;
constexpr double kRandomFloor = 1e-4;
constexpr double kStationary = 1e-6;
constexpr std::uint64_t kStream = 2000;

// Complete (m+1)-partite graphon with equal parts: the cusp at e = m/(m+1).
MultipodalGraphon cusp_graphon(int m) {
  const int k = m + 1;
  Matrix b = Matrix::Ones(k, k) - Matrix::Identity(k, k);
  return MultipodalGraphon(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k), b);
}

std::vector<MultipodalGraphon> competitor_seeds(const Multipliers& mult,
                                                const std::optional<MultipodalGraphon>& hint) {
  std::vector<MultipodalGraphon> out{MultipodalGraphon::constant(0.0),
                                     MultipodalGraphon::constant(1.0),
                                     MultipodalGraphon::constant(
                                         binary_entropy_deriv1_inverse(mult.alpha)),
                                     cusp_graphon(1)};
  if (hint) {
    const double e = edge_density(*hint);
    if (e > 0.5 && e < 1.0) {
      const int n = scallop_params(e).n;
      if (n > 1) out.push_back(cusp_graphon(n));
      out.push_back(cusp_graphon(n + 1));
    }
    out.push_back(*hint);
  }
  return out;
}

}  // namespace

double free_energy(const MultipodalGraphon& g, const Multipliers& mult) {
  return shannon_entropy(g) - mult.alpha * edge_density(g) -
         (mult.beta / 3.0) * triangle_density(g);
}

OptimizationResult maximize_free_energy(const Multipliers& mult, const SolverOptions& opts,
                                        const std::optional<MultipodalGraphon>& hint) {
  if (!std::isfinite(mult.alpha) || !std::isfinite(mult.beta)) {
    fail(ErrorCode::kInvalidArgument, "multipliers must be finite");
  }
  if (opts.starts < 1) fail(ErrorCode::kInvalidArgument, "need at least one start");
  const detail::SolveControls ctl;
  const auto seeds = competitor_seeds(mult, hint);

  struct Outcome {
    bool stationary = false;
    MultipodalGraphon graphon = MultipodalGraphon::constant(0.0);
    double value = -std::numeric_limits<double>::infinity();
  };
  const int k_max = std::clamp(opts.k_max, 1, 8);
  std::vector<Outcome> outcomes(static_cast<std::size_t>(k_max * opts.starts));
  detail::parallel_for(k_max * opts.starts, opts.threads, [&](int task) {
    const int k = task / opts.starts + 1;
    const int i = task % opts.starts;
    Rng rng(derive_seed(opts.seed, kStream + static_cast<std::uint64_t>(k),
                        static_cast<std::uint64_t>(i)));
    std::optional<MultipodalGraphon> start;
    if (i < static_cast<int>(seeds.size())) {
      start = detail::adapt_pode_count(seeds[static_cast<std::size_t>(i)], k, rng, 0.0);
    }
    const double floor = start ? kSeedFloor : kRandomFloor;
    if (!start) start = detail::random_graphon(k, rng);
    const Family fam = Family::free_podes(k);
    const LocalSolution sol = detail::solve_free_energy(
        fam, fam.params_from(detail::clamp_blocks(*start, floor)), mult.alpha, mult.beta, ctl);
    Outcome& o = outcomes[static_cast<std::size_t>(task)];
    o.graphon = canonicalize(fam.graphon(sol.z));
    o.value = free_energy(o.graphon, mult);
    o.stationary = sol.stationarity < kStationary;
  });

  const Outcome* best = nullptr;
  int stationary = 0;
  for (const auto& o : outcomes) {
    if (!o.stationary) continue;
    ++stationary;
    if (!best || o.value > best->value + 1e-12 ||
        (o.value > best->value - 1e-12 && o.graphon.size() < best->graphon.size())) {
      best = &o;
    }
  }
  if (!best) {
    std::ostringstream msg;
    msg << "free-energy maximization found no stationary point at alpha=" << mult.alpha
        << " beta=" << mult.beta;
    fail(ErrorCode::kSolverFailure, msg.str());
  }
  OptimizationResult r;
  r.graphon = best->graphon;
  r.multipliers = mult;
  r.entropy = shannon_entropy(r.graphon);
  r.e = edge_density(r.graphon);
  r.t = triangle_density(r.graphon);
  r.el_residual = el_residual(r.graphon, mult);
  r.worth_spread = worth_spread(r.graphon, mult);
  r.n_starts = static_cast<int>(outcomes.size());
  r.n_converged = stationary;
  r.distinct_optima = 1;
  return r;
}

InvisibilityReport invisibility_test(double e, double t, const SolverOptions& opts) {
  const OptimizationResult opt = maximize_entropy_auto(e, t, opts);
  InvisibilityReport rep;
  rep.e = e;
  rep.t = t;
  rep.multipliers = opt.multipliers;
  if (rep.multipliers.degenerate) {
    rep.multipliers = Multipliers{binary_entropy_deriv1(e), 0.0, true};
  }
  rep.constrained = opt.graphon;
  rep.constrained_entropy = opt.entropy;
  rep.constrained_free_energy = free_energy(opt.graphon, rep.multipliers);
  const OptimizationResult comp = maximize_free_energy(rep.multipliers, opts, opt.graphon);
  rep.best_competitor = comp.graphon;
  rep.competitor_free_energy = free_energy(comp.graphon, rep.multipliers);
  rep.margin = rep.competitor_free_energy - rep.constrained_free_energy;
  rep.visible = rep.constrained_free_energy >= rep.competitor_free_energy - kVisibilityTolerance;
  rep.marginal = std::abs(rep.margin) < kMarginalBand && rep.margin > kVisibilityTolerance;
  return rep;
}

}  // namespace graphon
