#include "graphon/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
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

constexpr double kProbeMergeTol = 1e-3;
constexpr double kMinWidth = 1e-6;
// Random starts are pulled well inside the box; structured starts sit on
// (or next to) the constraint set and only need to leave exact 0/1.
constexpr double kSeedFloor = 1e-4;
constexpr double kStructuredSeedFloor = 1e-8;
constexpr double kSeedJitter = 0.05;
constexpr double kErTolerance = 1e-14;

struct StartOutcome {
  bool converged = false;
  MultipodalGraphon graphon = MultipodalGraphon::constant(0.0);
  double entropy = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double violation = 0.0;
};

void require_feasible(double e, double t) {
  if (!(e >= 0.0 && e <= 1.0) || !std::isfinite(t)) {
    fail(ErrorCode::kInfeasible, "edge density must lie in [0, 1]");
  }
  if (contains(e, t)) return;
  std::ostringstream msg;
  msg.setf(std::ios::fixed);
  msg.precision(6);
  if (t < min_triangle_density(e)) {
    msg << "below minimal triangle density " << min_triangle_density(e);
  } else {
    msg << "above maximal triangle density " << max_triangle_density(e);
  }
  fail(ErrorCode::kInfeasible, msg.str());
}

MultipodalGraphon drop_thin_podes(const MultipodalGraphon& g) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.width(i) >= kMinWidth) keep.push_back(i);
  }
  if (keep.size() == g.size() || keep.empty()) return g;
  double total = 0.0;
  for (auto i : keep) total += g.width(i);
  std::vector<double> c;
  Matrix b(keep.size(), keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    c.push_back(g.width(keep[a]) / total);
    for (std::size_t d = 0; d < keep.size(); ++d) b(a, d) = g.block(keep[a], keep[d]);
  }
  double sum = 0.0;
  for (double v : c) sum += v;
  c.front() += 1.0 - sum;
  return MultipodalGraphon(std::move(c), std::move(b));
}

double violation(const LocalSolution& s, double e, double t) {
  return std::max(std::abs(s.edge - e), std::abs(s.triangle - t));
}

StartOutcome outcome_of(const Family& fam, const LocalSolution& s, double e, double t,
                        double tol) {
  StartOutcome out;
  out.graphon = fam.graphon(s.z);
  out.entropy = s.entropy;
  out.alpha = s.alpha;
  out.beta = s.beta;
  out.violation = violation(s, e, t);
  out.converged = out.violation < tol;
  return out;
}

// Merge near-duplicate podes and prune vanishing ones, re-polishing the
// smaller graphon; a reduction is kept only if it stays converged without
// losing entropy.
StartOutcome reduce(StartOutcome s, double e, double t, double tol,
                    const detail::SolveControls& ctl) {
  for (;;) {
    const MultipodalGraphon exact = canonicalize(s.graphon);
    const MultipodalGraphon probe = drop_thin_podes(canonicalize(exact, kProbeMergeTol));
    if (probe.size() == exact.size()) {
      s.graphon = exact;
      return s;
    }
    const Family fam = Family::free_podes(static_cast<int>(probe.size()));
    const LocalSolution sol =
        detail::polish_constrained(fam, fam.params_from(probe), e, t, s.alpha, s.beta, ctl);
    StartOutcome next = outcome_of(fam, sol, e, t, tol);
    if (!next.converged || !sol.newton_converged || next.entropy < s.entropy - 1e-9) {
      s.graphon = exact;
      return s;
    }
    s = next;
  }
}

double canonical_distance(const MultipodalGraphon& a, const MultipodalGraphon& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = (a.blocks() - b.blocks()).lpNorm<Eigen::Infinity>();
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.width(i) - b.width(i)));
  return d;
}

OptimizationResult describe(const MultipodalGraphon& g, double e, double t,
                            std::optional<Multipliers> fallback) {
  OptimizationResult r;
  r.graphon = g;
  r.e = e;
  r.t = t;
  r.entropy = shannon_entropy(g);
  r.edge_error = std::abs(edge_density(g) - e);
  r.triangle_error = std::abs(triangle_density(g) - t);
  std::optional<Multipliers> mult;
  try {
    mult = extract_multipliers(g);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kSaturated) throw;
  }
  // A single interior block class cannot pin both multipliers; the solver's
  // own pair is then the informative one.
  if (fallback && g.size() > 1 && (!mult || mult->degenerate)) mult = fallback;
  r.multipliers = mult.value_or(Multipliers{0.0, 0.0, true});
  r.el_residual = el_residual(g, r.multipliers);
  r.worth_spread = worth_spread(g, r.multipliers);
  return r;
}

OptimizationResult constant_result(double e, double t) {
  OptimizationResult r = describe(MultipodalGraphon::constant(e), e, t, std::nullopt);
  r.n_starts = 1;
  r.n_converged = 1;
  r.distinct_optima = 1;
  return r;
}

OptimizationResult assemble(const std::vector<StartOutcome>& outcomes, double e, double t, int k,
                            double tol) {
  const StartOutcome* best = nullptr;
  int converged = 0;
  for (const auto& o : outcomes) {
    if (!o.converged) continue;
    ++converged;
    if (!best || o.entropy > best->entropy + 1e-12 ||
        (o.entropy > best->entropy - 1e-12 && o.graphon.size() < best->graphon.size())) {
      best = &o;
    }
  }
  if (!best) {
    std::ostringstream msg;
    msg << "no start converged for k=" << k << " (constraint violations:";
    for (const auto& o : outcomes) msg << ' ' << o.violation;
    msg << ", tolerance " << tol << ')';
    fail(ErrorCode::kSolverFailure, msg.str());
  }
  std::vector<const MultipodalGraphon*> reps;
  for (const auto& o : outcomes) {
    if (!o.converged || o.entropy < best->entropy - 1e-6) continue;
    const bool seen = std::any_of(reps.begin(), reps.end(), [&](const MultipodalGraphon* r) {
      return canonical_distance(*r, o.graphon) <= 1e-4;
    });
    if (!seen) reps.push_back(&o.graphon);
  }
  OptimizationResult r =
      describe(best->graphon, e, t, Multipliers{best->alpha, best->beta, false});
  r.n_starts = static_cast<int>(outcomes.size());
  r.n_converged = converged;
  r.distinct_optima = static_cast<int>(reps.size());
  return r;
}

MultipodalGraphon start_graphon(const std::vector<MultipodalGraphon>& seeds, int index, int k,
                                Rng& rng) {
  if (index < static_cast<int>(seeds.size())) {
    if (auto g = detail::adapt_pode_count(seeds[static_cast<std::size_t>(index)], k, rng,
                                          kSeedJitter)) {
      return *g;
    }
  }
  return detail::random_graphon(k, rng);
}

}  // namespace

double symmetric_bipodal_diagonal(double e, double t) { return e + std::cbrt(t - e * e * e); }

OptimizationResult describe_solution(const MultipodalGraphon& g, double e, double t) {
  return describe(g, e, t, std::nullopt);
}

OptimizationResult maximize_entropy(double e, double t, int k, const SolverOptions& opts) {
  require_feasible(e, t);
  if (k < 1 || k > 8) fail(ErrorCode::kInvalidArgument, "pode count must be in [1, 8]");
  if (opts.starts < 1) fail(ErrorCode::kInvalidArgument, "need at least one start");
  const double gap = std::abs(t - e * e * e);
  if (gap <= kErTolerance || (k == 1 && gap < opts.tol)) return constant_result(e, t);
  if (k == 1) {
    fail(ErrorCode::kSolverFailure,
         "no start converged for k=1: a constant graphon only reaches t = e^3");
  }

  const detail::SolveControls ctl;
  const auto seeds = detail::structured_seeds(e, t);
  const Family fam = Family::free_podes(k);
  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(opts.starts));
  detail::parallel_for(opts.starts, opts.threads, [&](int i) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i)));
    const double floor = i < static_cast<int>(seeds.size()) ? kStructuredSeedFloor : kSeedFloor;
    const MultipodalGraphon seed = detail::clamp_blocks(start_graphon(seeds, i, k, rng), floor);
    const LocalSolution sol = detail::solve_constrained(fam, fam.params_from(seed), e, t, ctl);
    StartOutcome o = outcome_of(fam, sol, e, t, opts.tol);
    if (o.converged) o = reduce(std::move(o), e, t, opts.tol, ctl);
    outcomes[static_cast<std::size_t>(i)] = std::move(o);
  });
  return assemble(outcomes, e, t, k, opts.tol);
}

OptimizationResult maximize_entropy_auto(double e, double t, const SolverOptions& opts) {
  require_feasible(e, t);
  std::optional<OptimizationResult> best;
  std::string last_error;
  for (int k = 1; k <= std::max(1, opts.k_max); ++k) {
    try {
      OptimizationResult r = maximize_entropy(e, t, k, opts);
      if (!best || r.entropy > best->entropy + 1e-8) best = std::move(r);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kSolverFailure) throw;
      last_error = err.what();
    }
  }
  if (!best) fail(ErrorCode::kSolverFailure, last_error);
  return *best;
}

OptimizationResult ansatz_solve(double e, double t, const AnsatzSpec& ansatz,
                                const SolverOptions& opts) {
  require_feasible(e, t);
  switch (ansatz.kind) {
    case AnsatzKind::kFreeK:
      return maximize_entropy(e, t, ansatz.size, opts);
    case AnsatzKind::kSymmetricBipodal: {
      const double a = symmetric_bipodal_diagonal(e, t);
      const double d = 2.0 * e - a;
      if (!(a >= 0.0 && a <= 1.0 && d >= 0.0 && d <= 1.0)) {
        fail(ErrorCode::kInfeasible, "ansatz infeasible");
      }
      if (std::abs(t - e * e * e) <= kErTolerance) return constant_result(e, t);
      Matrix b(2, 2);
      b << a, d, d, a;
      std::optional<Multipliers> mult;
      if (a > 0.0 && a < 1.0 && d > 0.0 && d < 1.0) {
        const double beta =
            (binary_entropy_deriv1(a) - binary_entropy_deriv1(d)) / (0.5 * (a - d) * (a - d));
        mult = Multipliers{binary_entropy_deriv1(a) - beta * 0.5 * (a * a + d * d), beta, false};
      }
      OptimizationResult r =
          describe(canonicalize(MultipodalGraphon({0.5, 0.5}, b)), e, t, mult);
      r.n_starts = r.n_converged = r.distinct_optima = 1;
      return r;
    }
    case AnsatzKind::kN2Symmetric: {
      const int n = ansatz.size;
      if (n < 1 || n > 6) fail(ErrorCode::kInvalidArgument, "(n,2) ansatz needs 1 <= n <= 6");
      const detail::SolveControls ctl;
      const Family fam = Family::n2_symmetric(n);
      std::vector<MultipodalGraphon> seeds;
      if (auto g = detail::scallop_family_point(n, e, t)) seeds.push_back(*g);
      if (e > 0.5 && e < 1.0) {
        const double disc = 1.0 - (n + 2.0) * e / (n + 1.0);
        if (disc >= 0.0) {
          const double c0 = (1.0 + std::sqrt(disc)) / (n + 2.0);
          const MultipodalGraphon ref = scallop_family_graphon(n, e, c0);
          if (auto g = detail::mix_toward_constant(ref, e, t)) seeds.push_back(*g);
        }
      }
      std::vector<StartOutcome> outcomes(static_cast<std::size_t>(opts.starts));
      detail::parallel_for(opts.starts, opts.threads, [&](int i) {
        Rng rng(derive_seed(opts.seed, 1000 + static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(i)));
        const double floor =
            i < static_cast<int>(seeds.size()) ? kStructuredSeedFloor : kSeedFloor;
        const MultipodalGraphon seed =
            detail::clamp_blocks(start_graphon(seeds, i, n + 2, rng), floor);
        const LocalSolution sol = detail::solve_constrained(fam, fam.params_from(seed), e, t, ctl);
        StartOutcome o = outcome_of(fam, sol, e, t, opts.tol);
        o.graphon = canonicalize(o.graphon);
        outcomes[static_cast<std::size_t>(i)] = std::move(o);
      });
      bool any = std::any_of(outcomes.begin(), outcomes.end(),
                             [](const StartOutcome& o) { return o.converged; });
      if (!any) fail(ErrorCode::kInfeasible, "ansatz infeasible");
      return assemble(outcomes, e, t, n + 2, opts.tol);
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown ansatz");
}

}  // namespace graphon
