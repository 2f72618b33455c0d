#include "graphon_c.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "graphon/boundary.hpp"
#include "graphon/ergm.hpp"
#include "graphon/error.hpp"
#include "graphon/io.hpp"
#include "graphon/phase.hpp"
#include "graphon/scaling.hpp"
#include "graphon/sweep.hpp"

struct graphon_graphon {
  graphon::MultipodalGraphon g;
};

struct graphon_result {
  graphon::OptimizationResult r;
};

namespace {

thread_local std::string last_error;

graphon_status status_of(graphon::ErrorCode code) {
  switch (code) {
    case graphon::ErrorCode::kInvalidArgument:
      return GRAPHON_INVALID_ARGUMENT;
    case graphon::ErrorCode::kInfeasible:
      return GRAPHON_INFEASIBLE;
    case graphon::ErrorCode::kSolverFailure:
      return GRAPHON_SOLVER_FAILURE;
    case graphon::ErrorCode::kParse:
      return GRAPHON_PARSE_ERROR;
    case graphon::ErrorCode::kSaturated:
      return GRAPHON_SATURATED;
    case graphon::ErrorCode::kPole:
      return GRAPHON_POLE;
  }
  return GRAPHON_INTERNAL;
}

template <typename Fn>
graphon_status guarded(Fn fn) {
  try {
    last_error.clear();
    fn();
    return GRAPHON_OK;
  } catch (const graphon::Error& err) {
    last_error = err.what();
    return status_of(err.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& err) {
    last_error = err.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return GRAPHON_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) graphon::fail(graphon::ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

graphon::SolverOptions solver_options(const graphon_options* opts) {
  graphon::SolverOptions o;
  if (!opts) return o;
  o.k_max = opts->k_max;
  o.starts = opts->starts;
  o.seed = opts->seed;
  o.tol = opts->tol;
  o.threads = opts->threads;
  require(o.k_max >= 1 && o.k_max <= 8, "k_max must be in [1, 8]");
  require(o.starts >= 1, "starts must be at least 1");
  require(o.tol > 0.0, "tol must be positive");
  require(o.threads >= 1, "threads must be at least 1");
  return o;
}

graphon::SweepSpec sweep_spec(const graphon_sweep_spec* spec, const graphon_options* opts) {
  require(spec != nullptr, "sweep spec is null");
  graphon::SweepSpec s;
  s.e_min = spec->e_min;
  s.e_max = spec->e_max;
  s.e_steps = spec->e_steps;
  s.t_mode = spec->t_relative ? graphon::TMode::kRelative : graphon::TMode::kAbsolute;
  s.t_min = spec->t_min;
  s.t_max = spec->t_max;
  s.t_steps = spec->t_steps;
  s.workers = spec->workers;
  s.solver = solver_options(opts);
  return s;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

extern "C" {

const char* graphon_last_error(void) { return last_error.c_str(); }

void graphon_string_free(char* s) { std::free(s); }

void graphon_options_default(graphon_options* opts) {
  if (!opts) return;
  const graphon::SolverOptions d;
  opts->k_max = d.k_max;
  opts->starts = d.starts;
  opts->seed = d.seed;
  opts->tol = d.tol;
  opts->threads = d.threads;
}

graphon_status graphon_create(size_t k, const double* widths, const double* blocks,
                              graphon_graphon** out) {
  return guarded([&] {
    require(out && widths && blocks && k > 0, "graphon_create: null argument or k = 0");
    std::vector<double> c(widths, widths + k);
    graphon::Matrix b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) {
        b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = blocks[i * k + j];
      }
    }
    *out = new graphon_graphon{graphon::MultipodalGraphon(std::move(c), std::move(b))};
  });
}

graphon_status graphon_from_json(const char* json, graphon_graphon** out) {
  return guarded([&] {
    require(json && out, "graphon_from_json: null argument");
    *out = new graphon_graphon{graphon::graphon_from_json(json)};
  });
}

graphon_status graphon_to_json(const graphon_graphon* g, char** out) {
  return guarded([&] {
    require(g && out, "graphon_to_json: null argument");
    *out = dup(graphon::graphon_to_json(g->g));
  });
}

graphon_status graphon_multipliers_from_json(const char* json, int* found, double* alpha,
                                             double* beta) {
  return guarded([&] {
    require(json && found && alpha && beta, "graphon_multipliers_from_json: null argument");
    const auto m = graphon::multipliers_from_json(json);
    *found = m ? 1 : 0;
    if (m) {
      *alpha = m->alpha;
      *beta = m->beta;
    }
  });
}

void graphon_free(graphon_graphon* g) { delete g; }

size_t graphon_size(const graphon_graphon* g) { return g ? g->g.size() : 0; }

graphon_status graphon_get(const graphon_graphon* g, double* widths, double* blocks) {
  return guarded([&] {
    require(g != nullptr, "graphon_get: null graphon");
    const size_t k = g->g.size();
    for (size_t i = 0; i < k; ++i) {
      if (widths) widths[i] = g->g.width(i);
      for (size_t j = 0; j < k && blocks; ++j) blocks[i * k + j] = g->g.block(i, j);
    }
  });
}

graphon_status graphon_densities(const graphon_graphon* g, double* edge, double* triangle,
                                 double* entropy) {
  return guarded([&] {
    require(g != nullptr, "graphon_densities: null graphon");
    if (edge) *edge = graphon::edge_density(g->g);
    if (triangle) *triangle = graphon::triangle_density(g->g);
    if (entropy) *entropy = graphon::shannon_entropy(g->g);
  });
}

graphon_status graphon_cycle_density(const graphon_graphon* g, int m, double* out) {
  return guarded([&] {
    require(g && out, "graphon_cycle_density: null argument");
    *out = graphon::cycle_density(g->g, m);
  });
}

double graphon_min_triangle(double e) { return graphon::min_triangle_density(e); }
double graphon_max_triangle(double e) { return graphon::max_triangle_density(e); }
int graphon_contains(double e, double t) { return graphon::contains(e, t) ? 1 : 0; }

graphon_status graphon_boundary_csv(double e_min, double e_max, int steps, char** out) {
  return guarded([&] {
    require(out != nullptr, "graphon_boundary_csv: null output");
    *out = dup(graphon::boundary_csv(e_min, e_max, steps));
  });
}

graphon_status graphon_optimize(double e, double t, int k, const graphon_options* opts,
                                graphon_result** out) {
  return guarded([&] {
    require(out != nullptr, "graphon_optimize: null output");
    const auto o = solver_options(opts);
    *out = new graphon_result{k == 0 ? graphon::maximize_entropy_auto(e, t, o)
                                     : graphon::maximize_entropy(e, t, k, o)};
  });
}

void graphon_result_free(graphon_result* r) { delete r; }

graphon_status graphon_result_graphon(const graphon_result* r, graphon_graphon** out) {
  return guarded([&] {
    require(r && out, "graphon_result_graphon: null argument");
    *out = new graphon_graphon{r->r.graphon};
  });
}

double graphon_result_entropy(const graphon_result* r) { return r ? r->r.entropy : 0.0; }
double graphon_result_alpha(const graphon_result* r) { return r ? r->r.multipliers.alpha : 0.0; }
double graphon_result_beta(const graphon_result* r) { return r ? r->r.multipliers.beta : 0.0; }

graphon_status graphon_result_json(const graphon_result* r, int with_diagnostics, char** out) {
  return guarded([&] {
    require(r && out, "graphon_result_json: null argument");
    const graphon::PhaseLabel label = graphon::classify(r->r);
    if (with_diagnostics) {
      const auto diag = graphon::diagnose(r->r.graphon, r->r.multipliers);
      *out = dup(graphon::result_to_json(r->r, &label, &diag));
    } else {
      *out = dup(graphon::result_to_json(r->r, &label, nullptr));
    }
  });
}

graphon_status graphon_classify_json(const graphon_graphon* g, char** out) {
  return guarded([&] {
    require(g && out, "graphon_classify_json: null argument");
    graphon::OptimizationResult r;
    r.graphon = g->g;
    r.e = graphon::edge_density(g->g);
    r.t = graphon::triangle_density(g->g);
    *out = dup(graphon::phase_to_json(graphon::classify(r)));
  });
}

graphon_status graphon_order_parameter(const graphon_graphon* g, int k, double* out) {
  return guarded([&] {
    require(g && out, "graphon_order_parameter: null argument");
    *out = graphon::order_parameter(g->g, k);
  });
}

graphon_status graphon_rank(const graphon_graphon* g, int* out) {
  return guarded([&] {
    require(g && out, "graphon_rank: null argument");
    *out = graphon::rank(g->g);
  });
}

graphon_status graphon_worthcheck_json(const graphon_graphon* g, int has_multipliers,
                                       double alpha, double beta, const graphon_options* opts,
                                       char** out) {
  return guarded([&] {
    require(g && out, "graphon_worthcheck_json: null argument");
    const graphon::Multipliers mult = has_multipliers ? graphon::Multipliers{alpha, beta, false}
                                                      : graphon::extract_multipliers(g->g);
    graphon::WorthSearchOptions wo;
    if (opts) wo.seed = opts->seed;
    const auto search = graphon::maximize_worth(g->g, mult, wo);
    *out = dup(graphon::worthcheck_to_json(g->g, mult, search));
  });
}

graphon_status graphon_free_energy(const graphon_graphon* g, double alpha, double beta,
                                   double* out) {
  return guarded([&] {
    require(g && out, "graphon_free_energy: null argument");
    *out = graphon::free_energy(g->g, graphon::Multipliers{alpha, beta, false});
  });
}

graphon_status graphon_invisibility_json(double e, double t, const graphon_options* opts,
                                         char** out) {
  return guarded([&] {
    require(out != nullptr, "graphon_invisibility_json: null output");
    *out = dup(graphon::invisibility_to_json(graphon::invisibility_test(e, t, solver_options(opts))));
  });
}

graphon_status graphon_ergm_grid_csv(const graphon_sweep_spec* spec, const graphon_options* opts,
                                     char** csv, char** log) {
  return guarded([&] {
    require(csv != nullptr, "graphon_ergm_grid_csv: null output");
    const auto grid = graphon::run_ergm_grid(sweep_spec(spec, opts));
    *csv = dup(graphon::ergm_grid_csv(grid));
    if (log) *log = dup(join_lines(grid.log));
  });
}

graphon_status graphon_scaling_csv(const char* kind, double e, const double* deltas, size_t n,
                                   const graphon_options* opts, char** csv) {
  return guarded([&] {
    require(kind && csv && (deltas || n == 0), "graphon_scaling_csv: null argument");
    const std::vector<double> d(deltas, deltas + n);
    try {
      *csv = dup(graphon::scaling_csv(
          graphon::scaling_study(graphon::parse_boundary(kind), e, d, solver_options(opts))));
    } catch (const graphon::ScalingFailure& err) {
      *csv = dup(graphon::scaling_csv(err.partial()));
      throw;
    }
  });
}

graphon_status graphon_sweep(const graphon_sweep_spec* spec, const graphon_options* opts,
                             char** csv, char** svg, char** log) {
  return guarded([&] {
    require(csv != nullptr, "graphon_sweep: null output");
    const auto out = graphon::run_sweep(sweep_spec(spec, opts));
    *csv = dup(graphon::sweep_csv(out));
    if (svg) *svg = dup(graphon::sweep_svg(out));
    if (log) *log = dup(join_lines(out.log));
  });
}

}  // extern "C"
