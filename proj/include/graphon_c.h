/* C interface to the graphon library. Every function that can fail returns
 * a graphon_status; on failure graphon_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread). Strings
 * returned through char** must be released with graphon_string_free. */
#ifndef GRAPHON_C_H
#define GRAPHON_C_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GRAPHON_API __declspec(dllexport)
#else
#define GRAPHON_API __attribute__((visibility("default")))
#endif

typedef enum graphon_status {
  GRAPHON_OK = 0,
  GRAPHON_INVALID_ARGUMENT = 1,
  GRAPHON_INFEASIBLE = 2,
  GRAPHON_SOLVER_FAILURE = 3,
  GRAPHON_PARSE_ERROR = 4,
  GRAPHON_SATURATED = 5,
  GRAPHON_POLE = 6,
  GRAPHON_INTERNAL = 99
} graphon_status;

typedef struct graphon_graphon graphon_graphon;
typedef struct graphon_result graphon_result;

typedef struct graphon_options {
  int k_max;
  int starts;
  uint64_t seed;
  double tol;
  int threads;
} graphon_options;

typedef struct graphon_sweep_spec {
  double e_min, e_max;
  int e_steps;
  int t_relative; /* 0: t in [t_min, t_max]; 1: fractions of [t_lo(e), t_hi(e)] */
  double t_min, t_max;
  int t_steps;
  int workers;
} graphon_sweep_spec;

GRAPHON_API const char* graphon_last_error(void);
GRAPHON_API void graphon_string_free(char* s);
GRAPHON_API void graphon_options_default(graphon_options* opts);

/* Graphons. blocks is k*k row-major. */
GRAPHON_API graphon_status graphon_create(size_t k, const double* widths, const double* blocks,
                                          graphon_graphon** out);
GRAPHON_API graphon_status graphon_from_json(const char* json, graphon_graphon** out);
GRAPHON_API graphon_status graphon_to_json(const graphon_graphon* g, char** out);
/* Reads "multipliers": {"alpha", "beta"} from a JSON document; *found = 0
 * when the document has none. */
GRAPHON_API graphon_status graphon_multipliers_from_json(const char* json, int* found,
                                                         double* alpha, double* beta);
GRAPHON_API void graphon_free(graphon_graphon* g);
GRAPHON_API size_t graphon_size(const graphon_graphon* g);
GRAPHON_API graphon_status graphon_get(const graphon_graphon* g, double* widths, double* blocks);
GRAPHON_API graphon_status graphon_densities(const graphon_graphon* g, double* edge,
                                             double* triangle, double* entropy);
GRAPHON_API graphon_status graphon_cycle_density(const graphon_graphon* g, int m, double* out);

/* Boundary of the feasible region. */
GRAPHON_API double graphon_min_triangle(double e);
GRAPHON_API double graphon_max_triangle(double e);
GRAPHON_API int graphon_contains(double e, double t);
GRAPHON_API graphon_status graphon_boundary_csv(double e_min, double e_max, int steps, char** out);

/* Entropy maximization. k = 0 selects the pode count automatically. */
GRAPHON_API graphon_status graphon_optimize(double e, double t, int k, const graphon_options* opts,
                                            graphon_result** out);
GRAPHON_API void graphon_result_free(graphon_result* r);
GRAPHON_API graphon_status graphon_result_graphon(const graphon_result* r, graphon_graphon** out);
GRAPHON_API double graphon_result_entropy(const graphon_result* r);
GRAPHON_API double graphon_result_alpha(const graphon_result* r);
GRAPHON_API double graphon_result_beta(const graphon_result* r);
/* JSON with graphon, multipliers, residuals and phase label; with_diagnostics
 * adds the worth-maximization gap. */
GRAPHON_API graphon_status graphon_result_json(const graphon_result* r, int with_diagnostics,
                                               char** out);

/* Phase classification of g as an optimum at its own densities. */
GRAPHON_API graphon_status graphon_classify_json(const graphon_graphon* g, char** out);
GRAPHON_API graphon_status graphon_order_parameter(const graphon_graphon* g, int k, double* out);
GRAPHON_API graphon_status graphon_rank(const graphon_graphon* g, int* out);

/* Worth check at (alpha, beta); has_multipliers = 0 extracts them from g. */
GRAPHON_API graphon_status graphon_worthcheck_json(const graphon_graphon* g, int has_multipliers,
                                                   double alpha, double beta,
                                                   const graphon_options* opts, char** out);

/* Free energy and ERGM invisibility. */
GRAPHON_API graphon_status graphon_free_energy(const graphon_graphon* g, double alpha, double beta,
                                               double* out);
GRAPHON_API graphon_status graphon_invisibility_json(double e, double t,
                                                     const graphon_options* opts, char** out);
GRAPHON_API graphon_status graphon_ergm_grid_csv(const graphon_sweep_spec* spec,
                                                 const graphon_options* opts, char** csv,
                                                 char** log);

/* Scaling study: kind is "flat", "scallop" or "top". On solver failure the
 * partial CSV is still returned. */
GRAPHON_API graphon_status graphon_scaling_csv(const char* kind, double e, const double* deltas,
                                               size_t n, const graphon_options* opts, char** csv);

/* Phase-diagram sweep. svg may be NULL; log lists skipped cells. */
GRAPHON_API graphon_status graphon_sweep(const graphon_sweep_spec* spec,
                                         const graphon_options* opts, char** csv, char** svg,
                                         char** log);

#ifdef __cplusplus
}
#endif

#endif
