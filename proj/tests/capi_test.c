/* Exercises the C interface from plain C: handles, status codes and the
 * thread-local error message. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "graphon_c.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void test_handles(void) {
  const double widths[2] = {0.5, 0.5};
  const double blocks[4] = {0.0, 0.8, 0.8, 0.0};
  graphon_graphon* g = NULL;
  double edge, tri, ent, c4, w[2], b[4], p2;
  int r;
  char* json = NULL;
  graphon_graphon* back = NULL;

  EXPECT(graphon_create(2, widths, blocks, &g) == GRAPHON_OK);
  EXPECT(graphon_size(g) == 2);
  EXPECT(graphon_densities(g, &edge, &tri, &ent) == GRAPHON_OK);
  EXPECT(fabs(edge - 0.4) < 1e-15);
  EXPECT(tri == 0.0);
  EXPECT(graphon_cycle_density(g, 4, &c4) == GRAPHON_OK);
  EXPECT(fabs(c4 - 0.8 * 0.8 * 0.8 * 0.8 / 8.0) < 1e-15);
  EXPECT(graphon_order_parameter(g, 2, &p2) == GRAPHON_OK);
  EXPECT(fabs(p2 + 0.004096) < 1e-15);
  EXPECT(graphon_rank(g, &r) == GRAPHON_OK && r == 2);

  EXPECT(graphon_to_json(g, &json) == GRAPHON_OK);
  EXPECT(json != NULL && strstr(json, "\"podes\"") != NULL);
  EXPECT(graphon_from_json(json, &back) == GRAPHON_OK);
  EXPECT(graphon_get(back, w, b) == GRAPHON_OK);
  EXPECT(w[0] == 0.5 && b[1] == 0.8 && b[3] == 0.0);
  graphon_string_free(json);
  graphon_free(back);
  graphon_free(g);
  graphon_free(NULL);
}

static void test_errors(void) {
  const double widths[2] = {0.7, 0.7};
  const double blocks[4] = {0.1, 0.2, 0.2, 0.1};
  const double asym[4] = {0.1, 0.2, 0.3, 0.1};
  const double ok_widths[2] = {0.5, 0.5};
  graphon_graphon* g = NULL;
  graphon_result* res = NULL;
  double v;

  EXPECT(graphon_create(2, widths, blocks, &g) == GRAPHON_INVALID_ARGUMENT);
  EXPECT(g == NULL);
  EXPECT(strlen(graphon_last_error()) > 0);
  EXPECT(graphon_create(2, ok_widths, asym, &g) == GRAPHON_INVALID_ARGUMENT);
  EXPECT(graphon_create(2, ok_widths, blocks, NULL) == GRAPHON_INVALID_ARGUMENT);
  EXPECT(graphon_from_json("{\"podes\": [1]}", &g) == GRAPHON_PARSE_ERROR);
  EXPECT(strstr(graphon_last_error(), "blocks") != NULL);
  EXPECT(graphon_from_json("not json", &g) == GRAPHON_PARSE_ERROR);

  EXPECT(graphon_optimize(0.6, 0.1, 0, NULL, &res) == GRAPHON_INFEASIBLE);
  EXPECT(res == NULL);
  EXPECT(strstr(graphon_last_error(), "below minimal triangle density") != NULL);
  EXPECT(graphon_optimize(1.5, 0.1, 2, NULL, &res) != GRAPHON_OK);

  EXPECT(graphon_create(2, ok_widths, blocks, &g) == GRAPHON_OK);
  EXPECT(graphon_order_parameter(g, 9, &v) == GRAPHON_INVALID_ARGUMENT);
  graphon_free(g);
}

static void test_boundary(void) {
  char* csv = NULL;
  EXPECT(graphon_min_triangle(0.3) == 0.0);
  EXPECT(fabs(graphon_min_triangle(0.6) - 0.141500988177) < 1e-11);
  EXPECT(fabs(graphon_max_triangle(0.64) - 0.512) < 1e-15);
  EXPECT(graphon_contains(0.5, 0.125) == 1);
  EXPECT(graphon_contains(0.5, 0.4) == 0);
  EXPECT(graphon_boundary_csv(0.2, 0.8, 4, &csv) == GRAPHON_OK);
  EXPECT(strncmp(csv, "e,t_min,t_er,t_max,n,c0,p\n", 26) == 0);
  graphon_string_free(csv);
}

static void test_optimize(void) {
  graphon_options opts;
  graphon_result* res = NULL;
  graphon_graphon* g = NULL;
  char* json = NULL;
  double edge, tri, ent, f;

  graphon_options_default(&opts);
  EXPECT(opts.k_max == 6 && opts.starts == 24 && opts.seed == 42);
  opts.k_max = 3;
  EXPECT(graphon_optimize(0.3, 1e-3, 0, &opts, &res) == GRAPHON_OK);
  EXPECT(graphon_result_graphon(res, &g) == GRAPHON_OK);
  EXPECT(graphon_size(g) == 2);
  EXPECT(graphon_densities(g, &edge, &tri, &ent) == GRAPHON_OK);
  EXPECT(fabs(edge - 0.3) < 1e-10 && fabs(tri - 1e-3) < 1e-10);
  EXPECT(fabs(ent - graphon_result_entropy(res)) < 1e-12);
  EXPECT(graphon_result_beta(res) > 0.0);
  EXPECT(graphon_free_energy(g, graphon_result_alpha(res), graphon_result_beta(res), &f) ==
         GRAPHON_OK);
  EXPECT(fabs(f - (ent - graphon_result_alpha(res) * edge -
                   graphon_result_beta(res) / 3.0 * tri)) < 1e-12);
  EXPECT(graphon_result_json(res, 1, &json) == GRAPHON_OK);
  EXPECT(strstr(json, "\"worth_gap\"") != NULL);
  EXPECT(strstr(json, "\"A(2,0)\"") != NULL);
  graphon_string_free(json);
  EXPECT(graphon_classify_json(g, &json) == GRAPHON_OK);
  EXPECT(strstr(json, "\"rank\"") != NULL);
  graphon_string_free(json);
  EXPECT(graphon_worthcheck_json(g, 0, 0.0, 0.0, &opts, &json) == GRAPHON_OK);
  EXPECT(strstr(json, "\"worth_spread\"") != NULL);
  graphon_string_free(json);
  graphon_free(g);
  graphon_result_free(res);
}

static void test_sweep(void) {
  graphon_sweep_spec spec = {0.2, 0.2, 1, 0, 0.0, 0.5, 2, 1};
  graphon_options opts;
  char *csv = NULL, *svg = NULL, *log = NULL;
  graphon_options_default(&opts);
  opts.k_max = 2;
  opts.starts = 4;
  EXPECT(graphon_sweep(&spec, &opts, &csv, &svg, &log) == GRAPHON_OK);
  EXPECT(strncmp(csv, "e,t,entropy", 11) == 0);
  EXPECT(strstr(svg, "<svg") != NULL);
  EXPECT(strstr(log, "infeasible") != NULL);
  graphon_string_free(csv);
  graphon_string_free(svg);
  graphon_string_free(log);
  spec.e_steps = 0;
  EXPECT(graphon_sweep(&spec, &opts, &csv, NULL, &log) == GRAPHON_INVALID_ARGUMENT);
}

int main(void) {
  test_handles();
  test_errors();
  test_boundary();
  test_optimize();
  test_sweep();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi_test: all checks passed\n");
  return 0;
}
