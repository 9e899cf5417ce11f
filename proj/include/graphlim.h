#ifndef GRAPHLIM_H
#define GRAPHLIM_H

/* C interface to the graphlim library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * fallible call returns a gl_status; on failure gl_last_error() describes
 * the problem (per thread, valid until the next failing call on that
 * thread). Strings returned through char** are owned by the caller and
 * released with gl_string_free. Reports come back as text in the format
 * selected on the gl_config (JSON unless set to CSV). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define GL_API __attribute__((visibility("default")))
#else
#define GL_API
#endif

typedef enum gl_status {
  GL_OK = 0,
  GL_INVALID_ARGUMENT = 1,
  GL_PARSE_ERROR = 2,
  GL_OUT_OF_RANGE = 3,
  GL_UNSUPPORTED = 4,
  GL_NOT_ALIGNED = 5,
  GL_DOMINATION = 6,
  GL_IO_ERROR = 7,
  GL_INTERNAL = 8
} gl_status;

typedef enum gl_metric { GL_METRIC_CUT = 0, GL_METRIC_L1 = 1 } gl_metric;

typedef struct gl_graph gl_graph;
typedef struct gl_graphon gl_graphon;
typedef struct gl_property gl_property;
typedef struct gl_config gl_config;

typedef struct gl_density {
  double value;
  int exact;
  double ci_halfwidth;
} gl_density;

typedef struct gl_interval {
  double lower;
  double upper;
} gl_interval;

GL_API const char* gl_version(void);
GL_API const char* gl_last_error(void);
GL_API const char* gl_status_name(gl_status status);
GL_API void gl_string_free(char* s);

/* Caps worker threads for every parallel loop; 0 restores the hardware
 * default. Results never depend on it. */
GL_API void gl_set_max_threads(unsigned n);

/* ---- graphs ---------------------------------------------------------- */

GL_API gl_status gl_graph_new(size_t n, gl_graph** out);
/* Graph text: first line "n", then one "u v" pair per line, 0-indexed. */
GL_API gl_status gl_graph_from_text(const char* text, gl_graph** out);
GL_API gl_status gl_graph_load(const char* path, gl_graph** out);
/* K3, C4, P3, E2, paw, diamond, ... */
GL_API gl_status gl_graph_motif(const char* name, gl_graph** out);
GL_API gl_status gl_graph_copy(const gl_graph* g, gl_graph** out);
GL_API gl_status gl_graph_add_edge(gl_graph* g, size_t u, size_t v);
GL_API gl_status gl_graph_has_edge(const gl_graph* g, size_t u, size_t v, int* out);
GL_API size_t gl_graph_node_count(const gl_graph* g);
GL_API size_t gl_graph_edge_count(const gl_graph* g);
GL_API gl_status gl_graph_to_text(const gl_graph* g, char** out);
GL_API gl_status gl_graph_save(const gl_graph* g, const char* path);
GL_API void gl_graph_free(gl_graph* g);

/* ---- graphons (stepfunctions) ---------------------------------------- */

/* k part measures and a row-major symmetric k*k value matrix in [0,1]. */
GL_API gl_status gl_graphon_new(size_t k, const double* measures, const double* values, gl_graphon** out);
/* "constant:p", "halfgraphon:resolution", "file:path". */
GL_API gl_status gl_graphon_from_literal(const char* literal, gl_graphon** out);
/* {"parts":[m_1,...],"values":[[...],...]} */
GL_API gl_status gl_graphon_from_json(const char* text, gl_graphon** out);
GL_API gl_status gl_graphon_embed(const gl_graph* g, gl_graphon** out);
GL_API size_t gl_graphon_parts(const gl_graphon* w);
GL_API gl_status gl_graphon_measure(const gl_graphon* w, size_t i, double* out);
GL_API gl_status gl_graphon_value(const gl_graphon* w, size_t i, size_t j, double* out);
GL_API gl_status gl_graphon_to_json(const gl_graphon* w, char** out);
GL_API void gl_graphon_free(gl_graphon* w);

/* ---- configuration ---------------------------------------------------- */

GL_API gl_status gl_config_new(gl_config** out);
/* Rejects unknown keys. */
GL_API gl_status gl_config_from_json(const char* text, gl_config** out);
GL_API gl_status gl_config_load(const char* path, gl_config** out);
GL_API gl_status gl_config_set_seed(gl_config* c, uint64_t seed);
GL_API gl_status gl_config_set_trials(gl_config* c, size_t trials);
GL_API gl_status gl_config_set_exact_cap(gl_config* c, size_t cap);
/* Hoeffding failure probability of reported confidence intervals (default
 * 0.05, i.e. 95% confidence). */
GL_API gl_status gl_config_set_confidence_delta(gl_config* c, double delta);
/* Log base of 1/log n test thresholds; 0 means natural log. */
GL_API gl_status gl_config_set_log_base(gl_config* c, double base);
/* "json" or "csv". */
GL_API gl_status gl_config_set_format(gl_config* c, const char* format);
/* Verify parameter, key "experiment.parameter". */
GL_API gl_status gl_config_set_override(gl_config* c, const char* key, double value);
GL_API gl_status gl_config_to_json(const gl_config* c, char** out);
GL_API void gl_config_free(gl_config* c);

/* ---- densities -------------------------------------------------------- */

GL_API gl_status gl_hom_density_graph(const gl_graph* f, const gl_graph* g, gl_density* out);
GL_API gl_status gl_hom_density_graphon(const gl_graph* f, const gl_graphon* w, gl_density* out);
GL_API gl_status gl_induced_density_graph(const gl_graph* f, const gl_graph* g, gl_density* out);
GL_API gl_status gl_induced_density_graphon(const gl_graph* f, const gl_graphon* w, gl_density* out);
/* Monte Carlo t(F,W); halfwidth sqrt(ln(2/delta) / (2 trials)). */
GL_API gl_status gl_estimate_density(const gl_graph* f, const gl_graphon* w, size_t trials, uint64_t seed,
                                     double delta, gl_density* out);

/* ---- distances -------------------------------------------------------- */

GL_API gl_status gl_l1_distance(const gl_graphon* a, const gl_graphon* b, double* out);
/* ||A - B||_box on the common refinement; exact is 0 past the exact cap
 * (then value is a lower bound). cfg may be NULL. */
GL_API gl_status gl_cut_distance(const gl_graphon* a, const gl_graphon* b, const gl_config* cfg, double* value,
                                 int* exact);
GL_API gl_status gl_delta_graphs(const gl_graph* a, const gl_graph* b, gl_metric metric, const gl_config* cfg,
                                 gl_interval* out);
GL_API gl_status gl_delta_graphons(const gl_graphon* a, const gl_graphon* b, gl_metric metric, const gl_config* cfg,
                                   gl_interval* out);

/* ---- sampling --------------------------------------------------------- */

/* kind: "gnw" (G(n,W)), "gprime" (stratified G'(n,W)), "weighted"
 * (equal-part W read as a weighted graph; n must equal its part count). */
GL_API gl_status gl_sample_graphon(const gl_graphon* w, const char* kind, size_t n, uint64_t seed, gl_graph** out);
/* Induced subgraph on a uniform k-subset. */
GL_API gl_status gl_sample_induced(const gl_graph* g, size_t k, uint64_t seed, gl_graph** out);

/* ---- properties and testers ------------------------------------------- */

/* Property syntax as listed by gl_property_catalog, e.g. "triangle_free",
 * "density:C4:0.0625", "corner_one:0.5". cfg (may be NULL) supplies the
 * log base of 1/log n thresholds. */
GL_API gl_status gl_property_new(const char* spec, const gl_config* cfg, gl_property** out);
GL_API gl_status gl_property_member(const gl_property* p, const gl_graph* g, int* out);
GL_API void gl_property_free(gl_property* p);

/* Fraction of sampled k-node graphs in the property; trial t is
 * reproducible from (seed, t). */
GL_API gl_status gl_test_graph(const gl_graph* g, const gl_property* p, size_t k, size_t trials, uint64_t seed,
                               double* estimate);
GL_API gl_status gl_test_graphon(const gl_graphon* w, const gl_property* p, size_t k, size_t trials, uint64_t seed,
                                 double* estimate);
/* Normalized edit distance 2 * edits / n^2 to the nearest member. */
GL_API gl_status gl_edit_distance(const gl_graph* g, const gl_property* p, double* distance);
GL_API gl_status gl_graphon_distance(const gl_graphon* w, const gl_property* p, const gl_config* cfg,
                                     gl_interval* out);

/* ---- reports (text in the config's format) ----------------------------- */

/* Subjects are given as text: a graphon literal ("constant:p",
 * "halfgraphon:r", "file:w.json") or a path to a graph file; paths ending
 * in .json are read as graphons. */
GL_API gl_status gl_report_density(const char* motif, const char* subject, int induced, size_t estimate_trials,
                                   const gl_config* cfg, char** out);
GL_API gl_status gl_report_cutnorm(const char* a, const char* b, const gl_config* cfg, char** out);
GL_API gl_status gl_report_delta(const char* a, const char* b, gl_metric metric, const gl_config* cfg, char** out);
GL_API gl_status gl_report_test(const char* subject, const char* property, size_t k, size_t trials,
                                const gl_config* cfg, char** out);
/* Graph subjects against graph properties give the exact edit distance and
 * a nearest member; graphon properties give d1(W, R) (graphs are embedded).
 * A graphon subject against a graph property reports the closure score
 * E d1(G(k,W), P) with k (0 means 6) and the config's trial count. */
GL_API gl_status gl_report_distance_to_property(const char* subject, const char* property, size_t k,
                                                const gl_config* cfg, char** out);
GL_API gl_status gl_property_catalog(const gl_config* cfg, char** out);
GL_API gl_status gl_experiment_catalog(const gl_config* cfg, char** out);
/* names: comma-separated experiment names or "all". *pass is 1 when every
 * assertion held. Runtimes are included only when timing is nonzero. */
GL_API gl_status gl_verify(const char* names, const gl_config* cfg, int timing, char** out, int* pass);

#ifdef __cplusplus
}
#endif

#endif /* GRAPHLIM_H */
