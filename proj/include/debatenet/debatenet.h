// Copyright 2026 The debatenet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the debatenet pipeline and its numerical kernels. All
 * handles are opaque; every fallible call returns a dn_status and leaves a
 * message retrievable through dn_last_error() on the calling thread. */

#ifndef DEBATENET_DEBATENET_H_
#define DEBATENET_DEBATENET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DN_API __declspec(dllexport)
#else
#define DN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dn_status {
  DN_OK = 0,
  DN_ERR_INVALID_ARGUMENT = 1,
  DN_ERR_PARSE = 2,
  DN_ERR_IO = 3,
  DN_ERR_DATA = 4,
  DN_ERR_NUMERIC = 5,
  DN_ERR_CONVERGENCE = 6,
  DN_ERR_DEPENDENCY = 7,
  DN_ERR_STALE = 8,
  DN_ERR_INTERNAL = 9
} dn_status;

typedef enum dn_label {
  DN_LABEL_MAJORITY = 0,
  DN_LABEL_MINORITY = 1,
  DN_LABEL_INTERMEDIATE = 2,
  DN_LABEL_UNCLASSIFIED = 3
} dn_label;

DN_API const char* dn_version(void);
DN_API const char* dn_status_name(dn_status status);
/* Message of the last failed call on this thread; "" after a success. */
DN_API const char* dn_last_error(void);
/* Process exit code for a status: 0 success, 1 data error, 2 usage,
 * dependency or staleness error. */
DN_API int dn_exit_code(dn_status status);

/* ---- Pipeline ---------------------------------------------------------- */

typedef struct dn_pipeline dn_pipeline;

typedef struct dn_pipeline_options {
  const char* workspace; /* NULL keeps the config / environment default */
  int threads;           /* 0 keeps the config value */
  int has_seed;
  uint64_t seed;
  int strict; /* -1 keeps the config value, 0 lenient, 1 strict */
} dn_pipeline_options;

DN_API void dn_pipeline_options_init(dn_pipeline_options* options);

/* Loads and validates a JSON config. options may be NULL. */
DN_API dn_status dn_pipeline_open(const char* config_path,
                                  const dn_pipeline_options* options,
                                  dn_pipeline** out);
DN_API void dn_pipeline_close(dn_pipeline* pipeline);

DN_API size_t dn_stage_count(void);
/* Stage names in execution order; NULL when out of range. */
DN_API const char* dn_stage_name(size_t index);

/* Runs one stage. *skipped (may be NULL) is set when its artifacts were
 * already up to date. force re-runs regardless and accepts stale upstream
 * artifacts. */
DN_API dn_status dn_pipeline_run(dn_pipeline* pipeline, const char* stage,
                                 int force, int* skipped);

/* Details of the last dn_pipeline_run on this handle. Strings stay valid
 * until the next run or close. */
DN_API const char* dn_pipeline_last_directory(const dn_pipeline* pipeline);
DN_API size_t dn_pipeline_artifact_count(const dn_pipeline* pipeline);
DN_API const char* dn_pipeline_artifact(const dn_pipeline* pipeline, size_t index);
DN_API size_t dn_pipeline_note_count(const dn_pipeline* pipeline);
DN_API const char* dn_pipeline_note(const dn_pipeline* pipeline, size_t index);

/* Writes a synthetic corpus with a ready-to-run config.json into out_dir.
 * params_json NULL or "" selects the polarized preset. */
DN_API dn_status dn_synth_write(const char* out_dir, const char* params_json,
                                int has_seed, uint64_t seed);

/* ---- Graphs and labels ------------------------------------------------- */

typedef struct dn_graph dn_graph;
typedef struct dn_labels dn_labels;

DN_API dn_status dn_graph_create(dn_graph** out);
DN_API dn_status dn_graph_read_edge_list(const char* path, dn_graph** out);
DN_API void dn_graph_destroy(dn_graph* graph);
/* Adds weight units of src -> dst; self-interactions are only tallied. */
DN_API dn_status dn_graph_add_interaction(dn_graph* graph, const char* src,
                                          const char* dst, uint64_t weight);
DN_API size_t dn_graph_node_count(const dn_graph* graph);
DN_API size_t dn_graph_edge_count(const dn_graph* graph);
/* Node ids follow insertion order. */
DN_API const char* dn_graph_node_id(const dn_graph* graph, size_t index);

DN_API dn_status dn_labels_create(dn_labels** out);
/* CSV user_id,label[,provenance]. */
DN_API dn_status dn_labels_read_csv(const char* path, dn_labels** out);
DN_API void dn_labels_destroy(dn_labels* labels);
DN_API dn_status dn_labels_set(dn_labels* labels, const char* user, dn_label label);
DN_API dn_label dn_labels_get(const dn_labels* labels, const char* user);

/* ---- Assortativity ----------------------------------------------------- */

typedef struct dn_ppr_options {
  double damping;   /* default 0.85 */
  double tolerance; /* L1 residual, default 1e-12 */
  int max_iterations;
  int directed; /* walk along out-edges instead of the undirected projection */
  int weighted; /* interaction counts as edge weights */
} dn_ppr_options;

DN_API void dn_ppr_options_init(dn_ppr_options* options);

/* weights must hold dn_graph_node_count() entries, in node order. */
DN_API dn_status dn_personalized_pagerank(const dn_graph* graph, const char* focal,
                                          const dn_ppr_options* options,
                                          double* weights);
/* *single_group (may be NULL) is set when only one label carries edges, in
 * which case r is reported as 1. */
DN_API dn_status dn_global_assortativity(const dn_graph* graph,
                                         const dn_labels* labels, double* r,
                                         int* single_group);
/* *flagged is set when no labeled edge mass is reachable (z == 0). */
DN_API dn_status dn_local_assortativity(const dn_graph* graph,
                                        const dn_labels* labels,
                                        const char* focal,
                                        const dn_ppr_options* options, double* r,
                                        double* z, int* flagged);

/* ---- Statistics -------------------------------------------------------- */

/* Pearson chi-square on a row-major rows x cols contingency table. */
DN_API dn_status dn_chi_square(const double* table, size_t rows, size_t cols,
                               double* statistic, int* df, double* p_value);
/* Pooled two-proportion z for k1/n1 against k2/n2, two-sided p. */
DN_API dn_status dn_two_proportion_z(uint64_t k1, uint64_t n1, uint64_t k2,
                                     uint64_t n2, double* z, double* p_value);

#ifdef __cplusplus
}
#endif

#endif /* DEBATENET_DEBATENET_H_ */
