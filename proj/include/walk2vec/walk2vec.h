/* Copyright 2026 The Walk2Vec Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the walk2vec toolkit.
 *
 * Every fallible call returns a w2v_status. On failure, w2v_last_error()
 * returns a message for the calling thread, valid until that thread's next
 * call into the library. Objects are opaque handles released with their
 * matching *_free function; passing NULL to a free function is a no-op.
 *
 * Functions that fill a caller buffer take (out, capacity, length): *length
 * always receives the required element count, and the buffer is written only
 * when capacity is large enough (W2V_ERR_BUFFER_TOO_SMALL otherwise). Pass
 * out = NULL, capacity = 0 to query the length. */

#ifndef WALK2VEC_WALK2VEC_H_
#define WALK2VEC_WALK2VEC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define W2V_API __declspec(dllexport)
#else
#define W2V_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum w2v_status {
  W2V_OK = 0,
  W2V_ERR_INVALID_ARGUMENT = 1,
  W2V_ERR_GENERATION = 2,
  W2V_ERR_NUMERICAL = 3,
  W2V_ERR_IO = 4,
  W2V_ERR_CONFIG = 5,
  W2V_ERR_BUFFER_TOO_SMALL = 6,
  W2V_ERR_INTERNAL = 7
} w2v_status;

typedef enum w2v_metric { W2V_METRIC_DISTANCE = 0, W2V_METRIC_SIMILARITY = 1 } w2v_metric;
typedef enum w2v_pooling { W2V_POOL_AVERAGE = 0, W2V_POOL_MAX = 1 } w2v_pooling;
typedef enum w2v_model { W2V_MODEL_ER = 0, W2V_MODEL_SBM = 1, W2V_MODEL_CLIQUE = 2 } w2v_model;

typedef struct w2v_graph w2v_graph;
typedef struct w2v_dictionary w2v_dictionary;
typedef struct w2v_forest w2v_forest;
typedef struct w2v_grid w2v_grid;
typedef struct w2v_report w2v_report;

W2V_API const char* w2v_version(void);
W2V_API const char* w2v_last_error(void);
W2V_API const char* w2v_status_name(w2v_status status);

/* Child seed of `parent` along an index path. */
W2V_API uint64_t w2v_derive_seed(uint64_t parent, const uint64_t* path, size_t path_length);

/* Writes min(take, total) ascending row indices chosen uniformly without
 * replacement into `out` and their count into *count. */
W2V_API w2v_status w2v_sample_rows(size_t total, size_t take, uint64_t seed, size_t* out, size_t* count);

/* ---- graphs ---- */

/* Model parameters: ER uses p; SBM uses p and delta (p_in = p + delta/2,
 * p_out = p - delta/2); CLIQUE uses p and clique size k. */
typedef struct w2v_model_params {
  w2v_model model;
  size_t n;
  double p;
  double delta;
  size_t k;
} w2v_model_params;

W2V_API w2v_status w2v_graph_generate(const w2v_model_params* params, uint64_t seed, w2v_graph** out);
/* `edges` holds 2 * edge_count node ids (u0, v0, u1, v1, ...). */
W2V_API w2v_status w2v_graph_from_edges(size_t n, const uint32_t* edges, size_t edge_count, w2v_graph** out);
W2V_API w2v_status w2v_graph_load(const char* path, w2v_graph** out);
W2V_API w2v_status w2v_graph_save(const w2v_graph* graph, const char* path);
W2V_API size_t w2v_graph_node_count(const w2v_graph* graph);
W2V_API size_t w2v_graph_edge_count(const w2v_graph* graph);
W2V_API void w2v_graph_free(w2v_graph* graph);

W2V_API w2v_status w2v_sbm_params(double p, double delta, double* p_in, double* p_out);
W2V_API w2v_status w2v_clique_size(double beta, size_t n, size_t* k);
W2V_API w2v_status w2v_delta_crit(double p, size_t n, double* out);
W2V_API w2v_status w2v_beta_crit(double p, double* out);

/* ---- embeddings ---- */

W2V_API size_t w2v_walk_feature_dim(size_t tau);

/* Per-node delta-start walk features, n rows of (tau^2 + tau)/2, row-major. */
W2V_API w2v_status w2v_node_features(const w2v_graph* graph, size_t tau, w2v_metric metric, double* out,
                                     size_t capacity, size_t* length);
W2V_API w2v_status w2v_embed_walk2vec(const w2v_graph* graph, size_t tau, w2v_metric metric, double* out,
                                      size_t capacity, size_t* length);
W2V_API w2v_status w2v_embed_sc(const w2v_graph* graph, const w2v_dictionary* dict, size_t tau,
                                w2v_pooling pooling, w2v_metric metric, double* out, size_t capacity,
                                size_t* length);
/* 26 topological summary features; the graph must be connected. */
W2V_API w2v_status w2v_embed_topological(const w2v_graph* graph, double* out, size_t capacity, size_t* length);

/* ---- dictionaries ---- */

typedef struct w2v_dict_options {
  size_t atoms;
  double lambda1;
  size_t epochs;
  size_t batch_size;
  double heldout_fraction;
  uint64_t seed;
} w2v_dict_options;

/* Defaults: 100 atoms, lambda1 0.15, 5 epochs, batches of 256, 10% held out. */
W2V_API void w2v_dict_options_default(w2v_dict_options* options);

/* `features` is rows x dim, row-major. `heldout_objective`, if not NULL,
 * receives epochs + 1 values. */
W2V_API w2v_status w2v_dict_learn(const double* features, size_t rows, size_t dim,
                                  const w2v_dict_options* options, w2v_dictionary** out,
                                  double* heldout_objective);
W2V_API w2v_status w2v_dict_load(const char* path, w2v_dictionary** out);
W2V_API w2v_status w2v_dict_save(const w2v_dictionary* dict, const char* path);
W2V_API size_t w2v_dict_dim(const w2v_dictionary* dict);
W2V_API size_t w2v_dict_size(const w2v_dictionary* dict);
W2V_API double w2v_dict_lambda1(const w2v_dictionary* dict);
W2V_API void w2v_dict_free(w2v_dictionary* dict);

/* Sparse code of x (length dim) into `code` (length K). */
W2V_API w2v_status w2v_lasso(const w2v_dictionary* dict, const double* x, size_t dim, double* code, size_t k);

/* ---- classifier ---- */

/* `features` is rows x dim, row-major; labels are 0 or 1. */
W2V_API w2v_status w2v_forest_train(const double* features, const int* labels, size_t rows, size_t dim,
                                    size_t trees, uint64_t seed, w2v_forest** out);
W2V_API w2v_status w2v_forest_predict(const w2v_forest* forest, const double* x, size_t dim, double* score);
W2V_API w2v_status w2v_forest_load(const char* path, w2v_forest** out);
W2V_API w2v_status w2v_forest_save(const w2v_forest* forest, const char* path);
W2V_API size_t w2v_forest_dim(const w2v_forest* forest);
W2V_API void w2v_forest_free(w2v_forest* forest);

W2V_API w2v_status w2v_auc(const double* scores, const int* labels, size_t count, double* out);

/* Projects rows x dim data onto its two principal axes; `out` receives
 * rows x 2 values (x0, y0, x1, y1, ...). */
W2V_API w2v_status w2v_pca_2d(const double* data, size_t rows, size_t dim, double* out);

/* ---- experiment grids ---- */

W2V_API w2v_status w2v_grid_load(const char* path, w2v_grid** out);
W2V_API w2v_status w2v_grid_parse(const char* json, w2v_grid** out);
/* Normalized JSON form of the grid. */
W2V_API w2v_status w2v_grid_to_json(const w2v_grid* grid, char* out, size_t capacity, size_t* length);
W2V_API size_t w2v_grid_cell_count(const w2v_grid* grid);
W2V_API void w2v_grid_free(w2v_grid* grid);

typedef struct w2v_cell_info {
  double p;
  double secondary;
  double threshold; /* delta_crit or beta_crit */
} w2v_cell_info;

W2V_API w2v_status w2v_grid_cell(const w2v_grid* grid, size_t index, w2v_cell_info* out);

/* Called after each cell; `failed` is nonzero when the cell raised. */
typedef void (*w2v_progress_fn)(void* user, size_t cell, size_t cell_count, int failed);

/* Runs every cell. Returns W2V_OK when the sweep ran, even if cells failed;
 * inspect w2v_report_failure_count. jobs = 0 reads WALK2VEC_JOBS or uses 1. */
W2V_API w2v_status w2v_grid_run(const w2v_grid* grid, size_t jobs, w2v_progress_fn progress, void* user,
                                w2v_report** out);
W2V_API size_t w2v_report_result_count(const w2v_report* report);
W2V_API w2v_status w2v_report_auc(const w2v_report* report, size_t index, double* out);
W2V_API size_t w2v_report_failure_count(const w2v_report* report);
/* Status and message of failure `index`; the message lives as long as the report. */
W2V_API w2v_status w2v_report_failure(const w2v_report* report, size_t index, w2v_status* status,
                                      const char** message);
/* Results CSV; wall_ms is written as 0 unless include_timing is nonzero. */
W2V_API w2v_status w2v_report_write_results(const w2v_report* report, const char* path, int include_timing);
/* One PCA CSV per method: <directory>/pca_<method>.csv. */
W2V_API w2v_status w2v_report_write_pca(const w2v_report* report, const char* directory);
W2V_API void w2v_report_free(w2v_report* report);

#ifdef __cplusplus
}
#endif

#endif /* WALK2VEC_WALK2VEC_H_ */
