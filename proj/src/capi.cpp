// Copyright 2026 The Walk2Vec Authors.
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

#include "walk2vec/walk2vec.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "walk2vec/embedding.hpp"
#include "walk2vec/experiments.hpp"
#include "walk2vec/forest.hpp"
#include "walk2vec/generators.hpp"
#include "walk2vec/graph.hpp"
#include "walk2vec/sparse_coding.hpp"
#include "walk2vec/topology.hpp"
#include "walk2vec/walk.hpp"

struct w2v_graph {
  walk2vec::Graph value;
};

struct w2v_dictionary {
  walk2vec::Dictionary value;
};

struct w2v_forest {
  walk2vec::Forest value;
};

struct w2v_grid {
  walk2vec::ExperimentGrid value;
};

struct w2v_report {
  walk2vec::GridReport value;
  std::vector<std::string> failure_messages;
};

namespace {

using namespace walk2vec;

thread_local std::string last_error;

w2v_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return W2V_ERR_INVALID_ARGUMENT;
    case ErrorKind::Generation: return W2V_ERR_GENERATION;
    case ErrorKind::Numerical: return W2V_ERR_NUMERICAL;
    case ErrorKind::Io: return W2V_ERR_IO;
    case ErrorKind::Config: return W2V_ERR_CONFIG;
    case ErrorKind::Internal: return W2V_ERR_INTERNAL;
  }
  return W2V_ERR_INTERNAL;
}

w2v_status fail(w2v_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
w2v_status guarded(Body&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(W2V_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(W2V_ERR_INTERNAL, e.what());
  }
}

#define W2V_REQUIRE(cond, what)                                   \
  do {                                                            \
    if (!(cond)) return fail(W2V_ERR_INVALID_ARGUMENT, (what));   \
  } while (0)

w2v_status emit(const std::vector<double>& values, double* out, size_t capacity, size_t* length) {
  *length = values.size();
  if (out == nullptr && capacity == 0) return W2V_OK;
  if (capacity < values.size()) {
    return fail(W2V_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(capacity) + " values, " +
                                              std::to_string(values.size()) + " needed");
  }
  std::copy(values.begin(), values.end(), out);
  return W2V_OK;
}

WalkMetric metric_of(w2v_metric m) {
  if (m == W2V_METRIC_DISTANCE) return WalkMetric::Distance;
  if (m == W2V_METRIC_SIMILARITY) return WalkMetric::Similarity;
  throw InvalidArgument("unknown metric code " + std::to_string(static_cast<int>(m)));
}

Pooling pooling_of(w2v_pooling p) {
  if (p == W2V_POOL_AVERAGE) return Pooling::Average;
  if (p == W2V_POOL_MAX) return Pooling::Max;
  throw InvalidArgument("unknown pooling code " + std::to_string(static_cast<int>(p)));
}

}  // namespace

extern "C" {

const char* w2v_version(void) { return "0.1.0"; }

const char* w2v_last_error(void) { return last_error.c_str(); }

const char* w2v_status_name(w2v_status status) {
  switch (status) {
    case W2V_OK: return "ok";
    case W2V_ERR_INVALID_ARGUMENT: return "invalid argument";
    case W2V_ERR_GENERATION: return "generation error";
    case W2V_ERR_NUMERICAL: return "numerical error";
    case W2V_ERR_IO: return "i/o error";
    case W2V_ERR_CONFIG: return "configuration error";
    case W2V_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case W2V_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

uint64_t w2v_derive_seed(uint64_t parent, const uint64_t* path, size_t path_length) {
  Seed s{parent};
  for (size_t i = 0; i < path_length; ++i) s = derive_seed(s, {path[i]});
  return s.value;
}

w2v_status w2v_sample_rows(size_t total, size_t take, uint64_t seed, size_t* out, size_t* count) {
  W2V_REQUIRE(out != nullptr && count != nullptr, "null argument");
  return guarded([&] {
    const auto rows = sample_rows(total, take, Seed{seed});
    std::copy(rows.begin(), rows.end(), out);
    *count = rows.size();
    return W2V_OK;
  });
}

w2v_status w2v_graph_generate(const w2v_model_params* params, uint64_t seed, w2v_graph** out) {
  W2V_REQUIRE(params != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    ModelParams mp;
    mp.n = params->n;
    switch (params->model) {
      case W2V_MODEL_ER: mp.variant = ErParams{params->p}; break;
      case W2V_MODEL_SBM: {
        const auto [p_in, p_out] = sbm_params_from(params->p, params->delta);
        mp.variant = SbmParams{p_in, p_out};
        break;
      }
      case W2V_MODEL_CLIQUE: mp.variant = PlantedCliqueParams{params->p, params->k}; break;
      default: return fail(W2V_ERR_INVALID_ARGUMENT, "unknown model code");
    }
    *out = new w2v_graph{generate(mp, Seed{seed})};
    return W2V_OK;
  });
}

w2v_status w2v_graph_from_edges(size_t n, const uint32_t* edges, size_t edge_count, w2v_graph** out) {
  W2V_REQUIRE(out != nullptr && (edges != nullptr || edge_count == 0), "null argument");
  return guarded([&] {
    std::vector<Edge> list(edge_count);
    for (size_t i = 0; i < edge_count; ++i) list[i] = {edges[2 * i], edges[2 * i + 1]};
    *out = new w2v_graph{Graph::from_edge_list(n, list)};
    return W2V_OK;
  });
}

w2v_status w2v_graph_load(const char* path, w2v_graph** out) {
  W2V_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new w2v_graph{load_edge_list(path)};
    return W2V_OK;
  });
}

w2v_status w2v_graph_save(const w2v_graph* graph, const char* path) {
  W2V_REQUIRE(graph != nullptr && path != nullptr, "null argument");
  return guarded([&] {
    save_edge_list(path, graph->value);
    return W2V_OK;
  });
}

size_t w2v_graph_node_count(const w2v_graph* graph) { return graph ? graph->value.node_count() : 0; }
size_t w2v_graph_edge_count(const w2v_graph* graph) { return graph ? graph->value.edge_count() : 0; }
void w2v_graph_free(w2v_graph* graph) { delete graph; }

w2v_status w2v_sbm_params(double p, double delta, double* p_in, double* p_out) {
  W2V_REQUIRE(p_in != nullptr && p_out != nullptr, "null argument");
  return guarded([&] {
    std::tie(*p_in, *p_out) = sbm_params_from(p, delta);
    return W2V_OK;
  });
}

w2v_status w2v_clique_size(double beta, size_t n, size_t* k) {
  W2V_REQUIRE(k != nullptr, "null argument");
  return guarded([&] {
    *k = clique_size(beta, n);
    return W2V_OK;
  });
}

w2v_status w2v_delta_crit(double p, size_t n, double* out) {
  W2V_REQUIRE(out != nullptr, "null argument");
  return guarded([&] {
    *out = delta_crit(p, n);
    return W2V_OK;
  });
}

w2v_status w2v_beta_crit(double p, double* out) {
  W2V_REQUIRE(out != nullptr, "null argument");
  return guarded([&] {
    *out = beta_crit(p);
    return W2V_OK;
  });
}

size_t w2v_walk_feature_dim(size_t tau) { return walk_feature_dim(tau); }

w2v_status w2v_node_features(const w2v_graph* graph, size_t tau, w2v_metric metric, double* out,
                             size_t capacity, size_t* length) {
  W2V_REQUIRE(graph != nullptr && length != nullptr, "null argument");
  return guarded([&] { return emit(node_walk_features(graph->value, tau, metric_of(metric)), out, capacity, length); });
}

w2v_status w2v_embed_walk2vec(const w2v_graph* graph, size_t tau, w2v_metric metric, double* out,
                              size_t capacity, size_t* length) {
  W2V_REQUIRE(graph != nullptr && length != nullptr, "null argument");
  return guarded([&] {
    if (out == nullptr && capacity == 0) {
      *length = walk2vec_dim(tau);
      return W2V_OK;
    }
    return emit(embed_walk2vec(graph->value, tau, metric_of(metric)).values, out, capacity, length);
  });
}

w2v_status w2v_embed_sc(const w2v_graph* graph, const w2v_dictionary* dict, size_t tau, w2v_pooling pooling,
                        w2v_metric metric, double* out, size_t capacity, size_t* length) {
  W2V_REQUIRE(graph != nullptr && dict != nullptr && length != nullptr, "null argument");
  return guarded([&] {
    if (out == nullptr && capacity == 0) {
      *length = dict->value.size();
      return W2V_OK;
    }
    return emit(embed_sc(graph->value, dict->value, tau, pooling_of(pooling), metric_of(metric)).values, out,
                capacity, length);
  });
}

w2v_status w2v_embed_topological(const w2v_graph* graph, double* out, size_t capacity, size_t* length) {
  W2V_REQUIRE(graph != nullptr && length != nullptr, "null argument");
  return guarded([&] {
    if (out == nullptr && capacity == 0) {
      *length = kTopoFeatureCount;
      return W2V_OK;
    }
    const auto topo = topo_features(graph->value);
    return emit(std::vector<double>(topo.begin(), topo.end()), out, capacity, length);
  });
}

void w2v_dict_options_default(w2v_dict_options* options) {
  if (options == nullptr) return;
  const DictLearnOptions d;
  options->atoms = d.atoms;
  options->lambda1 = d.lambda1;
  options->epochs = d.epochs;
  options->batch_size = d.batch_size;
  options->heldout_fraction = d.heldout_fraction;
  options->seed = d.seed.value;
}

w2v_status w2v_dict_learn(const double* features, size_t rows, size_t dim, const w2v_dict_options* options,
                          w2v_dictionary** out, double* heldout_objective) {
  W2V_REQUIRE(features != nullptr && options != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    DictLearnOptions o;
    o.atoms = options->atoms;
    o.lambda1 = options->lambda1;
    o.epochs = options->epochs;
    o.batch_size = options->batch_size;
    o.heldout_fraction = options->heldout_fraction;
    o.seed = Seed{options->seed};
    auto result = dict_learn_with_report(std::span<const double>(features, rows * dim), dim, o);
    if (heldout_objective != nullptr) {
      std::copy(result.heldout_objective.begin(), result.heldout_objective.end(), heldout_objective);
    }
    *out = new w2v_dictionary{std::move(result.dictionary)};
    return W2V_OK;
  });
}

w2v_status w2v_dict_load(const char* path, w2v_dictionary** out) {
  W2V_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new w2v_dictionary{load_dictionary(path)};
    return W2V_OK;
  });
}

w2v_status w2v_dict_save(const w2v_dictionary* dict, const char* path) {
  W2V_REQUIRE(dict != nullptr && path != nullptr, "null argument");
  return guarded([&] {
    save_dictionary(path, dict->value);
    return W2V_OK;
  });
}

size_t w2v_dict_dim(const w2v_dictionary* dict) { return dict ? dict->value.dim() : 0; }
size_t w2v_dict_size(const w2v_dictionary* dict) { return dict ? dict->value.size() : 0; }
double w2v_dict_lambda1(const w2v_dictionary* dict) { return dict ? dict->value.lambda1() : 0.0; }
void w2v_dict_free(w2v_dictionary* dict) { delete dict; }

w2v_status w2v_lasso(const w2v_dictionary* dict, const double* x, size_t dim, double* code, size_t k) {
  W2V_REQUIRE(dict != nullptr && x != nullptr && code != nullptr, "null argument");
  W2V_REQUIRE(k == dict->value.size(), "code length does not match the dictionary size");
  return guarded([&] {
    const auto y = lasso(dict->value, std::span<const double>(x, dim));
    std::copy(y.begin(), y.end(), code);
    return W2V_OK;
  });
}

w2v_status w2v_forest_train(const double* features, const int* labels, size_t rows, size_t dim, size_t trees,
                            uint64_t seed, w2v_forest** out) {
  W2V_REQUIRE(features != nullptr && labels != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    LabeledDataset data;
    for (size_t r = 0; r < rows; ++r) data.add(std::vector<double>(features + r * dim, features + (r + 1) * dim), labels[r]);
    *out = new w2v_forest{train_forest(data, trees, Seed{seed})};
    return W2V_OK;
  });
}

w2v_status w2v_forest_predict(const w2v_forest* forest, const double* x, size_t dim, double* score) {
  W2V_REQUIRE(forest != nullptr && x != nullptr && score != nullptr, "null argument");
  return guarded([&] {
    *score = predict_score(forest->value, std::span<const double>(x, dim));
    return W2V_OK;
  });
}

w2v_status w2v_forest_load(const char* path, w2v_forest** out) {
  W2V_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new w2v_forest{load_forest(path)};
    return W2V_OK;
  });
}

w2v_status w2v_forest_save(const w2v_forest* forest, const char* path) {
  W2V_REQUIRE(forest != nullptr && path != nullptr, "null argument");
  return guarded([&] {
    save_forest(path, forest->value);
    return W2V_OK;
  });
}

size_t w2v_forest_dim(const w2v_forest* forest) { return forest ? forest->value.dim : 0; }
void w2v_forest_free(w2v_forest* forest) { delete forest; }

w2v_status w2v_auc(const double* scores, const int* labels, size_t count, double* out) {
  W2V_REQUIRE(scores != nullptr && labels != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = auc(std::span<const double>(scores, count), std::span<const int>(labels, count));
    return W2V_OK;
  });
}

w2v_status w2v_pca_2d(const double* data, size_t rows, size_t dim, double* out) {
  W2V_REQUIRE(data != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto coords = pca_2d(std::span<const double>(data, rows * dim), dim);
    for (size_t i = 0; i < coords.size(); ++i) {
      out[2 * i] = coords[i][0];
      out[2 * i + 1] = coords[i][1];
    }
    return W2V_OK;
  });
}

w2v_status w2v_grid_load(const char* path, w2v_grid** out) {
  W2V_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new w2v_grid{load_grid(path)};
    return W2V_OK;
  });
}

w2v_status w2v_grid_parse(const char* json, w2v_grid** out) {
  W2V_REQUIRE(json != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new w2v_grid{parse_grid_json(json)};
    return W2V_OK;
  });
}

w2v_status w2v_grid_to_json(const w2v_grid* grid, char* out, size_t capacity, size_t* length) {
  W2V_REQUIRE(grid != nullptr && length != nullptr, "null argument");
  return guarded([&] {
    const std::string text = grid_to_json(grid->value);
    *length = text.size() + 1;
    if (out == nullptr && capacity == 0) return W2V_OK;
    if (capacity < text.size() + 1) return fail(W2V_ERR_BUFFER_TOO_SMALL, "buffer too small for grid JSON");
    std::copy(text.begin(), text.end(), out);
    out[text.size()] = '\0';
    return W2V_OK;
  });
}

size_t w2v_grid_cell_count(const w2v_grid* grid) { return grid ? grid->value.cell_count() : 0; }
void w2v_grid_free(w2v_grid* grid) { delete grid; }

w2v_status w2v_grid_cell(const w2v_grid* grid, size_t index, w2v_cell_info* out) {
  W2V_REQUIRE(grid != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const CellSpec cell = cell_spec(grid->value, index);
    out->p = cell.p;
    out->secondary = cell.secondary;
    out->threshold = grid->value.problem == Problem::ErVsSbm ? delta_crit(cell.p, grid->value.n) : beta_crit(cell.p);
    return W2V_OK;
  });
}

w2v_status w2v_grid_run(const w2v_grid* grid, size_t jobs, w2v_progress_fn progress, void* user,
                        w2v_report** out) {
  W2V_REQUIRE(grid != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const ExperimentGrid& g = grid->value;
    g.validate();
    auto report = std::make_unique<w2v_report>();
    RunOptions options;
    options.jobs = jobs;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const CellSpec cell = cell_spec(g, c);
      bool failed = false;
      try {
        for (auto& r : run_cell(g, cell, options)) report->value.results.push_back(std::move(r));
      } catch (const Error& e) {
        report->value.failures.push_back(CellFailure{cell, e.kind(), e.what()});
        failed = true;
      } catch (const std::exception& e) {
        report->value.failures.push_back(CellFailure{cell, ErrorKind::Internal, e.what()});
        failed = true;
      }
      if (progress != nullptr) progress(user, c, g.cell_count(), failed ? 1 : 0);
    }
    for (const auto& f : report->value.failures) report->failure_messages.push_back(f.message);
    *out = report.release();
    return W2V_OK;
  });
}

size_t w2v_report_result_count(const w2v_report* report) { return report ? report->value.results.size() : 0; }

w2v_status w2v_report_auc(const w2v_report* report, size_t index, double* out) {
  W2V_REQUIRE(report != nullptr && out != nullptr, "null argument");
  W2V_REQUIRE(index < report->value.results.size(), "result index out of range");
  *out = report->value.results[index].auc;
  return W2V_OK;
}

size_t w2v_report_failure_count(const w2v_report* report) { return report ? report->value.failures.size() : 0; }

w2v_status w2v_report_failure(const w2v_report* report, size_t index, w2v_status* status, const char** message) {
  W2V_REQUIRE(report != nullptr && status != nullptr && message != nullptr, "null argument");
  W2V_REQUIRE(index < report->value.failures.size(), "failure index out of range");
  *status = status_of(report->value.failures[index].kind);
  *message = report->failure_messages[index].c_str();
  return W2V_OK;
}

w2v_status w2v_report_write_results(const w2v_report* report, const char* path, int include_timing) {
  W2V_REQUIRE(report != nullptr && path != nullptr, "null argument");
  return guarded([&] {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(std::string("cannot open ") + path + " for writing");
    write_results_csv(os, report->value.results, include_timing != 0);
    if (!os) throw IoError(std::string("write failed: ") + path);
    return W2V_OK;
  });
}

w2v_status w2v_report_write_pca(const w2v_report* report, const char* directory) {
  W2V_REQUIRE(report != nullptr && directory != nullptr, "null argument");
  return guarded([&] {
    std::map<std::string, std::vector<PcaPoint>> by_method;
    for (const auto& r : report->value.results) {
      auto& points = by_method[std::string(to_string(r.method))];
      points.insert(points.end(), r.pca.begin(), r.pca.end());
    }
    for (const auto& [method, points] : by_method) {
      const std::string path = (std::filesystem::path(directory) / ("pca_" + method + ".csv")).string();
      std::ofstream os(path, std::ios::binary);
      if (!os) throw IoError("cannot open " + path + " for writing");
      write_pca_csv(os, points);
      if (!os) throw IoError("write failed: " + path);
    }
    return W2V_OK;
  });
}

void w2v_report_free(w2v_report* report) { delete report; }

}  // extern "C"
