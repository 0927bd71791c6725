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

#include "walk2vec/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "walk2vec/embedding.hpp"
#include "walk2vec/forest.hpp"
#include "walk2vec/generators.hpp"
#include "walk2vec/topology.hpp"

namespace walk2vec {
namespace {

using Json = nlohmann::json;

constexpr std::uint64_t kDictStream = 0x64696374ULL;
constexpr std::uint64_t kForestStream = 0x666f72657374ULL;
constexpr std::uint64_t kCorpusStream = 0x636f72707573ULL;

// Training features of a cell are kept in memory for coding when they fit;
// otherwise they are recomputed. Either way the results are identical.
constexpr std::size_t kFeatureCacheBytes = std::size_t{1} << 30;

[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const Error& e) {
    throw Error(e.kind(), context + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Internal, context + ": " + e.what());
  }
}

std::string describe(const ExperimentGrid& grid, const CellSpec& cell) {
  std::ostringstream os;
  os << "cell " << cell.index << " (p = " << cell.p << ", "
     << (grid.problem == Problem::ErVsSbm ? "delta" : "beta") << " = " << cell.secondary << ")";
  return os.str();
}

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<std::pair<std::string_view, Enum>, N>& table,
                const char* what) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  std::string options;
  for (const auto& [name, value] : table) {
    if (!options.empty()) options += ", ";
    options += name;
  }
  throw ConfigError(std::string("unknown ") + what + " \"" + std::string(text) + "\" (expected one of " +
                    options + ")");
}

constexpr std::array<std::pair<std::string_view, Problem>, 2> kProblems{{
    {"er_vs_sbm", Problem::ErVsSbm},
    {"planted_clique", Problem::PlantedClique},
}};
constexpr std::array<std::pair<std::string_view, Method>, 3> kMethods{{
    {"walk2vec", Method::Walk2Vec},
    {"walk2vec-sc", Method::Walk2VecSC},
    {"topological", Method::Topological},
}};
constexpr std::array<std::pair<std::string_view, Pooling>, 2> kPoolings{{
    {"average", Pooling::Average},
    {"max", Pooling::Max},
}};
constexpr std::array<std::pair<std::string_view, WalkMetric>, 2> kMetrics{{
    {"distance", WalkMetric::Distance},
    {"similarity", WalkMetric::Similarity},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::size_t get_count(const Json& doc, const char* key) {
  const Json& v = doc.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(std::string("field \"") + key + "\": expected a nonnegative integer");
  return v.get<std::size_t>();
}

double get_real(const Json& doc, const char* key) {
  const Json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(std::string("field \"") + key + "\": expected a number");
  return v.get<double>();
}

std::string get_string(const Json& doc, const char* key) {
  const Json& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(std::string("field \"") + key + "\": expected a string");
  return v.get<std::string>();
}

std::vector<double> get_reals(const Json& doc, const char* key) {
  const Json& v = doc.at(key);
  if (!v.is_array()) throw ConfigError(std::string("field \"") + key + "\": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(std::string("field \"") + key + "\"[" + std::to_string(i) + "]: expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

bool is_null_cell(const ExperimentGrid& grid, const CellSpec& cell) {
  if (grid.problem == Problem::ErVsSbm) return cell.secondary == 0.0;
  return clique_size(cell.secondary, grid.n) < 2;
}

}  // namespace

std::string_view to_string(Problem problem) noexcept { return name_of(problem, kProblems); }
std::string_view to_string(Method method) noexcept { return name_of(method, kMethods); }
std::string_view to_string(Pooling pooling) noexcept { return name_of(pooling, kPoolings); }
std::string_view to_string(WalkMetric metric) noexcept { return name_of(metric, kMetrics); }
Problem parse_problem(std::string_view text) { return parse_enum(text, kProblems, "problem"); }
Method parse_method(std::string_view text) { return parse_enum(text, kMethods, "method"); }
Pooling parse_pooling(std::string_view text) { return parse_enum(text, kPoolings, "pooling"); }
WalkMetric parse_metric(std::string_view text) { return parse_enum(text, kMetrics, "metric"); }

double delta_crit(double p, std::size_t n) {
  if (!(p > 0.0) || n == 0) throw InvalidArgument("delta_crit needs p > 0 and n > 0");
  return 2.0 * std::sqrt(p / static_cast<double>(n));
}

double beta_crit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("beta_crit needs 0 < p < 1");
  return std::sqrt(p / (1.0 - p));
}

std::size_t clique_size(double beta, std::size_t n) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be finite and nonnegative");
  return static_cast<std::size_t>(std::llround(beta * std::sqrt(static_cast<double>(n))));
}

std::size_t ExperimentGrid::train_per_class() const noexcept {
  if (graphs_per_class < 2) return 0;
  const auto t = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(graphs_per_class)));
  return std::clamp<std::size_t>(t, 1, graphs_per_class - 1);
}

void ExperimentGrid::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError("field \"" + field + "\": " + why);
  };
  if (n < 4) fail("n", "must be at least 4");
  if (p_values.empty()) fail("p_values", "must not be empty");
  if (secondary_values.empty()) fail("secondary_values", "must not be empty");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail("train_fraction", "must lie in (0, 1)");
  if (graphs_per_class < 4) fail("graphs_per_class", "must be at least 4");
  if (train_per_class() < 2 || test_per_class() < 2) {
    fail("train_fraction", "leaves fewer than 2 graphs per class in a split");
  }
  if (tau < 1) fail("tau", "must be at least 1");
  if (methods.empty()) fail("methods", "must not be empty");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (methods[i] == methods[j]) fail("methods", "lists " + std::string(to_string(methods[i])) + " twice");
    }
  }
  if (atoms < 1) fail("atoms", "must be at least 1");
  if (!(lambda1 >= 0.0) || !std::isfinite(lambda1)) fail("lambda1", "must be finite and nonnegative");
  if (dict_max_features < 1) fail("dict_max_features", "must be at least 1");
  if (trees < 1) fail("trees", "must be at least 1");
  for (std::size_t i = 0; i < p_values.size(); ++i) {
    const double p = p_values[i];
    if (!(p > 0.0 && p < 1.0)) fail("p_values[" + std::to_string(i) + "]", "must lie in (0, 1)");
  }
  for (std::size_t j = 0; j < secondary_values.size(); ++j) {
    const double s = secondary_values[j];
    const std::string field = "secondary_values[" + std::to_string(j) + "]";
    if (!(s >= 0.0) || !std::isfinite(s)) fail(field, "must be finite and nonnegative");
    for (double p : p_values) {
      if (problem == Problem::ErVsSbm) {
        if (p - s / 2.0 < 0.0 || p + s / 2.0 > 1.0) {
          fail(field, "delta = " + format_real(s) + " takes p_in or p_out outside [0, 1] at p = " + format_real(p));
        }
      } else if (clique_size(s, n) > n) {
        fail(field, "beta = " + format_real(s) + " gives a clique larger than n");
      }
    }
  }
}

ExperimentGrid parse_grid_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("grid config line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("grid config must be a JSON object");

  static const std::array<std::string_view, 18> known{
      "problem", "n", "p_values", "secondary_values", "graphs_per_class", "train_fraction",
      "tau", "method", "methods", "pooling", "metric", "atoms", "lambda1", "dict_epochs",
      "dict_max_features", "trees", "seed", "description"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError("unknown field \"" + item.key() + "\"");
    }
  }
  for (const char* required : {"problem", "n", "p_values", "secondary_values"}) {
    if (!doc.contains(required)) throw ConfigError(std::string("missing field \"") + required + "\"");
  }
  if (doc.contains("method") && doc.contains("methods")) {
    throw ConfigError("give either \"method\" or \"methods\", not both");
  }

  ExperimentGrid grid;
  grid.problem = parse_problem(get_string(doc, "problem"));
  grid.n = get_count(doc, "n");
  grid.p_values = get_reals(doc, "p_values");
  grid.secondary_values = get_reals(doc, "secondary_values");
  if (doc.contains("graphs_per_class")) grid.graphs_per_class = get_count(doc, "graphs_per_class");
  if (doc.contains("train_fraction")) grid.train_fraction = get_real(doc, "train_fraction");
  if (doc.contains("tau")) grid.tau = get_count(doc, "tau");
  if (doc.contains("method")) grid.methods = {parse_method(get_string(doc, "method"))};
  if (doc.contains("methods")) {
    const Json& list = doc.at("methods");
    if (!list.is_array()) throw ConfigError("field \"methods\": expected an array of strings");
    grid.methods.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_string()) {
        throw ConfigError("field \"methods\"[" + std::to_string(i) + "]: expected a string");
      }
      grid.methods.push_back(parse_method(list[i].get<std::string>()));
    }
  }
  if (doc.contains("pooling")) grid.pooling = parse_pooling(get_string(doc, "pooling"));
  if (doc.contains("metric")) grid.metric = parse_metric(get_string(doc, "metric"));
  if (doc.contains("atoms")) grid.atoms = get_count(doc, "atoms");
  if (doc.contains("lambda1")) grid.lambda1 = get_real(doc, "lambda1");
  if (doc.contains("dict_epochs")) grid.dict_epochs = get_count(doc, "dict_epochs");
  if (doc.contains("dict_max_features")) grid.dict_max_features = get_count(doc, "dict_max_features");
  if (doc.contains("trees")) grid.trees = get_count(doc, "trees");
  if (doc.contains("seed")) grid.seed = Seed{get_count(doc, "seed")};
  grid.validate();
  return grid;
}

ExperimentGrid load_grid(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  try {
    return parse_grid_json(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string grid_to_json(const ExperimentGrid& grid) {
  Json doc;
  doc["problem"] = to_string(grid.problem);
  doc["n"] = grid.n;
  doc["p_values"] = grid.p_values;
  doc["secondary_values"] = grid.secondary_values;
  doc["graphs_per_class"] = grid.graphs_per_class;
  doc["train_fraction"] = grid.train_fraction;
  doc["tau"] = grid.tau;
  Json methods = Json::array();
  for (Method m : grid.methods) methods.push_back(to_string(m));
  doc["methods"] = methods;
  doc["pooling"] = to_string(grid.pooling);
  doc["metric"] = to_string(grid.metric);
  doc["atoms"] = grid.atoms;
  doc["lambda1"] = grid.lambda1;
  doc["dict_epochs"] = grid.dict_epochs;
  doc["dict_max_features"] = grid.dict_max_features;
  doc["trees"] = grid.trees;
  doc["seed"] = grid.seed.value;
  return doc.dump(2);
}

CellSpec cell_spec(const ExperimentGrid& grid, std::size_t index) {
  if (index >= grid.cell_count()) throw InvalidArgument("cell index out of range");
  const std::size_t per_row = grid.secondary_values.size();
  return CellSpec{index, grid.p_values[index / per_row], grid.secondary_values[index % per_row]};
}

Seed instance_seed(const ExperimentGrid& grid, std::size_t cell, int cls, std::size_t instance) {
  return derive_seed(grid.seed, {cell, static_cast<std::uint64_t>(cls), instance});
}

Graph cell_graph(const ExperimentGrid& grid, const CellSpec& cell, int cls, std::size_t instance) {
  const Seed seed = instance_seed(grid, cell.index, cls, instance);
  if (cls == 0 || is_null_cell(grid, cell)) return gen_er(grid.n, cell.p, seed);
  if (grid.problem == Problem::ErVsSbm) {
    const auto [p_in, p_out] = sbm_params_from(cell.p, cell.secondary);
    return gen_sbm(grid.n, p_in, p_out, seed);
  }
  return gen_planted_clique(grid.n, cell.p, clique_size(cell.secondary, grid.n), seed);
}

std::vector<std::size_t> sample_rows(std::size_t total, std::size_t take, Seed seed) {
  if (take >= total) {
    std::vector<std::size_t> all(total);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < take; ++i) std::swap(idx[i], idx[i + rng.below(total - i)]);
  idx.resize(take);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::size_t resolve_jobs(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WALK2VEC_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex guard;
  std::size_t failed_at = count;
  std::exception_ptr failure;
  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard lock(guard);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs - 1);
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<CellResult> run_cell(const ExperimentGrid& grid, const CellSpec& cell, const RunOptions& options) {
  grid.validate();
  const auto started = std::chrono::steady_clock::now();
  const std::string context = describe(grid, cell);
  const std::size_t jobs = resolve_jobs(options.jobs);
  const std::size_t per_class = grid.graphs_per_class;
  const std::size_t n_train = grid.train_per_class();
  const std::size_t total = 2 * per_class;
  const std::size_t d = walk_feature_dim(grid.tau);

  // Graph g of the cell: class g / per_class, instance g % per_class.
  auto graph_of = [&](std::size_t g) {
    return cell_graph(grid, cell, static_cast<int>(g / per_class), g % per_class);
  };
  auto is_train = [&](std::size_t g) { return g % per_class < n_train; };
  std::vector<std::size_t> train_ids;
  std::vector<std::size_t> test_ids;
  for (std::size_t g = 0; g < total; ++g) (is_train(g) ? train_ids : test_ids).push_back(g);

  const bool want_sc =
      std::find(grid.methods.begin(), grid.methods.end(), Method::Walk2VecSC) != grid.methods.end();
  std::array<std::vector<std::vector<double>>, 3> embeddings;
  for (auto& e : embeddings) e.resize(total);
  auto slot = [](Method m) { return static_cast<std::size_t>(m); };

  auto embed_plain = [&](std::size_t g, const Graph& graph) {
    for (Method m : grid.methods) {
      if (m == Method::Walk2Vec) {
        embeddings[slot(m)][g] = embed_walk2vec(graph, grid.tau, grid.metric).values;
      } else if (m == Method::Topological) {
        const auto topo = topo_features(graph);
        embeddings[slot(m)][g].assign(topo.begin(), topo.end());
      }
    }
  };

  try {
    std::optional<Dictionary> dict;
    std::vector<std::vector<double>> cached(want_sc ? total : 0);

    // Training split first: the dictionary sees only these graphs.
    if (want_sc) {
      const std::size_t rows_total = train_ids.size() * grid.n;
      const auto picked = sample_rows(rows_total, grid.dict_max_features,
                                      derive_seed(grid.seed, {cell.index, kCorpusStream}));
      const bool cache = rows_total * d * sizeof(double) <= kFeatureCacheBytes;
      std::vector<double> corpus(picked.size() * d);
      parallel_for(train_ids.size(), jobs, [&](std::size_t t) {
        const std::size_t g = train_ids[t];
        const Graph graph = graph_of(g);
        embed_plain(g, graph);
        auto features = node_walk_features(graph, grid.tau, grid.metric);
        const std::size_t first = t * grid.n;
        auto it = std::lower_bound(picked.begin(), picked.end(), first);
        for (; it != picked.end() && *it < first + grid.n; ++it) {
          const std::size_t row = *it - first;
          const std::size_t dst = static_cast<std::size_t>(it - picked.begin());
          std::copy_n(features.begin() + static_cast<std::ptrdiff_t>(row * d), d,
                      corpus.begin() + static_cast<std::ptrdiff_t>(dst * d));
        }
        if (cache) cached[g] = std::move(features);
      });
      DictLearnOptions dopt;
      dopt.atoms = grid.atoms;
      dopt.lambda1 = grid.lambda1;
      dopt.epochs = grid.dict_epochs;
      dopt.seed = derive_seed(grid.seed, {cell.index, kDictStream});
      dict.emplace(dict_learn_with_report(corpus, d, dopt).dictionary);
    }

    parallel_for(total, jobs, [&](std::size_t g) {
      // training graphs were already embedded by the plain methods above
      const bool seen = want_sc && is_train(g);
      std::optional<Graph> graph;
      if (!seen) {
        graph.emplace(graph_of(g));
        embed_plain(g, *graph);
      }
      if (!want_sc) return;
      std::vector<double> features = std::move(cached[g]);
      if (features.empty()) {
        if (!graph) graph.emplace(graph_of(g));
        features = node_walk_features(*graph, grid.tau, grid.metric);
      }
      embeddings[slot(Method::Walk2VecSC)][g] = encode_and_pool(features, *dict, grid.pooling);
    });
  } catch (...) {
    rethrow_with_context(context);
  }

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  const double threshold =
      grid.problem == Problem::ErVsSbm ? delta_crit(cell.p, grid.n) : beta_crit(cell.p);

  std::vector<CellResult> results;
  for (Method m : grid.methods) {
    const auto& emb = embeddings[slot(m)];
    CellResult r;
    r.problem = grid.problem;
    r.method = m;
    r.n = grid.n;
    r.p = cell.p;
    r.secondary = cell.secondary;
    r.threshold = threshold;
    r.n_train = train_ids.size();
    r.n_test = test_ids.size();
    r.seed = grid.seed;
    r.wall_ms = wall_ms;
    try {
      LabeledDataset train;
      for (std::size_t g : train_ids) train.add(emb[g], static_cast<int>(g / per_class));
      const Forest forest =
          train_forest(train, grid.trees, derive_seed(grid.seed, {cell.index, kForestStream, slot(m)}));
      std::vector<double> scores;
      std::vector<int> labels;
      for (std::size_t g : test_ids) {
        scores.push_back(predict_score(forest, emb[g]));
        labels.push_back(static_cast<int>(g / per_class));
      }
      r.auc = auc(scores, labels);

      std::vector<double> flat;
      flat.reserve(total * emb.front().size());
      for (const auto& row : emb) flat.insert(flat.end(), row.begin(), row.end());
      const auto coords = pca_2d(flat, emb.front().size());
      for (std::size_t g = 0; g < total; ++g) {
        r.pca.push_back(PcaPoint{std::to_string(cell.index) + "-" + std::to_string(g), static_cast<int>(g / per_class), cell.secondary,
                                 coords[g][0], coords[g][1]});
      }
    } catch (...) {
      rethrow_with_context(context + ", method " + std::string(to_string(m)));
    }
    results.push_back(std::move(r));
  }
  return results;
}

GridReport run_grid(const ExperimentGrid& grid, const RunOptions& options) {
  grid.validate();
  GridReport report;
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const CellSpec cell = cell_spec(grid, c);
    try {
      auto results = run_cell(grid, cell, options);
      if (options.on_cell) options.on_cell(cell, results);
      for (auto& r : results) report.results.push_back(std::move(r));
    } catch (const Error& e) {
      report.failures.push_back(CellFailure{cell, e.kind(), e.what()});
    } catch (const std::exception& e) {
      report.failures.push_back(CellFailure{cell, ErrorKind::Internal, e.what()});
    }
  }
  return report;
}

std::vector<std::array<double, 2>> pca_2d(std::span<const double> rows, std::size_t dim) {
  if (dim < 2) throw InvalidArgument("pca_2d needs dimension >= 2");
  if (rows.size() % dim != 0) throw InvalidArgument("pca_2d input is not a whole number of rows");
  const std::size_t count = rows.size() / dim;
  if (count < 3) throw InvalidArgument("pca_2d needs at least 3 vectors");
  for (double v : rows) {
    if (!std::isfinite(v)) throw NumericalError("pca_2d input contains a non-finite value");
  }

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> x(rows.data(), static_cast<Eigen::Index>(count),
                                     static_cast<Eigen::Index>(dim));
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centred = x.rowwise() - mean;
  std::vector<std::array<double, 2>> out(count, {0.0, 0.0});
  if (centred.cwiseAbs().maxCoeff() == 0.0) return out;

  const Eigen::MatrixXd cov = centred.transpose() * centred / static_cast<double>(count - 1);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericalError("pca_2d eigendecomposition failed");
  // eigenvalues ascend; take the last two columns
  Eigen::MatrixXd axes(static_cast<Eigen::Index>(dim), 2);
  for (int c = 0; c < 2; ++c) {
    Eigen::VectorXd v = eig.eigenvectors().col(static_cast<Eigen::Index>(dim) - 1 - c);
    Eigen::Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    if (v[at] < 0.0) v = -v;
    axes.col(c) = v;
  }
  const Eigen::MatrixXd proj = centred * axes;
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = {proj(static_cast<Eigen::Index>(i), 0), proj(static_cast<Eigen::Index>(i), 1)};
  }
  return out;
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_results_csv(std::ostream& os, std::span<const CellResult> results, bool include_timing) {
  os << "problem,method,n,p,secondary,threshold,auc,n_train,n_test,seed,wall_ms\n";
  for (const auto& r : results) {
    os << to_string(r.problem) << ',' << to_string(r.method) << ',' << r.n << ',' << format_real(r.p) << ','
       << format_real(r.secondary) << ',' << format_real(r.threshold) << ',' << format_real(r.auc) << ','
       << r.n_train << ',' << r.n_test << ',' << r.seed.value << ','
       << format_real(include_timing ? r.wall_ms : 0.0) << '\n';
  }
}

void write_pca_csv(std::ostream& os, std::span<const PcaPoint> points) {
  os << "graph_id,class,param,x,y\n";
  for (const auto& pt : points) {
    os << pt.graph_id << ',' << pt.cls << ',' << format_real(pt.param) << ',' << format_real(pt.x) << ','
       << format_real(pt.y) << '\n';
  }
}

}  // namespace walk2vec
