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

// walk2vec command-line front end. Talks to the toolkit only through the C
// API in walk2vec/walk2vec.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "walk2vec/walk2vec.h"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

// Process exit codes.
enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kConfig = 2,
  kGeneration = 3,
  kNumerical = 4,
  kIo = 5,
  kInvalid = 6,
};

int exit_code(w2v_status status) {
  switch (status) {
    case W2V_OK: return kOk;
    case W2V_ERR_CONFIG: return kConfig;
    case W2V_ERR_GENERATION: return kGeneration;
    case W2V_ERR_NUMERICAL: return kNumerical;
    case W2V_ERR_IO: return kIo;
    case W2V_ERR_INVALID_ARGUMENT: return kInvalid;
    default: return kInternal;
  }
}

// Failure carrying the process exit code.
struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

void check(w2v_status status, const std::string& context = {}) {
  if (status == W2V_OK) return;
  std::string msg = w2v_last_error();
  if (!context.empty()) msg = context + ": " + msg;
  throw CliError(exit_code(status), msg);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using GraphPtr = std::unique_ptr<w2v_graph, Deleter<w2v_graph, w2v_graph_free>>;
using DictPtr = std::unique_ptr<w2v_dictionary, Deleter<w2v_dictionary, w2v_dict_free>>;
using ForestPtr = std::unique_ptr<w2v_forest, Deleter<w2v_forest, w2v_forest_free>>;
using GridPtr = std::unique_ptr<w2v_grid, Deleter<w2v_grid, w2v_grid_free>>;
using ReportPtr = std::unique_ptr<w2v_report, Deleter<w2v_report, w2v_report_free>>;

GraphPtr load_graph(const std::string& path) {
  w2v_graph* g = nullptr;
  check(w2v_graph_load(path.c_str(), &g), path);
  return GraphPtr(g);
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::size_t jobs_or_env(std::size_t jobs) {
  if (jobs > 0) return jobs;
  if (const char* env = std::getenv("WALK2VEC_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads; rethrows the
// lowest-index failure.
template <typename Fn>
void for_each_index(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::size_t failed_at = count;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard lock(guard);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Expands directories into their *.txt edge-list files, sorted by name.
std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(in);
    }
  }
  if (out.empty()) throw CliError(kInvalid, "no input graphs");
  return out;
}

// Every output directory carries manifest.json with one entry per output it
// holds, keyed by the output's name.
void record_manifest(const fs::path& dir, const std::string& key, Json entry) {
  const fs::path path = dir / "manifest.json";
  Json doc = {{"toolkit", "walk2vec"}, {"runs", Json::object()}};
  if (fs::exists(path)) {
    std::ifstream is(path);
    try {
      doc = Json::parse(is);
    } catch (const Json::exception&) {
      throw CliError(kIo, path.string() + " exists but is not valid JSON");
    }
  }
  entry["toolkit_version"] = w2v_version();
  doc["runs"][key] = std::move(entry);
  std::ofstream os(path);
  os << doc.dump(2) << '\n';
  if (!os) throw CliError(kIo, "cannot write " + path.string());
}

fs::path ensure_parent(const std::string& file) {
  fs::path dir = fs::path(file).parent_path();
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  return dir;
}

struct EmbeddingTable {
  std::vector<std::string> ids;
  std::vector<double> values;  // row-major
  std::size_t dim = 0;
};

void write_embeddings(const std::string& path, const EmbeddingTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw CliError(kIo, "cannot open " + path + " for writing");
  os << "graph_id";
  for (std::size_t j = 0; j < table.dim; ++j) os << ",x" << j;
  os << '\n';
  for (std::size_t r = 0; r < table.ids.size(); ++r) {
    os << table.ids[r];
    for (std::size_t j = 0; j < table.dim; ++j) os << ',' << real(table.values[r * table.dim + j]);
    os << '\n';
  }
  if (!os) throw CliError(kIo, "write failed: " + path);
}

EmbeddingTable read_embeddings(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CliError(kIo, "cannot open " + path);
  EmbeddingTable table;
  std::string line;
  if (!std::getline(is, line)) throw CliError(kIo, path + ": empty file");
  table.dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  if (table.dim == 0) throw CliError(kIo, path + ": header has no coordinate columns");
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    table.ids.push_back(cell);
    std::size_t got = 0;
    while (std::getline(row, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw CliError(kIo, path + " line " + std::to_string(line_no) + ": bad number \"" + cell + "\"");
      }
      table.values.push_back(v);
      ++got;
    }
    if (got != table.dim) {
      throw CliError(kIo, path + " line " + std::to_string(line_no) + ": expected " + std::to_string(table.dim) +
                              " values, found " + std::to_string(got));
    }
  }
  return table;
}

w2v_metric metric_of(const std::string& name) {
  return name == "similarity" ? W2V_METRIC_SIMILARITY : W2V_METRIC_DISTANCE;
}

// ---- gen ----

struct GenArgs {
  std::string model = "er";
  std::size_t n = 1000;
  double p = 0.05;
  double delta = 0.0;
  std::optional<std::size_t> k;
  std::optional<double> beta;
  std::size_t count = 1;
  std::uint64_t seed = 1;
  std::string out = "graphs";
};

int cmd_gen(const GenArgs& a) {
  const std::string started = utc_now();
  w2v_model_params params{};
  params.n = a.n;
  params.p = a.p;
  Json recorded = {{"model", a.model}, {"n", a.n}, {"p", a.p}, {"count", a.count}, {"seed", a.seed}};
  if (a.model == "er") {
    params.model = W2V_MODEL_ER;
  } else if (a.model == "sbm") {
    params.model = W2V_MODEL_SBM;
    params.delta = a.delta;
    double p_in = 0.0;
    double p_out = 0.0;
    check(w2v_sbm_params(a.p, a.delta, &p_in, &p_out));
    recorded["delta"] = a.delta;
    recorded["p_in"] = p_in;
    recorded["p_out"] = p_out;
  } else {
    params.model = W2V_MODEL_CLIQUE;
    if (a.k.has_value() == a.beta.has_value()) throw CliError(kInvalid, "clique model needs exactly one of --k, --beta");
    std::size_t k = a.k.value_or(0);
    if (a.beta) check(w2v_clique_size(*a.beta, a.n, &k));
    params.k = k;
    recorded["k"] = k;
    if (a.beta) recorded["beta"] = *a.beta;
  }

  fs::create_directories(a.out);
  std::vector<std::string> files;
  for (std::size_t i = 0; i < a.count; ++i) {
    const std::uint64_t path[] = {i};
    const std::uint64_t seed = w2v_derive_seed(a.seed, path, 1);
    w2v_graph* g = nullptr;
    check(w2v_graph_generate(&params, seed, &g), "instance " + std::to_string(i));
    GraphPtr owned(g);
    char name[32];
    std::snprintf(name, sizeof name, "graph_%04zu.txt", i);
    check(w2v_graph_save(owned.get(), (fs::path(a.out) / name).string().c_str()));
    files.emplace_back(name);
  }
  record_manifest(a.out, "gen",
                  {{"command", "gen"},
                   {"parameters", recorded},
                   {"seed", a.seed},
                   {"instance_seeds", "derive_seed(seed, [i]) for instance i"},
                   {"outputs", files},
                   {"started", started},
                   {"finished", utc_now()}});
  std::cout << "wrote " << files.size() << " graphs to " << a.out << '\n';
  return kOk;
}

// ---- embed ----

struct EmbedArgs {
  std::string method = "walk2vec";
  std::size_t tau = 15;
  std::string metric = "distance";
  std::string dict;
  std::string pool = "average";
  std::string out = "embeddings.csv";
  std::size_t jobs = 0;
  std::vector<std::string> inputs;
};

int cmd_embed(const EmbedArgs& a) {
  const std::string started = utc_now();
  const auto files = expand_inputs(a.inputs);
  DictPtr dict;
  if (a.method == "sc") {
    if (a.dict.empty()) throw CliError(kInvalid, "--method sc needs --dict");
    w2v_dictionary* d = nullptr;
    check(w2v_dict_load(a.dict.c_str(), &d), a.dict);
    dict.reset(d);
    if (w2v_dict_dim(d) != w2v_walk_feature_dim(a.tau)) {
      throw CliError(kInvalid, "dictionary dimension " + std::to_string(w2v_dict_dim(d)) + " does not match tau = " +
                                   std::to_string(a.tau) + " (needs " +
                                   std::to_string(w2v_walk_feature_dim(a.tau)) + ")");
    }
  }
  const w2v_metric metric = metric_of(a.metric);
  const w2v_pooling pooling = a.pool == "max" ? W2V_POOL_MAX : W2V_POOL_AVERAGE;

  std::vector<std::vector<double>> rows(files.size());
  for_each_index(files.size(), jobs_or_env(a.jobs), [&](std::size_t i) {
    const GraphPtr g = load_graph(files[i]);
    std::size_t len = 0;
    auto run = [&](auto&& call) {
      check(call(nullptr, 0, &len), files[i]);
      rows[i].resize(len);
      check(call(rows[i].data(), len, &len), files[i]);
    };
    if (a.method == "walk2vec") {
      run([&](double* o, std::size_t c, std::size_t* l) { return w2v_embed_walk2vec(g.get(), a.tau, metric, o, c, l); });
    } else if (a.method == "sc") {
      run([&](double* o, std::size_t c, std::size_t* l) {
        return w2v_embed_sc(g.get(), dict.get(), a.tau, pooling, metric, o, c, l);
      });
    } else {
      run([&](double* o, std::size_t c, std::size_t* l) { return w2v_embed_topological(g.get(), o, c, l); });
    }
  });

  EmbeddingTable table;
  table.dim = rows.front().size();
  for (std::size_t i = 0; i < files.size(); ++i) {
    table.ids.push_back(fs::path(files[i]).stem().string());
    table.values.insert(table.values.end(), rows[i].begin(), rows[i].end());
  }
  const fs::path dir = ensure_parent(a.out);
  write_embeddings(a.out, table);
  Json params = {{"method", a.method}, {"tau", a.tau}, {"metric", a.metric}};
  if (a.method == "sc") {
    params["dict"] = a.dict;
    params["pool"] = a.pool;
  }
  record_manifest(dir, fs::path(a.out).filename().string(),
                  {{"command", "embed"},
                   {"parameters", params},
                   {"inputs", files},
                   {"outputs", {a.out}},
                   {"started", started},
                   {"finished", utc_now()}});
  std::cout << "wrote " << files.size() << " x " << table.dim << " embeddings to " << a.out << '\n';
  return kOk;
}

// ---- train-dict ----

struct TrainDictArgs {
  std::size_t tau = 15;
  std::string metric = "distance";
  std::size_t atoms = 100;
  double lambda1 = 0.15;
  std::size_t epochs = 5;
  std::size_t batch = 256;
  double heldout = 0.1;
  std::size_t max_features = 50000;
  std::uint64_t seed = 1;
  std::string out = "dictionary.txt";
  std::size_t jobs = 0;
  std::vector<std::string> inputs;
};

int cmd_train_dict(const TrainDictArgs& a) {
  const std::string started = utc_now();
  const auto files = expand_inputs(a.inputs);
  const std::size_t d = w2v_walk_feature_dim(a.tau);
  std::vector<std::vector<double>> per_graph(files.size());
  for_each_index(files.size(), jobs_or_env(a.jobs), [&](std::size_t i) {
    const GraphPtr g = load_graph(files[i]);
    std::size_t len = 0;
    check(w2v_node_features(g.get(), a.tau, metric_of(a.metric), nullptr, 0, &len), files[i]);
    per_graph[i].resize(len);
    check(w2v_node_features(g.get(), a.tau, metric_of(a.metric), per_graph[i].data(), len, &len), files[i]);
  });
  std::vector<std::size_t> first_row(files.size() + 1, 0);
  for (std::size_t i = 0; i < files.size(); ++i) first_row[i + 1] = first_row[i] + per_graph[i].size() / d;
  const std::size_t total = first_row.back();

  std::vector<std::size_t> picked(std::min(total, a.max_features));
  std::size_t count = 0;
  const std::uint64_t stream[] = {0x636f72707573ULL};
  check(w2v_sample_rows(total, a.max_features, w2v_derive_seed(a.seed, stream, 1), picked.data(), &count));
  std::vector<double> corpus;
  corpus.reserve(count * d);
  std::size_t graph = 0;
  for (std::size_t r : picked) {
    while (r >= first_row[graph + 1]) ++graph;
    const double* src = per_graph[graph].data() + (r - first_row[graph]) * d;
    corpus.insert(corpus.end(), src, src + d);
  }
  per_graph.clear();

  w2v_dict_options options;
  w2v_dict_options_default(&options);
  options.atoms = a.atoms;
  options.lambda1 = a.lambda1;
  options.epochs = a.epochs;
  options.batch_size = a.batch;
  options.heldout_fraction = a.heldout;
  options.seed = a.seed;
  std::vector<double> heldout(a.epochs + 1);
  w2v_dictionary* dict = nullptr;
  check(w2v_dict_learn(corpus.data(), count, d, &options, &dict, heldout.data()));
  const DictPtr owned(dict);
  const fs::path dir = ensure_parent(a.out);
  check(w2v_dict_save(dict, a.out.c_str()));
  for (std::size_t e = 0; e < heldout.size(); ++e) {
    std::cerr << "held-out objective after epoch " << e << ": " << real(heldout[e]) << '\n';
  }
  record_manifest(dir, fs::path(a.out).filename().string(),
                  {{"command", "train-dict"},
                   {"parameters",
                    {{"tau", a.tau},
                     {"metric", a.metric},
                     {"atoms", a.atoms},
                     {"lambda1", a.lambda1},
                     {"epochs", a.epochs},
                     {"batch", a.batch},
                     {"heldout_fraction", a.heldout},
                     {"max_features", a.max_features}}},
                   {"seed", a.seed},
                   {"inputs", files},
                   {"training_rows", count},
                   {"heldout_objective", heldout},
                   {"outputs", {a.out}},
                   {"started", started},
                   {"finished", utc_now()}});
  std::cout << "wrote dictionary (" << d << " x " << a.atoms << ") to " << a.out << '\n';
  return kOk;
}

// ---- classify ----

struct ClassifyArgs {
  std::string train0;
  std::string train1;
  std::string test0;
  std::string test1;
  std::string model_in;
  std::string model_out;
  std::string scores_out;
  std::size_t trees = 100;
  std::uint64_t seed = 1;
};

int cmd_classify(const ClassifyArgs& a) {
  const std::string started = utc_now();
  ForestPtr forest;
  if (!a.model_in.empty()) {
    w2v_forest* f = nullptr;
    check(w2v_forest_load(a.model_in.c_str(), &f), a.model_in);
    forest.reset(f);
  } else {
    if (a.train0.empty() || a.train1.empty()) throw CliError(kInvalid, "need --train0 and --train1, or --model");
    const auto t0 = read_embeddings(a.train0);
    const auto t1 = read_embeddings(a.train1);
    if (t0.dim != t1.dim) throw CliError(kInvalid, "training files have different dimensions");
    std::vector<double> x = t0.values;
    x.insert(x.end(), t1.values.begin(), t1.values.end());
    std::vector<int> y(t0.ids.size(), 0);
    y.resize(t0.ids.size() + t1.ids.size(), 1);
    w2v_forest* f = nullptr;
    check(w2v_forest_train(x.data(), y.data(), y.size(), t0.dim, a.trees, a.seed, &f));
    forest.reset(f);
    if (!a.model_out.empty()) {
      ensure_parent(a.model_out);
      check(w2v_forest_save(f, a.model_out.c_str()));
    }
  }

  std::optional<double> auc;
  if (!a.test0.empty() || !a.test1.empty()) {
    if (a.test0.empty() || a.test1.empty()) throw CliError(kInvalid, "need both --test0 and --test1");
    const auto s0 = read_embeddings(a.test0);
    const auto s1 = read_embeddings(a.test1);
    std::vector<double> scores;
    std::vector<int> labels;
    std::vector<std::string> ids;
    int cls = 0;
    for (const auto* t : {&s0, &s1}) {
      for (std::size_t r = 0; r < t->ids.size(); ++r) {
        double s = 0.0;
        check(w2v_forest_predict(forest.get(), t->values.data() + r * t->dim, t->dim, &s), t->ids[r]);
        scores.push_back(s);
        labels.push_back(cls);
        ids.push_back(t->ids[r]);
      }
      ++cls;
    }
    double value = 0.0;
    check(w2v_auc(scores.data(), labels.data(), scores.size(), &value));
    auc = value;
    if (!a.scores_out.empty()) {
      ensure_parent(a.scores_out);
      std::ofstream os(a.scores_out, std::ios::binary);
      os << "graph_id,class,score\n";
      for (std::size_t i = 0; i < scores.size(); ++i) os << ids[i] << ',' << labels[i] << ',' << real(scores[i]) << '\n';
      if (!os) throw CliError(kIo, "cannot write " + a.scores_out);
    }
    std::cout << "auc " << real(value) << '\n';
  }

  std::vector<std::string> outputs;
  if (!a.model_out.empty()) outputs.push_back(a.model_out);
  if (!a.scores_out.empty()) outputs.push_back(a.scores_out);
  Json entry = {{"command", "classify"},
                {"parameters",
                 {{"train0", a.train0},
                  {"train1", a.train1},
                  {"test0", a.test0},
                  {"test1", a.test1},
                  {"model", a.model_in},
                  {"trees", a.trees}}},
                {"seed", a.seed},
                {"outputs", outputs},
                {"started", started},
                {"finished", utc_now()}};
  if (auc) entry["auc"] = *auc;
  for (const auto& out : outputs) record_manifest(ensure_parent(out), fs::path(out).filename().string(), entry);
  return kOk;
}

// ---- sweep ----

struct SweepArgs {
  std::string config;
  std::string out = "sweep";
  std::size_t jobs = 0;
  bool threshold_only = false;
  bool timing = false;
};

int cmd_sweep(const SweepArgs& a) {
  const std::string started = utc_now();
  w2v_grid* raw = nullptr;
  check(w2v_grid_load(a.config.c_str(), &raw));
  const GridPtr grid(raw);
  const std::size_t cells = w2v_grid_cell_count(raw);

  std::size_t len = 0;
  check(w2v_grid_to_json(raw, nullptr, 0, &len));
  std::string grid_json(len, '\0');
  check(w2v_grid_to_json(raw, grid_json.data(), len, &len));
  grid_json.resize(len - 1);
  const Json grid_doc = Json::parse(grid_json);
  const bool clique = grid_doc["problem"] == "planted_clique";

  if (a.threshold_only) {
    std::cout << "p," << (clique ? "beta" : "delta") << ',' << (clique ? "beta_crit" : "delta_crit") << '\n';
    for (std::size_t c = 0; c < cells; ++c) {
      w2v_cell_info info{};
      check(w2v_grid_cell(raw, c, &info));
      std::cout << real(info.p) << ',' << real(info.secondary) << ',' << real(info.threshold) << '\n';
    }
    return kOk;
  }

  fs::create_directories(a.out);
  auto progress = [](void* user, std::size_t cell, std::size_t count, int failed) {
    (void)user;
    std::cerr << "cell " << cell + 1 << "/" << count << (failed ? " FAILED" : " done") << '\n';
  };
  w2v_report* rep = nullptr;
  check(w2v_grid_run(raw, jobs_or_env(a.jobs), progress, nullptr, &rep));
  const ReportPtr report(rep);

  const std::string results = (fs::path(a.out) / "results.csv").string();
  check(w2v_report_write_results(rep, results.c_str(), a.timing ? 1 : 0));
  check(w2v_report_write_pca(rep, a.out.c_str()));
  std::vector<std::string> outputs{"results.csv"};
  for (const auto& m : grid_doc["methods"]) outputs.push_back("pca_" + m.get<std::string>() + ".csv");

  Json failures = Json::array();
  int code = kOk;
  for (std::size_t i = 0; i < w2v_report_failure_count(rep); ++i) {
    w2v_status status = W2V_OK;
    const char* message = nullptr;
    check(w2v_report_failure(rep, i, &status, &message));
    std::cerr << "error: " << message << '\n';
    failures.push_back({{"status", w2v_status_name(status)}, {"message", message}});
    if (code == kOk) code = exit_code(status);
  }
  record_manifest(a.out, "sweep",
                  {{"command", "sweep"},
                   {"config", a.config},
                   {"grid", grid_doc},
                   {"seed", grid_doc["seed"]},
                   {"timing", a.timing},
                   {"outputs", outputs},
                   {"failures", failures},
                   {"started", started},
                   {"finished", utc_now()}});
  std::cout << "wrote " << w2v_report_result_count(rep) << " results to " << results << '\n';
  return code;
}

// ---- pca ----

struct PcaArgs {
  std::vector<std::string> inputs;
  double param = 0.0;
  std::string out = "pca.csv";
};

int cmd_pca(const PcaArgs& a) {
  const std::string started = utc_now();
  EmbeddingTable all;
  std::vector<int> classes;
  for (std::size_t c = 0; c < a.inputs.size(); ++c) {
    auto t = read_embeddings(a.inputs[c]);
    if (all.dim == 0) all.dim = t.dim;
    if (t.dim != all.dim) throw CliError(kInvalid, a.inputs[c] + ": dimension differs from the first input");
    all.ids.insert(all.ids.end(), t.ids.begin(), t.ids.end());
    all.values.insert(all.values.end(), t.values.begin(), t.values.end());
    classes.resize(all.ids.size(), static_cast<int>(c));
  }
  std::vector<double> xy(2 * all.ids.size());
  check(w2v_pca_2d(all.values.data(), all.ids.size(), all.dim, xy.data()));
  const fs::path dir = ensure_parent(a.out);
  std::ofstream os(a.out, std::ios::binary);
  os << "graph_id,class,param,x,y\n";
  for (std::size_t i = 0; i < all.ids.size(); ++i) {
    os << all.ids[i] << ',' << classes[i] << ',' << real(a.param) << ',' << real(xy[2 * i]) << ','
       << real(xy[2 * i + 1]) << '\n';
  }
  if (!os) throw CliError(kIo, "cannot write " + a.out);
  os.close();
  record_manifest(dir, fs::path(a.out).filename().string(),
                  {{"command", "pca"},
                   {"parameters", {{"param", a.param}}},
                   {"inputs", a.inputs},
                   {"outputs", {a.out}},
                   {"started", started},
                   {"finished", utc_now()}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walk2vec: random-walk graph embeddings and model-selection experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(w2v_version()));

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate random graphs as edge-list files");
  g->add_option("--model", gen.model, "er, sbm or clique")->check(CLI::IsMember({"er", "sbm", "clique"}));
  g->add_option("--n", gen.n, "Node count")->check(CLI::PositiveNumber);
  g->add_option("--p", gen.p, "Edge probability (mean density for sbm)");
  g->add_option("--delta", gen.delta, "SBM strength p_in - p_out");
  g->add_option("--k", gen.k, "Planted clique size");
  g->add_option("--beta", gen.beta, "Planted clique size as k / sqrt(n)");
  g->add_option("--count", gen.count, "Number of graphs");
  g->add_option("--seed", gen.seed, "Base seed");
  g->add_option("--out", gen.out, "Output directory");

  EmbedArgs emb;
  auto* e = app.add_subcommand("embed", "Embed edge-list graphs into a CSV");
  e->add_option("--method", emb.method, "walk2vec, sc or topo")->check(CLI::IsMember({"walk2vec", "sc", "topo"}));
  e->add_option("--tau", emb.tau, "Walk length")->check(CLI::PositiveNumber);
  e->add_option("--metric", emb.metric, "distance or similarity")->check(CLI::IsMember({"distance", "similarity"}));
  e->add_option("--dict", emb.dict, "Dictionary file (sc)");
  e->add_option("--pool", emb.pool, "average or max (sc)")->check(CLI::IsMember({"average", "max"}));
  e->add_option("--out", emb.out, "Output CSV");
  e->add_option("--jobs", emb.jobs, "Worker threads (default WALK2VEC_JOBS or 1)");
  e->add_option("inputs", emb.inputs, "Edge-list files or directories")->required();

  TrainDictArgs td;
  auto* t = app.add_subcommand("train-dict", "Learn a sparse-coding dictionary from per-node walk features");
  t->add_option("--tau", td.tau, "Walk length")->check(CLI::PositiveNumber);
  t->add_option("--metric", td.metric, "distance or similarity")->check(CLI::IsMember({"distance", "similarity"}));
  t->add_option("--atoms", td.atoms, "Dictionary size K");
  t->add_option("--lambda", td.lambda1, "Sparsity weight");
  t->add_option("--epochs", td.epochs, "Passes over the training rows");
  t->add_option("--batch", td.batch, "Mini-batch size");
  t->add_option("--heldout", td.heldout, "Held-out fraction for the reported objective");
  t->add_option("--max-features", td.max_features, "Subsample the node features to at most this many rows");
  t->add_option("--seed", td.seed, "Seed");
  t->add_option("--out", td.out, "Output dictionary file");
  t->add_option("--jobs", td.jobs, "Worker threads (default WALK2VEC_JOBS or 1)");
  t->add_option("inputs", td.inputs, "Edge-list files or directories")->required();

  ClassifyArgs cl;
  auto* c = app.add_subcommand("classify", "Train a random forest on two embedding CSVs and report test AUC");
  c->add_option("--train0", cl.train0, "Class 0 training embeddings");
  c->add_option("--train1", cl.train1, "Class 1 training embeddings");
  c->add_option("--test0", cl.test0, "Class 0 test embeddings");
  c->add_option("--test1", cl.test1, "Class 1 test embeddings");
  c->add_option("--model", cl.model_in, "Use a saved forest instead of training");
  c->add_option("--model-out", cl.model_out, "Save the trained forest (JSON)");
  c->add_option("--scores-out", cl.scores_out, "Write per-graph test scores");
  c->add_option("--trees", cl.trees, "Number of trees");
  c->add_option("--seed", cl.seed, "Seed");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Run an experiment grid from a JSON config");
  s->add_option("--config", sw.config, "Grid config (JSON)")->required();
  s->add_option("--out", sw.out, "Output directory");
  s->add_option("--jobs", sw.jobs, "Worker threads (default WALK2VEC_JOBS or 1)");
  s->add_flag("--threshold-only", sw.threshold_only, "Print the detection thresholds of every cell and exit");
  s->add_flag("--timing", sw.timing, "Record wall_ms (otherwise 0, keeping reruns byte-identical)");

  PcaArgs pc;
  auto* p = app.add_subcommand("pca", "Project embedding CSVs onto two principal axes");
  p->add_option("inputs", pc.inputs, "Embedding CSVs; the i-th file is class i")->required();
  p->add_option("--param", pc.param, "Value for the param column");
  p->add_option("--out", pc.out, "Output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*e) return cmd_embed(emb);
    if (*t) return cmd_train_dict(td);
    if (*c) return cmd_classify(cl);
    if (*s) return cmd_sweep(sw);
    if (*p) return cmd_pca(pc);
  } catch (const CliError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return err.code;
  } catch (const Json::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kIo;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
