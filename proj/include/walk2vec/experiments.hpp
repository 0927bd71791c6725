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

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "walk2vec/error.hpp"
#include "walk2vec/graph.hpp"
#include "walk2vec/rng.hpp"
#include "walk2vec/sparse_coding.hpp"
#include "walk2vec/walk.hpp"

namespace walk2vec {

enum class Problem { ErVsSbm, PlantedClique };
enum class Method { Walk2Vec, Walk2VecSC, Topological };

std::string_view to_string(Problem problem) noexcept;
std::string_view to_string(Method method) noexcept;
std::string_view to_string(Pooling pooling) noexcept;
std::string_view to_string(WalkMetric metric) noexcept;
Problem parse_problem(std::string_view text);
Method parse_method(std::string_view text);
Pooling parse_pooling(std::string_view text);
WalkMetric parse_metric(std::string_view text);

/// Detection limit for two-block SBM against ER at matched density: 2√(p/n).
double delta_crit(double p, std::size_t n);

/// Planted clique detection limit in units of √n: √(p/(1−p)).
double beta_crit(double p);

/// k = round(β√n).
std::size_t clique_size(double beta, std::size_t n);

/// A sweep over (p, secondary) cells. The secondary parameter is δ for
/// er_vs_sbm and β = k/√n for planted_clique. Class 0 is always ER(n, p);
/// class 1 is the structured model. A zero δ or a clique size below 2 makes
/// class 1 an ER graph too (the null cell).
struct ExperimentGrid {
  Problem problem = Problem::ErVsSbm;
  std::size_t n = 1000;
  std::vector<double> p_values;
  std::vector<double> secondary_values;
  std::size_t graphs_per_class = 400;
  double train_fraction = 0.5;
  std::size_t tau = 15;
  std::vector<Method> methods{Method::Walk2VecSC};
  Pooling pooling = Pooling::Average;
  WalkMetric metric = WalkMetric::Distance;
  std::size_t atoms = 100;
  double lambda1 = 0.15;
  std::size_t dict_epochs = 5;
  std::size_t dict_max_features = 50000;
  std::size_t trees = 100;
  Seed seed{1};

  std::size_t cell_count() const noexcept { return p_values.size() * secondary_values.size(); }
  std::size_t train_per_class() const noexcept;
  std::size_t test_per_class() const noexcept { return graphs_per_class - train_per_class(); }

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Reads the JSON form. Unknown keys and type mismatches are ConfigErrors
/// that name the field; JSON syntax errors carry line and column.
ExperimentGrid parse_grid_json(std::string_view text);
ExperimentGrid load_grid(const std::string& path);
std::string grid_to_json(const ExperimentGrid& grid);

struct CellSpec {
  std::size_t index = 0;  // row-major over (p, secondary)
  double p = 0.0;
  double secondary = 0.0;
};

CellSpec cell_spec(const ExperimentGrid& grid, std::size_t index);

/// Seed of graph `instance` of `cls` in cell `cell`.
Seed instance_seed(const ExperimentGrid& grid, std::size_t cell, int cls, std::size_t instance);

/// Graph for (cell, class, instance) exactly as the sweep generates it.
Graph cell_graph(const ExperimentGrid& grid, const CellSpec& cell, int cls, std::size_t instance);

struct PcaPoint {
  std::string graph_id;
  int cls = 0;
  double param = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct CellResult {
  Problem problem = Problem::ErVsSbm;
  Method method = Method::Walk2VecSC;
  std::size_t n = 0;
  double p = 0.0;
  double secondary = 0.0;
  double threshold = 0.0;
  double auc = 0.5;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  Seed seed{};
  double wall_ms = 0.0;
  /// All graphs of the cell (both splits) projected onto two principal axes.
  std::vector<PcaPoint> pca;
};

struct CellFailure {
  CellSpec cell;
  ErrorKind kind = ErrorKind::InvalidArgument;
  std::string message;
};

struct GridReport {
  std::vector<CellResult> results;  // ordered by cell, then method
  std::vector<CellFailure> failures;
};

struct RunOptions {
  /// Worker threads for per-graph work; 0 picks WALK2VEC_JOBS or 1.
  std::size_t jobs = 0;
  /// Called after each finished cell (from the calling thread).
  std::function<void(const CellSpec&, std::span<const CellResult>)> on_cell;
};

std::size_t resolve_jobs(std::size_t requested);

/// One result per method in grid.methods, in that order. All methods see the
/// same graphs. Errors propagate with the cell's parameters in the message.
std::vector<CellResult> run_cell(const ExperimentGrid& grid, const CellSpec& cell,
                                 const RunOptions& options = {});

/// Runs every cell; failed cells are reported and the rest still computed.
GridReport run_grid(const ExperimentGrid& grid, const RunOptions& options = {});

/// Mean-centred projection onto the top two eigenvectors of the sample
/// covariance. Each axis is signed so its largest-magnitude loading is
/// positive. Input is row-major `count × dim`; needs count >= 3, dim >= 2.
std::vector<std::array<double, 2>> pca_2d(std::span<const double> rows, std::size_t dim);

/// Indices of `take` of `total` rows, uniform without replacement, ascending.
/// Returns all rows when take >= total.
std::vector<std::size_t> sample_rows(std::size_t total, std::size_t take, Seed seed);

/// Calls fn(i) for i in [0, count) on `jobs` threads. The first exception
/// by index is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

/// 17 significant digits, round-trip exact.
std::string format_real(double value);

void write_results_csv(std::ostream& os, std::span<const CellResult> results, bool include_timing);
void write_pca_csv(std::ostream& os, std::span<const PcaPoint> points);

}  // namespace walk2vec
