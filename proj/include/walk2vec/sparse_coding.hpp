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

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "walk2vec/embedding.hpp"
#include "walk2vec/graph.hpp"
#include "walk2vec/rng.hpp"
#include "walk2vec/walk.hpp"

namespace walk2vec {

/// d×K matrix whose columns (atoms) lie in the unit L2 ball, plus the
/// sparsity weight λ₁ used to code against it.
class Dictionary {
 public:
  Dictionary(Eigen::MatrixXd atoms, double lambda1);

  const Eigen::MatrixXd& atoms() const noexcept { return atoms_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(atoms_.rows()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(atoms_.cols()); }
  double lambda1() const noexcept { return lambda1_; }

 private:
  Eigen::MatrixXd atoms_;
  double lambda1_;
};

using SparseCode = std::vector<double>;

/// The solver is an exact active-set (feature-sign) search that stops once
/// every stationarity residual is within `kkt_tol`. If a support block turns
/// out singular it falls back to cyclic coordinate descent, which stops when
/// a sweep changes no coordinate by more than `tol` or after `max_sweeps`.
struct LassoOptions {
  double tol = 1e-8;
  double kkt_tol = 1e-7;
  std::size_t max_sweeps = 10000;
};

/// Codes many inputs against one dictionary; caches the Gram matrix DᵀD.
class LassoSolver {
 public:
  explicit LassoSolver(const Dictionary& dict, LassoOptions options = {});

  /// argmin_y ½‖Dy − x‖₂² + λ₁‖y‖₁.
  SparseCode solve(std::span<const double> x) const;

  /// Codes the columns of `inputs` (d × m); returns K × m.
  Eigen::MatrixXd solve_columns(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const;

 private:
  void solve_from_correlation(const double* correlation, double* code) const;
  bool feature_sign(const double* correlation, double* code) const;
  void coordinate_descent(const double* correlation, double* code) const;

  Dictionary dict_;
  LassoOptions options_;
  Eigen::MatrixXd gram_;
};

SparseCode lasso(const Dictionary& dict, std::span<const double> x);

/// ½‖Dy − x‖₂² + λ₁‖y‖₁ evaluated directly.
double lasso_objective(const Dictionary& dict, std::span<const double> x,
                       std::span<const double> y);

/// Largest violation of the LASSO stationarity conditions for code y.
double lasso_kkt_residual(const Dictionary& dict, std::span<const double> x,
                          std::span<const double> y);

/// Online dictionary learning with mini-batches: alternates sparse coding
/// and one pass of block-coordinate atom updates driven by the accumulated
/// statistics A = Σ y yᵀ and B = Σ x yᵀ (with mini-batch forgetting).
struct DictLearnOptions {
  std::size_t atoms = 100;
  double lambda1 = 0.15;
  std::size_t epochs = 5;
  std::size_t batch_size = 256;
  double heldout_fraction = 0.1;
  Seed seed{};
};

struct DictLearnResult {
  Dictionary dictionary;
  /// Mean LASSO objective over the held-out features, before training and
  /// after each epoch (epochs + 1 entries).
  std::vector<double> heldout_objective;
};

/// `features` is row-major with `dim` columns.
DictLearnResult dict_learn_with_report(std::span<const double> features, std::size_t dim,
                                       const DictLearnOptions& options);

Dictionary dict_learn(std::span<const double> features, std::size_t dim, std::size_t atoms,
                      double lambda1, std::size_t epochs, Seed seed);

enum class Pooling { Average, Max };

/// Componentwise mean or maximum. Each component is reduced over its
/// sorted values so the result does not depend on the order of the codes.
std::vector<double> pool(std::span<const SparseCode> codes, Pooling mode);

/// Per-node delta-start walk features, coded against `dict`, pooled over all
/// nodes. Output length K.
GraphEmbedding embed_sc(const Graph& g, const Dictionary& dict, std::size_t tau, Pooling mode,
                        WalkMetric metric = WalkMetric::Distance);

/// Same, starting from precomputed node features (n × d, row-major).
std::vector<double> encode_and_pool(std::span<const double> node_features, const Dictionary& dict,
                                    Pooling mode);

/// "d K lambda1" header, then K lines of d decimals (one atom per line),
/// 17 significant digits.
void write_dictionary(std::ostream& os, const Dictionary& dict);
Dictionary read_dictionary(std::istream& is);
void save_dictionary(const std::string& path, const Dictionary& dict);
Dictionary load_dictionary(const std::string& path);

}  // namespace walk2vec
