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

#include "walk2vec/sparse_coding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "walk2vec/error.hpp"

namespace walk2vec {
namespace {

constexpr double kUnitBallSlack = 1e-9;

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericalError(std::string(what) + " contains a non-finite value");
  }
}

using ConstColumns = Eigen::Map<const Eigen::MatrixXd>;

}  // namespace

Dictionary::Dictionary(Eigen::MatrixXd atoms, double lambda1)
    : atoms_(std::move(atoms)), lambda1_(lambda1) {
  if (atoms_.cols() < 1 || atoms_.rows() < 1) throw InvalidArgument("dictionary needs d >= 1 and K >= 1");
  if (!(lambda1_ >= 0.0) || !std::isfinite(lambda1_)) {
    throw InvalidArgument("lambda1 must be finite and nonnegative");
  }
  if (!atoms_.allFinite()) throw NumericalError("dictionary contains a non-finite value");
  for (Eigen::Index j = 0; j < atoms_.cols(); ++j) {
    if (atoms_.col(j).norm() > 1.0 + kUnitBallSlack) {
      throw InvalidArgument("dictionary atom " + std::to_string(j) + " lies outside the unit ball");
    }
  }
}

LassoSolver::LassoSolver(const Dictionary& dict, LassoOptions options)
    : dict_(dict), options_(options), gram_(dict.atoms().transpose() * dict.atoms()) {}

void LassoSolver::solve_from_correlation(const double* correlation, double* code) const {
  std::fill(code, code + gram_.cols(), 0.0);
  if (!feature_sign(correlation, code)) coordinate_descent(correlation, code);
}

// Feature-sign search: grow a signed support one coordinate at a time, solve
// the sign-constrained quadratic on it exactly, and line-search back to the
// first sign change when the exact solution flips a sign. Returns false when
// a support Gram block is not positive definite or the step budget runs out;
// `code` then holds the best point reached so far.
bool LassoSolver::feature_sign(const double* correlation, double* code) const {
  const auto k = static_cast<std::size_t>(gram_.cols());
  const double lambda = dict_.lambda1();
  const double tol = options_.kkt_tol;
  std::vector<double> grad(k);  // Gy − b
  auto refresh_grad = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      double acc = -correlation[i];
      for (std::size_t j = 0; j < k; ++j) {
        if (code[j] != 0.0) acc += gram_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * code[j];
      }
      grad[i] = acc;
    }
  };
  std::vector<std::size_t> active;
  std::vector<double> sign(k, 0.0);

  // smooth part + penalty, restricted to the active coordinates
  auto objective = [&](const Eigen::VectorXd& y) {
    double quad = 0.0;
    double lin = 0.0;
    double l1 = 0.0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const auto ia = static_cast<Eigen::Index>(active[a]);
      double row = 0.0;
      for (std::size_t b = 0; b < active.size(); ++b) {
        row += gram_(ia, static_cast<Eigen::Index>(active[b])) * y[static_cast<Eigen::Index>(b)];
      }
      quad += y[static_cast<Eigen::Index>(a)] * row;
      lin += correlation[ia] * y[static_cast<Eigen::Index>(a)];
      l1 += std::abs(y[static_cast<Eigen::Index>(a)]);
    }
    return 0.5 * quad - lin + lambda * l1;
  };

  refresh_grad();
  const std::size_t budget = 20 * k + 20;
  for (std::size_t step = 0; step < budget; ++step) {
    bool active_optimal = true;
    for (std::size_t j : active) {
      if (std::abs(grad[j] + lambda * sign[j]) > tol) active_optimal = false;
    }
    if (active_optimal) {
      std::size_t pick = k;
      double worst = lambda + tol;
      for (std::size_t j = 0; j < k; ++j) {
        if (code[j] == 0.0 && std::abs(grad[j]) > worst) {
          worst = std::abs(grad[j]);
          pick = j;
        }
      }
      if (pick == k) return true;
      sign[pick] = grad[pick] > 0.0 ? -1.0 : 1.0;
      active.push_back(pick);
      std::sort(active.begin(), active.end());
    }

    const auto m = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd sub(m, m);
    Eigen::VectorXd rhs(m);
    Eigen::VectorXd current(m);
    for (Eigen::Index a = 0; a < m; ++a) {
      const auto ja = static_cast<Eigen::Index>(active[static_cast<std::size_t>(a)]);
      rhs[a] = correlation[ja] - lambda * sign[static_cast<std::size_t>(ja)];
      current[a] = code[ja];
      for (Eigen::Index b = 0; b < m; ++b) {
        sub(a, b) = gram_(ja, static_cast<Eigen::Index>(active[static_cast<std::size_t>(b)]));
      }
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(sub);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::VectorXd target = llt.solve(rhs);
    if (!target.allFinite()) return false;

    // Candidates: the target itself and every zero crossing on the segment.
    Eigen::VectorXd best = target;
    bool target_consistent = true;
    for (Eigen::Index a = 0; a < m; ++a) {
      if (target[a] * sign[active[static_cast<std::size_t>(a)]] <= 0.0) target_consistent = false;
    }
    if (!target_consistent) {
      double best_obj = objective(target);
      for (Eigen::Index a = 0; a < m; ++a) {
        if (current[a] == 0.0 || target[a] * current[a] > 0.0) continue;
        const double t = current[a] / (current[a] - target[a]);
        Eigen::VectorXd point = current + t * (target - current);
        point[a] = 0.0;
        const double obj = objective(point);
        if (obj < best_obj) {
          best_obj = obj;
          best = point;
        }
      }
    }
    for (Eigen::Index a = 0; a < m; ++a) {
      const std::size_t j = active[static_cast<std::size_t>(a)];
      // a coordinate whose value disagrees with its sign leaves the support
      code[j] = best[a] * sign[j] > 0.0 ? best[a] : 0.0;
    }
    std::erase_if(active, [&](std::size_t j) {
      if (code[j] != 0.0) return false;
      sign[j] = 0.0;
      return true;
    });
    refresh_grad();
  }
  return false;
}

// Cyclic coordinate descent on the residual correlation r = b − Gy, used when
// the active-set solve hits a singular support.
void LassoSolver::coordinate_descent(const double* correlation, double* code) const {
  const auto k = static_cast<std::size_t>(gram_.cols());
  const double lambda = dict_.lambda1();
  std::vector<double> r(k);
  for (std::size_t i = 0; i < k; ++i) {
    double acc = correlation[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (code[j] != 0.0) acc -= gram_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * code[j];
    }
    r[i] = acc;
  }
  for (std::size_t sweep = 0; sweep < options_.max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double gjj = gram_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
      if (gjj <= 0.0) continue;
      const double old = code[j];
      const double fresh = soft_threshold(old + r[j] / gjj, lambda / gjj);
      const double delta = fresh - old;
      if (delta == 0.0) continue;
      const double* gcol = gram_.data() + j * k;
      for (std::size_t i = 0; i < k; ++i) r[i] -= delta * gcol[i];
      code[j] = fresh;
      change = std::max(change, std::abs(delta));
    }
    if (change <= options_.tol) return;
  }
}

SparseCode LassoSolver::solve(std::span<const double> x) const {
  if (x.size() != dict_.dim()) {
    throw InvalidArgument("lasso input has length " + std::to_string(x.size()) +
                          ", dictionary dimension is " + std::to_string(dict_.dim()));
  }
  require_finite(x, "lasso input");
  const Eigen::VectorXd corr =
      dict_.atoms().transpose() * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  SparseCode y(dict_.size());
  solve_from_correlation(corr.data(), y.data());
  return y;
}

Eigen::MatrixXd LassoSolver::solve_columns(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  if (static_cast<std::size_t>(inputs.rows()) != dict_.dim()) {
    throw InvalidArgument("lasso inputs have dimension " + std::to_string(inputs.rows()) +
                          ", dictionary dimension is " + std::to_string(dict_.dim()));
  }
  if (!inputs.allFinite()) throw NumericalError("lasso input contains a non-finite value");
  const Eigen::MatrixXd corr = dict_.atoms().transpose() * inputs;
  Eigen::MatrixXd codes(corr.rows(), corr.cols());
  for (Eigen::Index c = 0; c < corr.cols(); ++c) {
    solve_from_correlation(corr.col(c).data(), codes.col(c).data());
  }
  return codes;
}

SparseCode lasso(const Dictionary& dict, std::span<const double> x) {
  return LassoSolver(dict).solve(x);
}

double lasso_objective(const Dictionary& dict, std::span<const double> x, std::span<const double> y) {
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  return 0.5 * (dict.atoms() * yv - xv).squaredNorm() + dict.lambda1() * yv.lpNorm<1>();
}

double lasso_kkt_residual(const Dictionary& dict, std::span<const double> x,
                          std::span<const double> y) {
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  const Eigen::VectorXd grad = dict.atoms().transpose() * (dict.atoms() * yv - xv);
  const double lambda = dict.lambda1();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < grad.size(); ++j) {
    const double v = yv[j] != 0.0 ? std::abs(grad[j] + std::copysign(lambda, yv[j]))
                                  : std::max(0.0, std::abs(grad[j]) - lambda);
    worst = std::max(worst, v);
  }
  return worst;
}

DictLearnResult dict_learn_with_report(std::span<const double> features, std::size_t dim,
                                       const DictLearnOptions& options) {
  if (dim == 0) throw InvalidArgument("feature dimension must be >= 1");
  if (features.empty()) throw InvalidArgument("dictionary learning needs a nonempty training set");
  if (features.size() % dim != 0) throw InvalidArgument("feature buffer is not a whole number of rows");
  if (options.atoms == 0) throw InvalidArgument("dictionary size must be >= 1");
  if (options.batch_size == 0) throw InvalidArgument("batch size must be >= 1");
  require_finite(features, "training feature");

  const std::size_t total = features.size() / dim;
  const ConstColumns all(features.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(total));

  // Seeded split into training and held-out rows.
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 split_rng(derive_seed(options.seed, {0x73706c6974ULL}));
  for (std::size_t i = total; i > 1; --i) std::swap(order[i - 1], order[split_rng.below(i)]);
  std::size_t heldout_count =
      static_cast<std::size_t>(std::floor(options.heldout_fraction * static_cast<double>(total)));
  if (total >= 2) heldout_count = std::clamp<std::size_t>(heldout_count, 1, total - 1);
  else heldout_count = 0;
  std::vector<std::size_t> heldout(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(heldout_count));
  std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(heldout_count), order.end());
  std::sort(heldout.begin(), heldout.end());
  std::sort(train.begin(), train.end());
  if (heldout.empty()) heldout = train;

  Eigen::MatrixXd heldout_x(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(heldout.size()));
  for (std::size_t c = 0; c < heldout.size(); ++c) {
    heldout_x.col(static_cast<Eigen::Index>(c)) = all.col(static_cast<Eigen::Index>(heldout[c]));
  }

  // Initial atoms: K training rows, sampled without replacement when possible.
  const std::size_t k = options.atoms;
  SplitMix64 init_rng(derive_seed(options.seed, {0x696e6974ULL}));
  std::vector<std::size_t> picks;
  if (train.size() >= k) {
    std::vector<std::size_t> pool_idx = train;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool_idx[i], pool_idx[i + init_rng.below(pool_idx.size() - i)]);
    picks.assign(pool_idx.begin(), pool_idx.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    for (std::size_t i = 0; i < k; ++i) picks.push_back(train[init_rng.below(train.size())]);
  }
  Eigen::MatrixXd atoms(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    Eigen::VectorXd col = all.col(static_cast<Eigen::Index>(picks[j]));
    double norm = col.norm();
    if (norm == 0.0) {
      for (Eigen::Index i = 0; i < col.size(); ++i) col[i] = init_rng.normal();
      norm = col.norm();
    }
    atoms.col(static_cast<Eigen::Index>(j)) = col / norm;
  }

  auto heldout_mean = [&](const Dictionary& dict) {
    const LassoSolver solver(dict);
    const Eigen::MatrixXd codes = solver.solve_columns(heldout_x);
    const Eigen::MatrixXd resid = dict.atoms() * codes - heldout_x;
    double total_obj = 0.0;
    for (Eigen::Index c = 0; c < codes.cols(); ++c) {
      total_obj += 0.5 * resid.col(c).squaredNorm() + dict.lambda1() * codes.col(c).lpNorm<1>();
    }
    return total_obj / static_cast<double>(codes.cols());
  };

  DictLearnResult result{Dictionary(atoms, options.lambda1), {}};
  result.heldout_objective.push_back(heldout_mean(result.dictionary));

  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd stat_a = Eigen::MatrixXd::Zero(kk, kk);
  Eigen::MatrixXd stat_b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), kk);
  const double eta = static_cast<double>(options.batch_size);
  double step = 0.0;
  Eigen::MatrixXd batch_x;

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::vector<std::size_t> visit = train;
    SplitMix64 epoch_rng(derive_seed(options.seed, {0x65706f6368ULL, epoch}));
    for (std::size_t i = visit.size(); i > 1; --i) std::swap(visit[i - 1], visit[epoch_rng.below(i)]);

    for (std::size_t start = 0; start < visit.size(); start += options.batch_size) {
      const std::size_t width = std::min(options.batch_size, visit.size() - start);
      batch_x.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(width));
      for (std::size_t c = 0; c < width; ++c) {
        batch_x.col(static_cast<Eigen::Index>(c)) = all.col(static_cast<Eigen::Index>(visit[start + c]));
      }
      const Dictionary current(atoms, options.lambda1);
      const Eigen::MatrixXd codes = LassoSolver(current).solve_columns(batch_x);

      step += 1.0;
      const double theta = step < eta ? step * eta : eta * eta + step - eta;
      const double beta = (theta + 1.0 - eta) / (theta + 1.0);
      stat_a = beta * stat_a + codes * codes.transpose();
      stat_b = beta * stat_b + batch_x * codes.transpose();

      // One pass of block-coordinate descent over the atoms, projecting each
      // onto the unit ball. Atoms never used so far keep their value.
      for (Eigen::Index j = 0; j < kk; ++j) {
        const double ajj = stat_a(j, j);
        if (ajj <= 1e-12) continue;
        Eigen::VectorXd u = (stat_b.col(j) - atoms * stat_a.col(j)) / ajj + atoms.col(j);
        atoms.col(j) = u / std::max(u.norm(), 1.0);
      }
    }
    result.dictionary = Dictionary(atoms, options.lambda1);
    result.heldout_objective.push_back(heldout_mean(result.dictionary));
  }
  return result;
}

Dictionary dict_learn(std::span<const double> features, std::size_t dim, std::size_t atoms,
                      double lambda1, std::size_t epochs, Seed seed) {
  DictLearnOptions options;
  options.atoms = atoms;
  options.lambda1 = lambda1;
  options.epochs = epochs;
  options.seed = seed;
  return dict_learn_with_report(features, dim, options).dictionary;
}

namespace {

std::vector<double> pool_rows(const Eigen::MatrixXd& codes, Pooling mode) {
  // codes: K × m, one column per node
  const Eigen::Index k = codes.rows();
  const Eigen::Index m = codes.cols();
  std::vector<double> out(static_cast<std::size_t>(k));
  std::vector<double> values(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index c = 0; c < m; ++c) values[static_cast<std::size_t>(c)] = codes(j, c);
    if (mode == Pooling::Max) {
      out[static_cast<std::size_t>(j)] = *std::max_element(values.begin(), values.end());
    } else {
      std::sort(values.begin(), values.end());
      double sum = 0.0;
      for (double v : values) sum += v;
      out[static_cast<std::size_t>(j)] = sum / static_cast<double>(m);
    }
  }
  return out;
}

}  // namespace

std::vector<double> pool(std::span<const SparseCode> codes, Pooling mode) {
  if (codes.empty()) throw InvalidArgument("pooling needs at least one code");
  const std::size_t k = codes.front().size();
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(codes.size()));
  for (std::size_t c = 0; c < codes.size(); ++c) {
    if (codes[c].size() != k) throw InvalidArgument("pooling codes have unequal lengths");
    for (std::size_t j = 0; j < k; ++j) mat(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) = codes[c][j];
  }
  return pool_rows(mat, mode);
}

std::vector<double> encode_and_pool(std::span<const double> node_features, const Dictionary& dict,
                                    Pooling mode) {
  const std::size_t d = dict.dim();
  if (node_features.empty() || node_features.size() % d != 0) {
    throw InvalidArgument("node features do not match dictionary dimension " + std::to_string(d));
  }
  const ConstColumns x(node_features.data(), static_cast<Eigen::Index>(d),
                       static_cast<Eigen::Index>(node_features.size() / d));
  return pool_rows(LassoSolver(dict).solve_columns(x), mode);
}

GraphEmbedding embed_sc(const Graph& g, const Dictionary& dict, std::size_t tau, Pooling mode,
                        WalkMetric metric) {
  if (walk_feature_dim(tau) != dict.dim()) {
    throw InvalidArgument("tau = " + std::to_string(tau) + " gives feature dimension " +
                          std::to_string(walk_feature_dim(tau)) + " but the dictionary has d = " +
                          std::to_string(dict.dim()));
  }
  const auto features = node_walk_features(g, tau, metric);
  GraphEmbedding emb;
  emb.method = EmbeddingMethod::Walk2VecSC;
  emb.tau = tau;
  emb.values = encode_and_pool(features, dict, mode);
  return emb;
}

void write_dictionary(std::ostream& os, const Dictionary& dict) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", dict.lambda1());
  os << dict.dim() << ' ' << dict.size() << ' ' << buf << '\n';
  const auto& atoms = dict.atoms();
  for (Eigen::Index j = 0; j < atoms.cols(); ++j) {
    for (Eigen::Index i = 0; i < atoms.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", atoms(i, j));
      if (i > 0) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

Dictionary read_dictionary(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("dictionary file is empty");
  std::istringstream header(line);
  std::size_t d = 0;
  std::size_t k = 0;
  std::string lambda_text;
  if (!(header >> d >> k >> lambda_text) || d == 0 || k == 0) {
    throw IoError("dictionary line 1: expected \"d K lambda1\"");
  }
  const double lambda1 = std::strtod(lambda_text.c_str(), nullptr);
  Eigen::MatrixXd atoms(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    if (!std::getline(is, line)) {
      throw IoError("dictionary ended after " + std::to_string(j) + " of " + std::to_string(k) + " atoms");
    }
    std::istringstream row(line);
    std::string tok;
    for (std::size_t i = 0; i < d; ++i) {
      if (!(row >> tok)) {
        throw IoError("dictionary line " + std::to_string(j + 2) + ": expected " + std::to_string(d) + " values");
      }
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        throw IoError("dictionary line " + std::to_string(j + 2) + ": bad number \"" + tok + "\"");
      }
      atoms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return Dictionary(std::move(atoms), lambda1);
}

void save_dictionary(const std::string& path, const Dictionary& dict) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_dictionary(os, dict);
  if (!os) throw IoError("write failed: " + path);
}

Dictionary load_dictionary(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  return read_dictionary(is);
}

}  // namespace walk2vec
