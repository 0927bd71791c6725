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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "walk2vec/error.hpp"
#include "walk2vec/generators.hpp"
#include "walk2vec/sparse_coding.hpp"

using namespace walk2vec;

namespace {

Dictionary random_dictionary(std::size_t d, std::size_t k, double lambda1, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd atoms(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(k));
  for (Eigen::Index j = 0; j < atoms.cols(); ++j) {
    for (Eigen::Index i = 0; i < atoms.rows(); ++i) atoms(i, j) = normal(rng);
    atoms.col(j) /= atoms.col(j).norm();
  }
  return Dictionary(atoms, lambda1);
}

std::vector<double> random_vector(std::size_t d, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> x(d);
  for (double& v : x) v = normal(rng);
  return x;
}

}  // namespace

TEST_CASE("dictionaries reject atoms outside the unit ball and bad weights") {
  Eigen::MatrixXd big = Eigen::MatrixXd::Constant(2, 1, 1.0);
  CHECK_THROWS_AS(Dictionary(big, 0.1), InvalidArgument);
  Eigen::MatrixXd ok = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(Dictionary(ok, -1.0), InvalidArgument);
  CHECK_NOTHROW(Dictionary(ok, 0.0));
}

TEST_CASE("the zero input codes to zero") {
  std::mt19937_64 rng(1);
  const Dictionary dict = random_dictionary(10, 20, 0.15, rng);
  const auto y = lasso(dict, std::vector<double>(10, 0.0));
  CHECK(std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("a single atom reduces to soft thresholding") {
  for (double a : {1.0, 0.5}) {
    Eigen::MatrixXd atom(1, 1);
    atom(0, 0) = a;
    const Dictionary dict(atom, 0.2);
    for (double x : {-2.0, -0.3, -0.05, 0.0, 0.1, 0.7, 3.0}) {
      const double z = a * x;
      const double expect = (z > 0.2 ? z - 0.2 : z < -0.2 ? z + 0.2 : 0.0) / (a * a);
      const double got = lasso(dict, std::vector<double>{x})[0];
      CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("codes satisfy the optimality conditions and beat random perturbations") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> lam(0.01, 0.5);
  for (int instance = 0; instance < 200; ++instance) {
    const std::size_t d = 4 + rng() % 30;
    const std::size_t k = 2 + rng() % 40;
    const Dictionary dict = random_dictionary(d, k, lam(rng), rng);
    const auto x = random_vector(d, 1.0, rng);
    const auto y = lasso(dict, x);
    REQUIRE(y.size() == k);
    CHECK(lasso_kkt_residual(dict, x, y) <= 1e-6);
    const double best = lasso_objective(dict, x, y);
    for (int probe = 0; probe < 20; ++probe) {
      auto z = y;
      const auto step = random_vector(k, probe < 10 ? 1e-3 : 1e-1, rng);
      for (std::size_t j = 0; j < k; ++j) z[j] += step[j];
      CHECK(lasso_objective(dict, x, z) >= best - 1e-12);
    }
  }
}

TEST_CASE("column coding agrees with one solve per column") {
  std::mt19937_64 rng(3);
  const Dictionary dict = random_dictionary(12, 30, 0.1, rng);
  Eigen::MatrixXd inputs(12, 25);
  for (Eigen::Index c = 0; c < inputs.cols(); ++c) {
    const auto x = random_vector(12, 1.0, rng);
    for (Eigen::Index i = 0; i < 12; ++i) inputs(i, c) = x[static_cast<std::size_t>(i)];
  }
  const LassoSolver solver(dict);
  const Eigen::MatrixXd codes = solver.solve_columns(inputs);
  for (Eigen::Index c = 0; c < inputs.cols(); ++c) {
    std::vector<double> x(inputs.col(c).data(), inputs.col(c).data() + 12);
    const auto y = solver.solve(x);
    for (std::size_t j = 0; j < 30; ++j) CHECK(std::abs(codes(static_cast<Eigen::Index>(j), c) - y[j]) <= 1e-10);
  }
}

TEST_CASE("dictionary learning recovers a rank-one signal") {
  std::mt19937_64 rng(4);
  const std::size_t d = 16;
  auto u = random_vector(d, 1.0, rng);
  const double norm = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
  for (double& v : u) v /= norm;
  std::vector<double> rows;
  std::uniform_real_distribution<double> scale(1.0, 3.0);
  std::normal_distribution<double> noise(0.0, 1e-3);
  for (int r = 0; r < 2000; ++r) {
    const double c = scale(rng);
    for (double v : u) rows.push_back(c * v + noise(rng));
  }
  DictLearnOptions opts;
  opts.atoms = 3;
  opts.lambda1 = 0.05;
  opts.epochs = 5;
  opts.seed = Seed{9};
  const auto result = dict_learn_with_report(rows, d, opts);
  const auto& atoms = result.dictionary.atoms();
  double best = 0.0;
  for (Eigen::Index j = 0; j < atoms.cols(); ++j) {
    const double n = atoms.col(j).norm();
    if (n == 0.0) continue;
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) dot += atoms(static_cast<Eigen::Index>(i), j) * u[i];
    best = std::max(best, std::abs(dot) / n);
  }
  CHECK(best >= 0.99);
}

TEST_CASE("dictionary learning is deterministic and its held-out objective does not grow") {
  const Graph g = gen_er(300, 0.05, Seed{5});
  const auto features = node_walk_features(g, 8);
  const std::size_t d = walk_feature_dim(8);
  DictLearnOptions opts;
  opts.atoms = 20;
  opts.epochs = 4;
  opts.batch_size = 64;
  opts.seed = Seed{11};
  const auto a = dict_learn_with_report(features, d, opts);
  const auto b = dict_learn_with_report(features, d, opts);
  CHECK(a.dictionary.atoms() == b.dictionary.atoms());
  CHECK(a.heldout_objective == b.heldout_objective);
  REQUIRE(a.heldout_objective.size() == opts.epochs + 1);
  for (std::size_t e = 1; e < a.heldout_objective.size(); ++e) {
    CHECK(a.heldout_objective[e] <= a.heldout_objective[e - 1] * 1.05);
  }
  CHECK(a.heldout_objective.back() <= a.heldout_objective.front() * 1.05);
  for (Eigen::Index j = 0; j < a.dictionary.atoms().cols(); ++j) {
    CHECK(a.dictionary.atoms().col(j).norm() <= 1.0 + 1e-9);
  }
  opts.seed = Seed{12};
  CHECK(dict_learn_with_report(features, d, opts).dictionary.atoms() != a.dictionary.atoms());
}

TEST_CASE("pooling takes componentwise means and maxima") {
  const std::vector<SparseCode> codes{{0.0, 1.0, -2.0}, {0.5, 0.0, -1.0}, {0.1, 2.0, -3.0}};
  const auto avg = pool(codes, Pooling::Average);
  CHECK(avg[0] == doctest::Approx(0.2));
  CHECK(avg[1] == doctest::Approx(1.0));
  CHECK(avg[2] == doctest::Approx(-2.0));
  CHECK(pool(codes, Pooling::Max) == std::vector<double>{0.5, 2.0, -1.0});

  std::vector<SparseCode> reversed(codes.rbegin(), codes.rend());
  CHECK(pool(reversed, Pooling::Average) == avg);
  CHECK_THROWS_AS(pool(std::vector<SparseCode>{}, Pooling::Max), InvalidArgument);
  CHECK_THROWS_AS(pool(std::vector<SparseCode>{{1.0}, {1.0, 2.0}}, Pooling::Max), InvalidArgument);
}

TEST_CASE("dictionaries round-trip bit for bit") {
  std::mt19937_64 rng(6);
  const Dictionary dict = random_dictionary(7, 5, 0.15, rng);
  std::stringstream buf;
  write_dictionary(buf, dict);
  const Dictionary back = read_dictionary(buf);
  CHECK(back.atoms() == dict.atoms());
  CHECK(back.lambda1() == dict.lambda1());

  std::stringstream truncated("3 2 0.1\n0 0 0\n");
  CHECK_THROWS_AS(read_dictionary(truncated), IoError);
  std::stringstream empty;
  CHECK_THROWS_AS(read_dictionary(empty), IoError);
}

TEST_CASE("pooled sparse codes do not depend on node labels") {
  std::mt19937_64 rng(7);
  const std::size_t tau = 6;
  const Graph g = gen_er(200, 0.05, Seed{21});
  DictLearnOptions opts;
  opts.atoms = 15;
  opts.epochs = 2;
  opts.seed = Seed{1};
  const Dictionary dict = dict_learn_with_report(node_walk_features(g, tau), walk_feature_dim(tau), opts).dictionary;
  std::vector<NodeId> map(200);
  std::iota(map.begin(), map.end(), NodeId{0});
  std::shuffle(map.begin(), map.end(), rng);
  const Graph h = permute(g, Permutation(map));
  for (auto mode : {Pooling::Average, Pooling::Max}) {
    const auto a = embed_sc(g, dict, tau, mode).values;
    const auto b = embed_sc(h, dict, tau, mode).values;
    REQUIRE(a.size() == 15);
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-9);
  }
  CHECK_THROWS_AS(embed_sc(g, dict, tau + 1, Pooling::Average), InvalidArgument);
}
