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

#include <cmath>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "walk2vec/error.hpp"
#include "walk2vec/forest.hpp"

using namespace walk2vec;

namespace {

// Two Gaussian blobs in `dim` dimensions; `shift` separates them along
// every axis.
LabeledDataset blobs(std::size_t per_class, std::size_t dim, double shift, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  LabeledDataset data;
  for (int cls = 0; cls < 2; ++cls) {
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<double> row(dim);
      for (double& v : row) v = normal(rng) + cls * shift;
      data.add(std::move(row), cls);
    }
  }
  return data;
}

double test_auc(const Forest& forest, const LabeledDataset& test) {
  std::vector<double> scores;
  for (std::size_t i = 0; i < test.size(); ++i) scores.push_back(predict_score(forest, test.row(i)));
  return auc(scores, test.labels());
}

}  // namespace

TEST_CASE("datasets validate labels and row lengths") {
  LabeledDataset data;
  data.add({1.0, 2.0}, 0);
  CHECK_THROWS_AS(data.add({1.0}, 1), InvalidArgument);
  CHECK_THROWS_AS(data.add({1.0, 2.0}, 2), InvalidArgument);
  CHECK_THROWS_AS(LabeledDataset({{1.0}}, {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(train_forest(data, 10, Seed{1}), InvalidArgument);
  data.add({3.0, 4.0}, 1);
  CHECK_THROWS_AS(train_forest(data, 0, Seed{1}), InvalidArgument);
}

TEST_CASE("separable classes are ranked perfectly") {
  std::mt19937_64 rng(1);
  const auto train = blobs(100, 5, 10.0, rng);
  const auto test = blobs(100, 5, 10.0, rng);
  const Forest forest = train_forest(train, 100, Seed{3});
  CHECK(forest.trees.size() == 100);
  CHECK(forest.dim == 5);
  CHECK(test_auc(forest, test) == 1.0);
}

TEST_CASE("labels independent of the features give chance-level AUC") {
  std::mt19937_64 rng(2);
  double total = 0.0;
  const int reps = 10;
  for (int r = 0; r < reps; ++r) {
    const auto train = blobs(100, 10, 0.0, rng);
    const auto test = blobs(100, 10, 0.0, rng);
    const double a = test_auc(train_forest(train, 100, Seed{static_cast<std::uint64_t>(r)}), test);
    CHECK(a > 0.3);
    CHECK(a < 0.7);
    total += a;
  }
  CHECK(std::abs(total / reps - 0.5) < 0.06);
}

TEST_CASE("training is a pure function of data and seed") {
  std::mt19937_64 rng(3);
  const auto train = blobs(60, 8, 0.7, rng);
  std::stringstream a;
  std::stringstream b;
  write_forest_json(a, train_forest(train, 20, Seed{5}));
  write_forest_json(b, train_forest(train, 20, Seed{5}));
  CHECK(a.str() == b.str());
  std::stringstream c;
  write_forest_json(c, train_forest(train, 20, Seed{6}));
  CHECK(a.str() != c.str());
}

TEST_CASE("trees grow until their leaves are pure") {
  std::mt19937_64 rng(4);
  const auto train = blobs(50, 3, 1.0, rng);
  const Forest forest = train_forest(train, 5, Seed{1});
  for (const auto& tree : forest.trees) {
    for (const auto& node : tree.nodes) {
      if (node.feature != DecisionTree::kLeaf) continue;
      // duplicates of one point are the only way to keep both classes
      CHECK((node.counts[0] == 0 || node.counts[1] == 0));
    }
  }
}

TEST_CASE("auc matches hand-worked examples") {
  CHECK(auc(std::vector<double>{0.1, 0.4, 0.35, 0.8}, std::vector<int>{0, 0, 1, 1}) == 0.75);
  CHECK(auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, std::vector<int>{1, 1, 0, 0}) == 1.0);
  CHECK(auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, std::vector<int>{0, 0, 1, 1}) == 0.0);
  CHECK(auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, std::vector<int>{0, 1, 0, 1}) == 0.5);
  CHECK_THROWS_AS(auc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}), InvalidArgument);
  CHECK_THROWS_AS(auc(std::vector<double>{0.1}, std::vector<int>{1, 0}), InvalidArgument);
}

TEST_CASE("rank-based auc equals pair counting and has the expected symmetries") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> level(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng() % 60;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = level(rng) / 10.0;  // coarse grid so ties are common
      labels[i] = static_cast<int>(i % 2);
    }
    std::shuffle(labels.begin(), labels.end(), rng);
    const double a = auc(scores, labels);
    CHECK(a == doctest::Approx(oracle::pair_auc(scores, labels)).epsilon(1e-12));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);

    std::vector<int> flipped(labels);
    for (int& l : flipped) l = 1 - l;
    CHECK(auc(scores, flipped) == doctest::Approx(1.0 - a).epsilon(1e-12));

    std::vector<double> squashed(scores);
    for (double& s : squashed) s = std::exp(3.0 * s) - 7.0;
    CHECK(auc(squashed, labels) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("forests round-trip through JSON") {
  std::mt19937_64 rng(6);
  const auto train = blobs(40, 4, 1.0, rng);
  const Forest forest = train_forest(train, 10, Seed{2});
  std::stringstream buf;
  write_forest_json(buf, forest);
  const Forest back = read_forest_json(buf);
  CHECK(back.dim == forest.dim);
  CHECK(back.seed.value == forest.seed.value);
  const auto probe = blobs(30, 4, 1.0, rng);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    CHECK(predict_score(back, probe.row(i)) == predict_score(forest, probe.row(i)));
  }
  std::stringstream bad(R"({"format": "something-else", "version": 1})");
  CHECK_THROWS_AS(read_forest_json(bad), IoError);
  std::stringstream broken("{");
  CHECK_THROWS_AS(read_forest_json(broken), IoError);
  CHECK_THROWS_AS(predict_score(forest, std::vector<double>{1.0}), InvalidArgument);
}
