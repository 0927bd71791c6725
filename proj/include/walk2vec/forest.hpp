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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "walk2vec/rng.hpp"

namespace walk2vec {

/// Equal-length feature rows with binary labels.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::vector<std::vector<double>> features, std::vector<int> labels);

  void add(std::vector<double> row, int label);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  double value(std::size_t i, std::size_t f) const noexcept { return values_[i * dim_ + f]; }
  int label(std::size_t i) const noexcept { return labels_[i]; }
  std::span<const int> labels() const noexcept { return labels_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
  std::vector<int> labels_;
};

/// Axis-aligned binary decision tree stored as flat node arrays. A node with
/// feature == kLeaf is a leaf; class counts are kept for every node.
struct DecisionTree {
  static constexpr std::int32_t kLeaf = -1;

  struct Node {
    std::int32_t feature = kLeaf;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::array<std::uint32_t, 2> counts{};
  };

  std::vector<Node> nodes;

  /// 1 or 0 for the majority class of the reached leaf, 0.5 on a tie.
  double vote(std::span<const double> x) const;
};

struct Forest {
  std::vector<DecisionTree> trees;
  std::size_t dim = 0;
  Seed seed{};
};

/// Bootstrap sample of n draws per tree from its own stream (seed, tree id);
/// ⌈√F⌉ candidate features per split; best Gini split with midpoint
/// thresholds; grown until pure or fewer than 2 samples. Gain ties go to the
/// lowest feature index, then the lowest threshold.
Forest train_forest(const LabeledDataset& data, std::size_t n_trees, Seed seed);

/// Fraction of trees voting class 1.
double predict_score(const Forest& forest, std::span<const double> x);

/// Mann-Whitney AUC: P(s⁺ > s⁻) + ½·P(s⁺ = s⁻), from mid-ranks.
double auc(std::span<const double> scores, std::span<const int> labels);

/// JSON: {"format": "walk2vec-forest", "version": 1, "dim", "seed",
/// "trees": [{"feature": [...], "threshold": [...], "left": [...],
/// "right": [...], "count0": [...], "count1": [...]}]}.
void write_forest_json(std::ostream& os, const Forest& forest);
Forest read_forest_json(std::istream& is);
void save_forest(const std::string& path, const Forest& forest);
Forest load_forest(const std::string& path);

}  // namespace walk2vec
