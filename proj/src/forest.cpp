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

#include "walk2vec/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <utility>

#include <json.hpp>

#include "walk2vec/error.hpp"

namespace walk2vec {

LabeledDataset::LabeledDataset(std::vector<std::vector<double>> features, std::vector<int> labels) {
  if (features.size() != labels.size()) {
    throw InvalidArgument("feature and label counts differ");
  }
  for (std::size_t i = 0; i < features.size(); ++i) add(std::move(features[i]), labels[i]);
}

void LabeledDataset::add(std::vector<double> row, int label) {
  if (label != 0 && label != 1) throw InvalidArgument("labels must be 0 or 1");
  if (labels_.empty()) {
    dim_ = row.size();
  } else if (row.size() != dim_) {
    throw InvalidArgument("feature row has length " + std::to_string(row.size()) + ", expected " +
                          std::to_string(dim_));
  }
  values_.insert(values_.end(), row.begin(), row.end());
  labels_.push_back(label);
}

double DecisionTree::vote(std::span<const double> x) const {
  std::int32_t at = 0;
  while (nodes[static_cast<std::size_t>(at)].feature != kLeaf) {
    const Node& node = nodes[static_cast<std::size_t>(at)];
    at = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  const auto& counts = nodes[static_cast<std::size_t>(at)].counts;
  if (counts[1] > counts[0]) return 1.0;
  if (counts[0] > counts[1]) return 0.0;
  return 0.5;
}

namespace {

struct Split {
  std::int32_t feature = DecisionTree::kLeaf;
  double threshold = 0.0;
  double score = -1.0;  // Σ_child (c0² + c1²) / n_child; larger is purer
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& data, Seed seed)
      : data_(data), rng_(seed), feature_pool_(data.dim()) {
    std::iota(feature_pool_.begin(), feature_pool_.end(), std::size_t{0});
    tries_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(data.dim()))));
    tries_ = std::clamp<std::size_t>(tries_, 1, data.dim());
  }

  DecisionTree build() {
    const std::size_t n = data_.size();
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = rng_.below(n);

    DecisionTree tree;
    tree.nodes.emplace_back();
    // (node id, sample range) work list; ranges index into `sample`.
    struct Work {
      std::int32_t node;
      std::size_t begin;
      std::size_t end;
    };
    std::vector<Work> stack{{0, 0, n}};
    while (!stack.empty()) {
      const Work w = stack.back();
      stack.pop_back();
      auto& counts = tree.nodes[static_cast<std::size_t>(w.node)].counts;
      counts = {0, 0};
      for (std::size_t i = w.begin; i < w.end; ++i) ++counts[static_cast<std::size_t>(data_.label(sample[i]))];
      if (counts[0] == 0 || counts[1] == 0 || w.end - w.begin < 2) continue;

      const Split split = best_split(std::span(sample).subspan(w.begin, w.end - w.begin));
      if (split.feature == DecisionTree::kLeaf) continue;

      const auto f = static_cast<std::size_t>(split.feature);
      const auto mid = std::stable_partition(
          sample.begin() + static_cast<std::ptrdiff_t>(w.begin),
          sample.begin() + static_cast<std::ptrdiff_t>(w.end),
          [&](std::size_t s) { return data_.value(s, f) <= split.threshold; });
      const auto cut = static_cast<std::size_t>(mid - sample.begin());

      const auto left = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& node = tree.nodes[static_cast<std::size_t>(w.node)];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = left;
      node.right = left + 1;
      stack.push_back({left + 1, cut, w.end});
      stack.push_back({left, w.begin, cut});
    }
    return tree;
  }

 private:
  Split best_split(std::span<const std::size_t> idx) {
    // Partial Fisher-Yates draws the candidate features; evaluating them in
    // ascending order makes strict-improvement ties resolve to the lowest
    // feature index and, within a feature, the lowest threshold.
    const std::size_t f_count = feature_pool_.size();
    for (std::size_t i = 0; i < tries_; ++i) {
      std::swap(feature_pool_[i], feature_pool_[i + rng_.below(f_count - i)]);
    }
    std::vector<std::size_t> candidates(feature_pool_.begin(),
                                        feature_pool_.begin() + static_cast<std::ptrdiff_t>(tries_));
    std::sort(candidates.begin(), candidates.end());

    std::array<double, 2> total{0.0, 0.0};
    for (std::size_t s : idx) total[static_cast<std::size_t>(data_.label(s))] += 1.0;

    Split best;
    column_.resize(idx.size());
    for (std::size_t f : candidates) {
      for (std::size_t i = 0; i < idx.size(); ++i) {
        column_[i] = {data_.value(idx[i], f), data_.label(idx[i])};
      }
      std::sort(column_.begin(), column_.end());
      std::array<double, 2> left{0.0, 0.0};
      for (std::size_t i = 0; i + 1 < column_.size(); ++i) {
        left[static_cast<std::size_t>(column_[i].second)] += 1.0;
        const double lo = column_[i].first;
        const double hi = column_[i + 1].first;
        if (!(lo < hi)) continue;
        const double nl = left[0] + left[1];
        const double r0 = total[0] - left[0];
        const double r1 = total[1] - left[1];
        const double nr = r0 + r1;
        const double score = (left[0] * left[0] + left[1] * left[1]) / nl + (r0 * r0 + r1 * r1) / nr;
        if (score > best.score) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = {static_cast<std::int32_t>(f), threshold, score};
        }
      }
    }
    return best;
  }

  const LabeledDataset& data_;
  SplitMix64 rng_;
  std::vector<std::size_t> feature_pool_;
  std::size_t tries_ = 1;
  std::vector<std::pair<double, int>> column_;
};

}  // namespace

Forest train_forest(const LabeledDataset& data, std::size_t n_trees, Seed seed) {
  if (n_trees == 0) throw InvalidArgument("forest needs at least one tree");
  if (data.size() == 0 || data.dim() == 0) throw InvalidArgument("training set is empty");
  std::size_t positives = 0;
  for (int l : data.labels()) positives += static_cast<std::size_t>(l);
  if (positives == 0 || positives == data.size()) {
    throw InvalidArgument("training data must contain both classes");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) {
      if (!std::isfinite(v)) throw NumericalError("training feature is not finite");
    }
  }

  Forest forest;
  forest.dim = data.dim();
  forest.seed = seed;
  forest.trees.reserve(n_trees);
  for (std::size_t t = 0; t < n_trees; ++t) {
    forest.trees.push_back(TreeBuilder(data, derive_seed(seed, {t})).build());
  }
  return forest;
}

double predict_score(const Forest& forest, std::span<const double> x) {
  if (x.size() != forest.dim) {
    throw InvalidArgument("feature vector has length " + std::to_string(x.size()) +
                          ", forest expects " + std::to_string(forest.dim));
  }
  if (forest.trees.empty()) throw InvalidArgument("forest has no trees");
  double votes = 0.0;
  for (const auto& tree : forest.trees) votes += tree.vote(x);
  return votes / static_cast<double>(forest.trees.size());
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw InvalidArgument("score and label counts differ");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double positives = 0.0;
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // ranks i+1 … j share their mean
    const double mid_rank = static_cast<double>(i + 1 + j) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        positives += 1.0;
        rank_sum += mid_rank;
      } else if (labels[order[k]] != 0) {
        throw InvalidArgument("labels must be 0 or 1");
      }
    }
    i = j;
  }
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0.0 || negatives == 0.0) throw InvalidArgument("auc needs both classes present");
  return (rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

void write_forest_json(std::ostream& os, const Forest& forest) {
  nlohmann::json doc;
  doc["format"] = "walk2vec-forest";
  doc["version"] = 1;
  doc["dim"] = forest.dim;
  doc["seed"] = forest.seed.value;
  auto& trees = doc["trees"] = nlohmann::json::array();
  for (const auto& tree : forest.trees) {
    nlohmann::json t;
    std::vector<std::int32_t> feature, left, right;
    std::vector<double> threshold;
    std::vector<std::uint32_t> c0, c1;
    for (const auto& node : tree.nodes) {
      feature.push_back(node.feature);
      threshold.push_back(node.threshold);
      left.push_back(node.left);
      right.push_back(node.right);
      c0.push_back(node.counts[0]);
      c1.push_back(node.counts[1]);
    }
    t["feature"] = feature;
    t["threshold"] = threshold;
    t["left"] = left;
    t["right"] = right;
    t["count0"] = c0;
    t["count1"] = c1;
    trees.push_back(std::move(t));
  }
  os << doc.dump() << '\n';
}

Forest read_forest_json(std::istream& is) {
  nlohmann::json doc;
  try {
    is >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("forest JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "walk2vec-forest") throw IoError("not a walk2vec forest file");
    if (doc.at("version").get<int>() != 1) throw IoError("unsupported forest version");
    Forest forest;
    forest.dim = doc.at("dim").get<std::size_t>();
    forest.seed = Seed{doc.at("seed").get<std::uint64_t>()};
    for (const auto& t : doc.at("trees")) {
      const auto feature = t.at("feature").get<std::vector<std::int32_t>>();
      const auto threshold = t.at("threshold").get<std::vector<double>>();
      const auto left = t.at("left").get<std::vector<std::int32_t>>();
      const auto right = t.at("right").get<std::vector<std::int32_t>>();
      const auto c0 = t.at("count0").get<std::vector<std::uint32_t>>();
      const auto c1 = t.at("count1").get<std::vector<std::uint32_t>>();
      const std::size_t m = feature.size();
      if (m == 0 || threshold.size() != m || left.size() != m || right.size() != m ||
          c0.size() != m || c1.size() != m) {
        throw IoError("forest JSON: tree arrays have inconsistent lengths");
      }
      DecisionTree tree;
      tree.nodes.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
        auto& node = tree.nodes[i];
        node.feature = feature[i];
        node.threshold = threshold[i];
        node.left = left[i];
        node.right = right[i];
        node.counts = {c0[i], c1[i]};
        if (node.feature != DecisionTree::kLeaf) {
          const auto mm = static_cast<std::int32_t>(m);
          if (node.feature < 0 || static_cast<std::size_t>(node.feature) >= forest.dim ||
              node.left <= static_cast<std::int32_t>(i) || node.right <= static_cast<std::int32_t>(i) ||
              node.left >= mm || node.right >= mm) {
            throw IoError("forest JSON: malformed node " + std::to_string(i));
          }
        }
      }
      forest.trees.push_back(std::move(tree));
    }
    return forest;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("forest JSON: ") + e.what());
  }
}

void save_forest(const std::string& path, const Forest& forest) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_forest_json(os, forest);
  if (!os) throw IoError("write failed: " + path);
}

Forest load_forest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  return read_forest_json(is);
}

}  // namespace walk2vec
