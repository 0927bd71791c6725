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
#include <span>
#include <vector>

#include "walk2vec/graph.hpp"

namespace walk2vec {

/// How pairs of walk distributions are compared.
///
/// Distance: M_st = ‖D^{-1/2} p_s − D^{-1/2} p_t‖₂.
/// Similarity: cosine of D^{-1/2} p_s and D^{-1/2} p_t.
enum class WalkMetric { Distance, Similarity };

/// Probability vector over the nodes: nonnegative, sums to 1 within 1e-12.
class InitialDistribution {
 public:
  explicit InitialDistribution(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// p_0 … p_τ of the simple random walk, p_t = Wᵀ p_{t−1}, W = D⁻¹A.
struct WalkTrajectory {
  std::vector<std::vector<double>> steps;
  std::size_t tau() const noexcept { return steps.empty() ? 0 : steps.size() - 1; }
};

/// Symmetric (τ+1)×(τ+1) matrix, row-major.
struct StepMatrix {
  std::size_t size = 0;
  std::vector<double> values;
  double operator()(std::size_t s, std::size_t t) const noexcept { return values[s * size + t]; }
};

/// Strict upper triangle of M (or S), row-major over (s, t) with s < t:
/// (0,1), (0,2), …, (0,τ), (1,2), …, (τ−1,τ).
using WalkFeature = std::vector<double>;

constexpr std::size_t walk_feature_dim(std::size_t tau) noexcept {
  return (tau * tau + tau) / 2;
}

/// out_j = Σ_{i ∈ adj(j)} p_i / d_i.
std::vector<double> transition_step(const Graph& g, std::span<const double> p);

WalkTrajectory walk_trajectory(const Graph& g, const InitialDistribution& p0, std::size_t tau);

/// ω_i = d_i / Σ_k d_k.
std::vector<double> stationary_distribution(const Graph& g);

StepMatrix distance_matrix(const WalkTrajectory& traj, std::span<const std::size_t> degs);
StepMatrix similarity_matrix(const WalkTrajectory& traj, std::span<const std::size_t> degs);

WalkFeature walk_feature(const Graph& g, const InitialDistribution& p0, std::size_t tau,
                         WalkMetric metric = WalkMetric::Distance);

/// walk_feature for every delta start e_0 … e_{n−1}, as an n × d row-major
/// matrix. Propagates blocks of sources together; row i equals
/// walk_feature(g, delta_distribution(n, i), tau, metric) up to rounding.
std::vector<double> node_walk_features(const Graph& g, std::size_t tau,
                                       WalkMetric metric = WalkMetric::Distance);

/// Landmark nodes in stacking order: max, min, median, mean degree.
struct Landmarks {
  std::array<NodeId, 4> nodes{};
  /// False when the (degree, PageRank) key left a tie that fell through to
  /// the lowest-id rule, i.e. the choice depends on labels.
  std::array<bool, 4> unique{};

  bool all_unique() const noexcept { return unique[0] && unique[1] && unique[2] && unique[3]; }
};

/// PageRank differences below this count as ties.
inline constexpr double kPageRankTieTolerance = 1e-9;

Landmarks select_degree_landmarks(const Graph& g);

InitialDistribution delta_distribution(std::size_t n, NodeId i);

/// Uniform over {i} ∪ adj(i).
InitialDistribution ego_uniform_distribution(const Graph& g, NodeId i);

}  // namespace walk2vec
