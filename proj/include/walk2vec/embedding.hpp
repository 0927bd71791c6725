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

#include <cstddef>
#include <vector>

#include "walk2vec/graph.hpp"
#include "walk2vec/walk.hpp"

namespace walk2vec {

enum class EmbeddingMethod { Walk2Vec, Walk2VecSC };

struct GraphEmbedding {
  std::vector<double> values;
  EmbeddingMethod method = EmbeddingMethod::Walk2Vec;
  std::size_t tau = 0;
};

constexpr std::size_t walk2vec_dim(std::size_t tau) noexcept { return 4 * walk_feature_dim(tau); }

/// Walk features from delta starts at the four degree landmarks, stacked in
/// the order max, min, median, mean. Length 2(τ²+τ), independent of n.
GraphEmbedding embed_walk2vec(const Graph& g, std::size_t tau,
                              WalkMetric metric = WalkMetric::Distance);

}  // namespace walk2vec
