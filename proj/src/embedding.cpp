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

#include "walk2vec/embedding.hpp"

namespace walk2vec {

GraphEmbedding embed_walk2vec(const Graph& g, std::size_t tau, WalkMetric metric) {
  const Landmarks lm = select_degree_landmarks(g);
  GraphEmbedding emb;
  emb.method = EmbeddingMethod::Walk2Vec;
  emb.tau = tau;
  emb.values.reserve(walk2vec_dim(tau));
  for (NodeId start : lm.nodes) {
    const auto feature = walk_feature(g, delta_distribution(g.node_count(), start), tau, metric);
    emb.values.insert(emb.values.end(), feature.begin(), feature.end());
  }
  return emb;
}

}  // namespace walk2vec
