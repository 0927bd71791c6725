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
#include <utility>
#include <variant>
#include <vector>

#include "walk2vec/graph.hpp"
#include "walk2vec/rng.hpp"

namespace walk2vec {

// Random graph families. Every pair (i, j), i < j, consumes exactly one draw
// from a SplitMix64 stream in lexicographic pair order, so ER and SBM with
// p_in == p_out produce identical graphs for the same seed. Graphs with an
// isolated node are rejected and regenerated with seed + 1, at most
// kMaxResampleAttempts times.

inline constexpr int kMaxResampleAttempts = 100;

struct ErParams {
  double p = 0.0;
};

struct SbmParams {
  double p_in = 0.0;
  double p_out = 0.0;
};

struct PlantedCliqueParams {
  double p = 0.0;
  std::size_t k = 0;
};

struct ModelParams {
  std::size_t n = 0;
  std::variant<ErParams, SbmParams, PlantedCliqueParams> variant;
};

Graph gen_er(std::size_t n, double p, Seed seed);

/// p_in = p + δ/2, p_out = p − δ/2. Throws when either leaves [0, 1].
std::pair<double, double> sbm_params_from(double p, double delta);

/// Two blocks of sizes ⌈n/2⌉ and ⌊n/2⌋. Block membership comes from a seeded
/// shuffle independent of the pair stream.
Graph gen_sbm(std::size_t n, double p_in, double p_out, Seed seed);

/// Block index (0 or 1) of every node as used by gen_sbm for this seed.
std::vector<int> sbm_blocks(std::size_t n, Seed seed);

struct PlantedClique {
  Graph graph;
  std::vector<NodeId> members;  // sorted
};

PlantedClique gen_planted_clique_with_members(std::size_t n, double p, std::size_t k, Seed seed);

inline Graph gen_planted_clique(std::size_t n, double p, std::size_t k, Seed seed) {
  return gen_planted_clique_with_members(n, p, k, seed).graph;
}

Graph generate(const ModelParams& params, Seed seed);

}  // namespace walk2vec
