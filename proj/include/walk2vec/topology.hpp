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
#include <vector>

#include "walk2vec/graph.hpp"

namespace walk2vec {

inline constexpr std::size_t kTopoFeatureCount = 26;

/// Fixed layout, each 4-block being (max, min, mean, population std) over
/// nodes:
///   [0..3]   degree centrality d_i/(n−1)
///   [4..7]   betweenness, normalized by (n−1)(n−2)/2
///   [8..11]  closeness (n−1)/Σ_j dist(i, j)
///   [12..15] local clustering coefficient
///   [16]     diameter
///   [17]     radius
///   [18..21] triangles through the node
///   [22..25] mean shortest-path length from the node
using TopoFeatureVector = std::array<double, kTopoFeatureCount>;

/// How all-pairs shortest paths are traversed. Sparse runs one BFS per
/// source; Dense runs every source at once through adjacency-matrix
/// products, which wins when most node pairs are adjacent. Both give the
/// same values up to rounding.
enum class PathKernel { Auto, Sparse, Dense };

inline constexpr std::size_t kDensePathLimit = 2048;
inline constexpr double kDenseEdgeRatio = 10.0;

/// Auto's choice: Dense when n <= kDensePathLimit and m >= n^2 / kDenseEdgeRatio.
bool prefer_dense(const Graph& g);

/// Brandes accumulation over all sources; undirected pair counts (each
/// unordered pair once), endpoints excluded, unnormalized.
std::vector<double> betweenness_raw(const Graph& g, PathKernel kernel = PathKernel::Auto);

/// Requires a connected graph with n >= 2; throws InvalidArgument otherwise.
TopoFeatureVector topo_features(const Graph& g);

}  // namespace walk2vec
