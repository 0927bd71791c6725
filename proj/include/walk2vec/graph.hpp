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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace walk2vec {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph in compressed sparse row form.
///
/// Neighbor lists are sorted ascending, symmetric, free of self-loops and
/// duplicates. Instances are immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Duplicate and reversed pairs collapse into one
  /// undirected edge. Throws InvalidArgument on out-of-range endpoints or
  /// self-loops.
  static Graph from_edge_list(std::size_t n, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  /// Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return neighbors_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

/// Bijection on [0, n). mapping[i] is the new id of node i.
class Permutation {
 public:
  explicit Permutation(std::vector<NodeId> mapping);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return mapping_.size(); }
  NodeId operator()(NodeId i) const noexcept { return mapping_[i]; }
  std::span<const NodeId> mapping() const noexcept { return mapping_; }

  /// out[π(i)] = values[i].
  template <typename T>
  std::vector<T> apply(std::span<const T> values) const {
    std::vector<T> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[mapping_[i]] = values[i];
    return out;
  }

 private:
  std::vector<NodeId> mapping_;
};

std::vector<std::size_t> degrees(const Graph& g);

std::size_t min_degree(const Graph& g);

/// Single BFS from node 0 reaches every node. Requires n >= 1.
bool is_connected(const Graph& g);

/// Relabels node i as π(i).
Graph permute(const Graph& g, const Permutation& pi);

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-12;
  std::size_t max_iter = 1000;
};

/// Power iteration on x ← (1-α)/n + α·A·D⁻¹·x. Requires min degree >= 1;
/// throws NumericalError when the L1 change fails to reach tol.
std::vector<double> pagerank(const Graph& g, const PageRankOptions& options = {});

/// Number of edges among the neighbors of each node.
std::vector<std::size_t> triangle_counts(const Graph& g);

/// Local clustering coefficient 2·tri(i)/(d_i(d_i-1)); 0 when d_i < 2.
std::vector<double> clustering_coefficients(const Graph& g);

/// Edge-list text: "n m" header line, then m lines "i j" (0-based).
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);
void save_edge_list(const std::string& path, const Graph& g);
Graph load_edge_list(const std::string& path);

}  // namespace walk2vec
