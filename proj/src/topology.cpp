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

#include "walk2vec/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/Dense>

#include "walk2vec/error.hpp"

namespace walk2vec {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

void put_stats(TopoFeatureVector& out, std::size_t at, const std::vector<double>& v) {
  double hi = v.front();
  double lo = v.front();
  double sum = 0.0;
  for (double x : v) {
    hi = std::max(hi, x);
    lo = std::min(lo, x);
    sum += x;
  }
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  out[at] = hi;
  out[at + 1] = lo;
  out[at + 2] = mean;
  out[at + 3] = std::sqrt(ss / static_cast<double>(v.size()));
}

// One source of Brandes' algorithm. Fills `dist` and adds this source's
// dependencies into `between` (directed, i.e. each pair counted from both ends
// over the full loop).
struct BrandesPass {
  explicit BrandesPass(std::size_t n) : dist(n), sigma(n), delta(n) { order.reserve(n); }

  void run(const Graph& g, NodeId source, std::vector<double>& between) {
    const std::size_t n = g.node_count();
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[source] = 0;
    sigma[source] = 1.0;
    order.push_back(source);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    // Dependencies in reverse BFS order; predecessors are neighbors one level up.
    for (std::size_t k = order.size(); k-- > 1;) {
      const NodeId w = order[k];
      const double coeff = (1.0 + delta[w]) / sigma[w];
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] + 1 == dist[w]) delta[v] += sigma[v] * coeff;
      }
      between[w] += delta[w];
    }
    (void)n;
  }

  std::vector<std::uint32_t> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<NodeId> order;
};

// Per-source shortest-path totals plus raw betweenness (each pair once).
struct PathSummary {
  std::vector<double> between;
  std::vector<std::uint64_t> distance_sum;
  std::vector<std::uint32_t> eccentricity;
};

PathSummary sparse_paths(const Graph& g) {
  const std::size_t n = g.node_count();
  PathSummary out{std::vector<double>(n, 0.0), std::vector<std::uint64_t>(n), std::vector<std::uint32_t>(n)};
  BrandesPass pass(n);
  for (NodeId s = 0; s < n; ++s) {
    pass.run(g, s, out.between);
    std::uint64_t total = 0;
    std::uint32_t ecc = 0;
    for (std::uint32_t d : pass.dist) {
      if (d == kUnreached) continue;
      total += d;
      ecc = std::max(ecc, d);
    }
    out.distance_sum[s] = total;
    out.eccentricity[s] = ecc;
  }
  for (double& b : out.between) b /= 2.0;
  return out;
}

// Brandes for all sources at once: rows are sources, and each BFS level is
// one product with the adjacency matrix. Path counts are integers, so the
// products are exact.
PathSummary dense_paths(const Graph& g) {
  using Index = Eigen::Index;
  const std::size_t n = g.node_count();
  const Index size = static_cast<Index>(n);
  const Index cells = size * size;

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(size, size);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : g.neighbors(i)) adj(static_cast<Index>(i), static_cast<Index>(j)) = 1.0;
  }
  Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic> dist(size, size);
  Eigen::MatrixXd sigma(size, size);
  Eigen::MatrixXd level = adj;
  Eigen::MatrixXd product(size, size);
  for (Index k = 0; k < cells; ++k) {
    dist.data()[k] = adj.data()[k] > 0.0 ? 1 : kUnreached;
    sigma.data()[k] = adj.data()[k];
  }
  for (Index s = 0; s < size; ++s) {
    dist(s, s) = 0;
    sigma(s, s) = 1.0;
  }

  std::uint32_t depth = 1;
  for (;;) {
    product.noalias() = level * adj;
    bool grew = false;
    for (Index k = 0; k < cells; ++k) {
      double next = 0.0;
      if (dist.data()[k] == kUnreached && product.data()[k] > 0.0) {
        dist.data()[k] = depth + 1;
        sigma.data()[k] = next = product.data()[k];
        grew = true;
      }
      level.data()[k] = next;
    }
    if (!grew) break;
    ++depth;
  }

  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(size, size);
  for (std::uint32_t d = depth; d >= 2; --d) {
    for (Index k = 0; k < cells; ++k) {
      level.data()[k] = dist.data()[k] == d ? (1.0 + delta.data()[k]) / sigma.data()[k] : 0.0;
    }
    product.noalias() = level * adj;
    for (Index k = 0; k < cells; ++k) {
      if (dist.data()[k] == d - 1) delta.data()[k] = sigma.data()[k] * product.data()[k];
    }
  }

  PathSummary out{std::vector<double>(n, 0.0), std::vector<std::uint64_t>(n, 0), std::vector<std::uint32_t>(n, 0)};
  for (Index v = 0; v < size; ++v) {
    double sum = 0.0;
    for (Index s = 0; s < size; ++s) sum += delta(s, v);
    out.between[static_cast<std::size_t>(v)] = sum / 2.0;
  }
  for (Index v = 0; v < size; ++v) {
    for (Index s = 0; s < size; ++s) {
      const std::uint32_t d = dist(s, v);
      if (d == kUnreached) continue;
      out.distance_sum[static_cast<std::size_t>(s)] += d;
      out.eccentricity[static_cast<std::size_t>(s)] = std::max(out.eccentricity[static_cast<std::size_t>(s)], d);
    }
  }
  return out;
}

PathSummary shortest_paths(const Graph& g, PathKernel kernel) {
  if (kernel == PathKernel::Auto) kernel = prefer_dense(g) ? PathKernel::Dense : PathKernel::Sparse;
  return kernel == PathKernel::Dense ? dense_paths(g) : sparse_paths(g);
}

}  // namespace

bool prefer_dense(const Graph& g) {
  const double n = static_cast<double>(g.node_count());
  return g.node_count() <= kDensePathLimit && static_cast<double>(g.edge_count()) * kDenseEdgeRatio >= n * n;
}

std::vector<double> betweenness_raw(const Graph& g, PathKernel kernel) {
  return shortest_paths(g, kernel).between;
}

TopoFeatureVector topo_features(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw InvalidArgument("topological features need at least two nodes");
  if (!is_connected(g)) throw InvalidArgument("topological features need a connected graph");

  const double nm1 = static_cast<double>(n - 1);
  PathSummary paths = shortest_paths(g, PathKernel::Auto);
  std::vector<double>& between = paths.between;
  std::vector<double> closeness(n);
  std::vector<double> mean_path(n);
  std::vector<double> eccentricity(n);
  for (NodeId s = 0; s < n; ++s) {
    const double total = static_cast<double>(paths.distance_sum[s]);
    closeness[s] = nm1 / total;
    mean_path[s] = total / nm1;
    eccentricity[s] = static_cast<double>(paths.eccentricity[s]);
  }
  const double pairs = nm1 * static_cast<double>(n - 2) / 2.0;
  for (double& b : between) b = pairs > 0.0 ? b / pairs : 0.0;

  std::vector<double> degree_centrality(n);
  for (NodeId i = 0; i < n; ++i) degree_centrality[i] = static_cast<double>(g.degree(i)) / nm1;

  const auto tri = triangle_counts(g);
  std::vector<double> triangles(tri.begin(), tri.end());

  TopoFeatureVector out{};
  put_stats(out, 0, degree_centrality);
  put_stats(out, 4, between);
  put_stats(out, 8, closeness);
  put_stats(out, 12, clustering_coefficients(g));
  out[16] = *std::max_element(eccentricity.begin(), eccentricity.end());
  out[17] = *std::min_element(eccentricity.begin(), eccentricity.end());
  put_stats(out, 18, triangles);
  put_stats(out, 22, mean_path);
  return out;
}

}  // namespace walk2vec
