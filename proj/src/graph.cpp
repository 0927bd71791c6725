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

#include "walk2vec/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "walk2vec/error.hpp"

namespace walk2vec {

Graph Graph::from_edge_list(std::size_t n, std::span<const Edge> edges) {
  if (n > std::size_t{1} << 32) throw InvalidArgument("node count exceeds 32-bit ids");
  std::vector<std::size_t> counts(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      std::ostringstream msg;
      msg << "edge (" << u << ", " << v << ") has an endpoint outside [0, " << n << ")";
      throw InvalidArgument(msg.str());
    }
    if (u == v) {
      throw InvalidArgument("self-loop on node " + std::to_string(u));
    }
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];

  std::vector<NodeId> raw(counts[n]);
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  g.neighbors_.reserve(raw.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[i]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[i + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    g.neighbors_.insert(g.neighbors_.end(), first, last);
    g.offsets_[i + 1] = g.neighbors_.size();
  }
  g.neighbors_.shrink_to_fit();
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  const std::size_t n = node_count();
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Permutation::Permutation(std::vector<NodeId> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (NodeId target : mapping_) {
    if (target >= mapping_.size() || seen[target]) {
      throw InvalidArgument("permutation is not a bijection");
    }
    seen[target] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<NodeId> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<NodeId>(i);
  return Permutation(std::move(m));
}

std::vector<std::size_t> degrees(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> d(n);
  for (NodeId i = 0; i < n; ++i) d[i] = g.degree(i);
  return d;
}

std::size_t min_degree(const Graph& g) {
  const std::size_t n = g.node_count();
  std::size_t m = n == 0 ? 0 : g.degree(0);
  for (NodeId i = 1; i < n; ++i) m = std::min(m, g.degree(i));
  return m;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InvalidArgument("is_connected requires at least one node");
  std::vector<bool> seen(n, false);
  std::vector<NodeId> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (NodeId v : g.neighbors(queue[head])) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return queue.size() == n;
}

Graph permute(const Graph& g, const Permutation& pi) {
  if (pi.size() != g.node_count()) {
    throw InvalidArgument("permutation size " + std::to_string(pi.size()) +
                          " does not match node count " + std::to_string(g.node_count()));
  }
  auto edges = g.edges();
  for (auto& [u, v] : edges) {
    u = pi(u);
    v = pi(v);
  }
  return Graph::from_edge_list(g.node_count(), edges);
}

std::vector<double> pagerank(const Graph& g, const PageRankOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  if (min_degree(g) == 0) throw InvalidArgument("pagerank requires every node to have degree >= 1");

  const double teleport = (1.0 - options.damping) / static_cast<double>(n);
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> share(n);
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    for (NodeId i = 0; i < n; ++i) share[i] = x[i] / static_cast<double>(g.degree(i));
    double change = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      double acc = 0.0;
      for (NodeId j : g.neighbors(i)) acc += share[j];
      next[i] = teleport + options.damping * acc;
      change += std::abs(next[i] - x[i]);
    }
    x.swap(next);
    if (change <= options.tol) return x;
  }
  throw NumericalError("pagerank did not converge within " + std::to_string(options.max_iter) +
                       " iterations");
}

std::vector<std::size_t> triangle_counts(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> tri(n, 0);
  // Bit rows make the intersections word-parallel; fall back to sorted merges
  // when the bit matrix would be too large.
  constexpr std::size_t kBitsetLimit = 16384;
  if (n <= kBitsetLimit) {
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j : g.neighbors(i)) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    for (NodeId i = 0; i < n; ++i) {
      const std::uint64_t* row_i = bits.data() + i * words;
      std::size_t twice = 0;
      for (NodeId u : g.neighbors(i)) {
        const std::uint64_t* row_u = bits.data() + static_cast<std::size_t>(u) * words;
        for (std::size_t w = 0; w < words; ++w) twice += std::popcount(row_i[w] & row_u[w]);
      }
      tri[i] = twice / 2;
    }
    return tri;
  }
  for (NodeId i = 0; i < n; ++i) {
    const auto ni = g.neighbors(i);
    std::size_t twice = 0;
    for (NodeId u : ni) {
      const auto nu = g.neighbors(u);
      auto a = ni.begin();
      auto b = nu.begin();
      while (a != ni.end() && b != nu.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++twice;
          ++a;
          ++b;
        }
      }
    }
    tri[i] = twice / 2;
  }
  return tri;
}

std::vector<double> clustering_coefficients(const Graph& g) {
  const auto tri = triangle_counts(g);
  std::vector<double> c(tri.size(), 0.0);
  for (NodeId i = 0; i < tri.size(); ++i) {
    const double d = static_cast<double>(g.degree(i));
    if (d >= 2) c[i] = 2.0 * static_cast<double>(tri[i]) / (d * (d - 1.0));
  }
  return c;
}

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw IoError("edge list is empty");
  std::size_t n = 0;
  std::size_t m = 0;
  {
    std::istringstream header(line);
    if (!(header >> n >> m)) throw IoError("edge list line 1: expected \"n m\"");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!next_line()) {
      throw IoError("edge list ended after " + std::to_string(k) + " of " + std::to_string(m) +
                    " edges");
    }
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) {
      throw IoError("edge list line " + std::to_string(lineno) + ": expected \"i j\"");
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return Graph::from_edge_list(n, edges);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_edge_list(os, g);
  if (!os) throw IoError("write failed: " + path);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  return read_edge_list(is);
}

}  // namespace walk2vec
