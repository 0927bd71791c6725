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

#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "walk2vec/error.hpp"
#include "walk2vec/graph.hpp"

using namespace walk2vec;

namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return Graph::from_edge_list(n, e);
}

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<NodeId> m(n);
  std::iota(m.begin(), m.end(), NodeId{0});
  std::shuffle(m.begin(), m.end(), rng);
  return Permutation(m);
}

}  // namespace

TEST_CASE("edge list construction sorts, deduplicates and validates") {
  const std::vector<Edge> e{{2, 0}, {0, 1}, {1, 0}, {1, 2}};
  const Graph g = Graph::from_edge_list(3, e);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(2, 0));
  const auto nb = g.neighbors(0);
  CHECK(std::vector<NodeId>(nb.begin(), nb.end()) == std::vector<NodeId>{1, 2});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});

  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(Graph::from_edge_list(3, loop), InvalidArgument);
  const std::vector<Edge> out_of_range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edge_list(3, out_of_range), InvalidArgument);
}

TEST_CASE("degrees, connectivity and the empty graph") {
  const Graph g = Graph::from_edge_list(4, std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK(degrees(g) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(min_degree(g) == 1);
  CHECK_FALSE(is_connected(g));
  CHECK(is_connected(cycle(5)));
  CHECK_THROWS_AS(is_connected(Graph::from_edge_list(0, {})), InvalidArgument);
}

TEST_CASE("permutations must be bijections and relabel edges") {
  CHECK_THROWS_AS(Permutation(std::vector<NodeId>{0, 0, 1}), InvalidArgument);
  const Graph path = Graph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const Graph moved = permute(path, Permutation(std::vector<NodeId>{2, 0, 1}));
  CHECK(moved.has_edge(2, 0));
  CHECK(moved.has_edge(0, 1));
  CHECK_FALSE(moved.has_edge(2, 1));
  CHECK(permute(path, Permutation::identity(3)) == path);
}

TEST_CASE("pagerank is uniform on a regular graph and sums to one") {
  const auto pr = pagerank(cycle(7));
  for (double v : pr) CHECK(v == doctest::Approx(1.0 / 7.0).epsilon(1e-12));

  std::mt19937_64 rng(11);
  const Graph g = oracle::random_graph(40, 0.1, rng);
  const auto r = pagerank(g);
  CHECK(std::accumulate(r.begin(), r.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(pagerank(Graph::from_edge_list(3, std::vector<Edge>{{0, 1}})), InvalidArgument);
}

TEST_CASE("pagerank commutes with relabeling") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = oracle::random_graph(50, 0.08, rng);
    const Permutation pi = random_permutation(50, rng);
    const auto base = pagerank(g);
    const auto moved = pagerank(permute(g, pi));
    for (NodeId i = 0; i < 50; ++i) CHECK(std::abs(base[i] - moved[pi(i)]) < 1e-12);
  }
}

TEST_CASE("triangle counts and clustering match triple enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_graph(25, 0.3, rng);
    const auto tri = triangle_counts(g);
    const auto ref = oracle::brute_triangles(g);
    const auto cc = clustering_coefficients(g);
    for (NodeId i = 0; i < 25; ++i) {
      CHECK(static_cast<double>(tri[i]) == ref[i]);
      const double d = static_cast<double>(g.degree(i));
      const double expect = d < 2 ? 0.0 : 2.0 * ref[i] / (d * (d - 1));
      CHECK(cc[i] == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

TEST_CASE("edge list files round-trip") {
  std::mt19937_64 rng(9);
  const Graph g = oracle::random_graph(30, 0.2, rng);
  std::stringstream buf;
  write_edge_list(buf, g);
  CHECK(read_edge_list(buf) == g);

  std::stringstream bad("3 2\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad), IoError);
  std::stringstream junk("x y\n");
  CHECK_THROWS_AS(read_edge_list(junk), IoError);
}
