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

#include "walk2vec/generators.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "walk2vec/error.hpp"

namespace walk2vec {
namespace {

// Stream tags keep auxiliary draws (block shuffle, clique choice) off the
// pair stream.
constexpr std::uint64_t kBlockStream = 0x626c6f636bULL;   // "block"
constexpr std::uint64_t kCliqueStream = 0x636c69717565ULL;  // "clique"

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << p << " is outside [0, 1]";
    throw InvalidArgument(msg.str());
  }
}

// Draws every pair in lexicographic order; `prob(i, j)` picks the edge
// probability for the pair.
template <typename ProbFn>
Graph sample_pairs(std::size_t n, Seed seed, ProbFn prob) {
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.uniform() < prob(i, j)) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edge_list(n, edges);
}

template <typename Attempt>
auto with_resampling(Seed seed, const char* model, Attempt attempt) {
  for (int a = 0; a < kMaxResampleAttempts; ++a) {
    const Seed s{seed.value + static_cast<std::uint64_t>(a)};
    auto result = attempt(s);
    if (result) return std::move(*result);
  }
  std::ostringstream msg;
  msg << model << ": no sample with minimum degree >= 1 after " << kMaxResampleAttempts
      << " attempts (seed " << seed.value << ")";
  throw GenerationError(msg.str());
}

}  // namespace

Graph gen_er(std::size_t n, double p, Seed seed) {
  if (n < 2) throw InvalidArgument("gen_er requires n >= 2");
  check_probability(p, "p");
  return with_resampling(seed, "er", [&](Seed s) -> std::optional<Graph> {
    Graph g = sample_pairs(n, s, [p](NodeId, NodeId) { return p; });
    if (min_degree(g) == 0) return std::nullopt;
    return g;
  });
}

std::pair<double, double> sbm_params_from(double p, double delta) {
  const double p_in = p + delta / 2.0;
  const double p_out = p - delta / 2.0;
  if (!(p_out >= 0.0 && p_in <= 1.0 && delta >= 0.0)) {
    std::ostringstream msg;
    msg << "sbm_params_from(p=" << p << ", delta=" << delta << ") gives p_in=" << p_in
        << ", p_out=" << p_out << " outside 0 <= p_out <= p_in <= 1";
    throw InvalidArgument(msg.str());
  }
  return {p_in, p_out};
}

std::vector<int> sbm_blocks(std::size_t n, Seed seed) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  SplitMix64 rng(derive_seed(seed, {kBlockStream}));
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  const std::size_t first_block = (n + 1) / 2;
  std::vector<int> block(n);
  for (std::size_t slot = 0; slot < n; ++slot) block[order[slot]] = slot < first_block ? 0 : 1;
  return block;
}

Graph gen_sbm(std::size_t n, double p_in, double p_out, Seed seed) {
  if (n < 4) throw InvalidArgument("gen_sbm requires n >= 4");
  check_probability(p_in, "p_in");
  check_probability(p_out, "p_out");
  if (p_in < p_out) throw InvalidArgument("gen_sbm requires p_in >= p_out");
  return with_resampling(seed, "sbm", [&](Seed s) -> std::optional<Graph> {
    const auto block = sbm_blocks(n, s);
    Graph g = sample_pairs(n, s, [&](NodeId i, NodeId j) {
      return block[i] == block[j] ? p_in : p_out;
    });
    if (min_degree(g) == 0) return std::nullopt;
    return g;
  });
}

PlantedClique gen_planted_clique_with_members(std::size_t n, double p, std::size_t k, Seed seed) {
  if (k < 2 || k > n) {
    throw InvalidArgument("planted clique size k = " + std::to_string(k) + " must lie in [2, n]");
  }
  check_probability(p, "p");
  return with_resampling(seed, "planted-clique", [&](Seed s) -> std::optional<PlantedClique> {
    Graph base = sample_pairs(n, s, [p](NodeId, NodeId) { return p; });
    if (min_degree(base) == 0) return std::nullopt;

    // Partial Fisher-Yates picks a uniform k-subset.
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    SplitMix64 rng(derive_seed(s, {kCliqueStream}));
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(order[i], order[i + rng.below(n - i)]);
    }
    std::vector<NodeId> members(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(members.begin(), members.end());

    auto edges = base.edges();
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) edges.emplace_back(members[a], members[b]);
    }
    return PlantedClique{Graph::from_edge_list(n, edges), std::move(members)};
  });
}

Graph generate(const ModelParams& params, Seed seed) {
  struct Visitor {
    std::size_t n;
    Seed seed;
    Graph operator()(const ErParams& er) const { return gen_er(n, er.p, seed); }
    Graph operator()(const SbmParams& sbm) const { return gen_sbm(n, sbm.p_in, sbm.p_out, seed); }
    Graph operator()(const PlantedCliqueParams& pc) const {
      return gen_planted_clique(n, pc.p, pc.k, seed);
    }
  };
  return std::visit(Visitor{params.n, seed}, params.variant);
}

}  // namespace walk2vec
