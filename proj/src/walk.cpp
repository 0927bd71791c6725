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

#include "walk2vec/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "walk2vec/error.hpp"

namespace walk2vec {
namespace {

void require_no_isolated(const Graph& g, const char* op) {
  if (g.node_count() > 0 && min_degree(g) == 0) {
    throw InvalidArgument(std::string(op) + " requires every node to have degree >= 1");
  }
}

void require_positive_degrees(std::span<const std::size_t> degs) {
  for (std::size_t d : degs) {
    if (d == 0) throw InvalidArgument("zero degree in walk metric");
  }
}

// ⟨D^{-1/2}a, D^{-1/2}b⟩
double weighted_dot(std::span<const double> a, std::span<const double> b,
                    std::span<const std::size_t> degs) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i] / static_cast<double>(degs[i]);
  return acc;
}

double weighted_sqdist(std::span<const double> a, std::span<const double> b,
                       std::span<const std::size_t> degs) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff / static_cast<double>(degs[i]);
  }
  return acc;
}

WalkFeature strict_upper(const StepMatrix& m) {
  WalkFeature out;
  out.reserve(walk_feature_dim(m.size == 0 ? 0 : m.size - 1));
  for (std::size_t s = 0; s < m.size; ++s) {
    for (std::size_t t = s + 1; t < m.size; ++t) out.push_back(m(s, t));
  }
  return out;
}

// Node chosen among `candidates` (all sharing the best degree key) by
// PageRank, highest or lowest; residual ties go to the lowest id.
NodeId break_tie(std::span<const NodeId> candidates, std::span<const double> rank,
                 bool prefer_high, bool& unique) {
  double best = rank[candidates.front()];
  for (NodeId v : candidates) best = prefer_high ? std::max(best, rank[v]) : std::min(best, rank[v]);
  NodeId chosen = candidates.front();
  std::size_t tied = 0;
  bool first = true;
  for (NodeId v : candidates) {
    if (std::abs(rank[v] - best) <= kPageRankTieTolerance) {
      ++tied;
      if (first) {
        chosen = v;
        first = false;
      }
    }
  }
  unique = tied == 1;
  return chosen;
}

}  // namespace

InitialDistribution::InitialDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgument("initial distribution has a negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial distribution sums to " << total << ", not 1";
    throw InvalidArgument(msg.str());
  }
}

std::vector<double> transition_step(const Graph& g, std::span<const double> p) {
  const std::size_t n = g.node_count();
  if (p.size() != n) throw InvalidArgument("distribution length does not match node count");
  require_no_isolated(g, "transition_step");
  std::vector<double> share(n);
  for (NodeId i = 0; i < n; ++i) share[i] = p[i] / static_cast<double>(g.degree(i));
  std::vector<double> out(n);
  for (NodeId j = 0; j < n; ++j) {
    double acc = 0.0;
    for (NodeId i : g.neighbors(j)) acc += share[i];
    out[j] = acc;
  }
  return out;
}

WalkTrajectory walk_trajectory(const Graph& g, const InitialDistribution& p0, std::size_t tau) {
  if (tau < 1) throw InvalidArgument("tau must be >= 1");
  if (p0.size() != g.node_count()) {
    throw InvalidArgument("initial distribution length does not match node count");
  }
  require_no_isolated(g, "walk_trajectory");
  WalkTrajectory traj;
  traj.steps.reserve(tau + 1);
  traj.steps.emplace_back(p0.probs().begin(), p0.probs().end());
  for (std::size_t t = 1; t <= tau; ++t) traj.steps.push_back(transition_step(g, traj.steps.back()));
  return traj;
}

std::vector<double> stationary_distribution(const Graph& g) {
  require_no_isolated(g, "stationary_distribution");
  const double total = 2.0 * static_cast<double>(g.edge_count());
  std::vector<double> w(g.node_count());
  for (NodeId i = 0; i < w.size(); ++i) w[i] = static_cast<double>(g.degree(i)) / total;
  return w;
}

StepMatrix distance_matrix(const WalkTrajectory& traj, std::span<const std::size_t> degs) {
  require_positive_degrees(degs);
  const std::size_t k = traj.steps.size();
  StepMatrix m{k, std::vector<double>(k * k, 0.0)};
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = s + 1; t < k; ++t) {
      const double v = std::sqrt(weighted_sqdist(traj.steps[s], traj.steps[t], degs));
      m.values[s * k + t] = v;
      m.values[t * k + s] = v;
    }
  }
  return m;
}

StepMatrix similarity_matrix(const WalkTrajectory& traj, std::span<const std::size_t> degs) {
  require_positive_degrees(degs);
  const std::size_t k = traj.steps.size();
  std::vector<double> norms(k);
  for (std::size_t s = 0; s < k; ++s) {
    norms[s] = std::sqrt(weighted_dot(traj.steps[s], traj.steps[s], degs));
    if (norms[s] == 0.0) throw NumericalError("walk step " + std::to_string(s) + " has zero norm");
  }
  StepMatrix m{k, std::vector<double>(k * k, 0.0)};
  for (std::size_t s = 0; s < k; ++s) {
    m.values[s * k + s] = 1.0;
    for (std::size_t t = s + 1; t < k; ++t) {
      const double v = std::min(
          1.0, weighted_dot(traj.steps[s], traj.steps[t], degs) / (norms[s] * norms[t]));
      m.values[s * k + t] = v;
      m.values[t * k + s] = v;
    }
  }
  return m;
}

WalkFeature walk_feature(const Graph& g, const InitialDistribution& p0, std::size_t tau,
                         WalkMetric metric) {
  const auto traj = walk_trajectory(g, p0, tau);
  const auto degs = degrees(g);
  return strict_upper(metric == WalkMetric::Distance ? distance_matrix(traj, degs)
                                                     : similarity_matrix(traj, degs));
}

std::vector<double> node_walk_features(const Graph& g, std::size_t tau, WalkMetric metric) {
  if (tau < 1) throw InvalidArgument("tau must be >= 1");
  require_no_isolated(g, "node_walk_features");
  const std::size_t n = g.node_count();
  const std::size_t dim = walk_feature_dim(tau);
  const std::size_t steps = tau + 1;
  constexpr std::size_t kBlock = 64;

  std::vector<double> inv_deg(n);
  for (NodeId i = 0; i < n; ++i) inv_deg[i] = 1.0 / static_cast<double>(g.degree(i));

  std::vector<double> out(n * dim, 0.0);
  // probs[t][r][b]: probability at node r after t steps for source block_start + b.
  std::vector<double> probs(steps * n * kBlock);
  std::vector<double> share(n * kBlock);
  std::vector<double> acc(dim * kBlock);
  std::vector<double> norms(steps * kBlock);

  for (std::size_t block_start = 0; block_start < n; block_start += kBlock) {
    const std::size_t width = std::min(kBlock, n - block_start);
    std::fill(probs.begin(), probs.begin() + static_cast<std::ptrdiff_t>(n * kBlock), 0.0);
    for (std::size_t b = 0; b < width; ++b) probs[(block_start + b) * kBlock + b] = 1.0;

    for (std::size_t t = 1; t < steps; ++t) {
      const double* prev = probs.data() + (t - 1) * n * kBlock;
      double* cur = probs.data() + t * n * kBlock;
      for (std::size_t r = 0; r < n; ++r) {
        const double w = inv_deg[r];
        for (std::size_t b = 0; b < kBlock; ++b) share[r * kBlock + b] = prev[r * kBlock + b] * w;
      }
      for (NodeId r = 0; r < n; ++r) {
        double* row = cur + static_cast<std::size_t>(r) * kBlock;
        std::fill(row, row + kBlock, 0.0);
        for (NodeId c : g.neighbors(r)) {
          const double* src = share.data() + static_cast<std::size_t>(c) * kBlock;
          for (std::size_t b = 0; b < kBlock; ++b) row[b] += src[b];
        }
      }
    }

    std::fill(acc.begin(), acc.end(), 0.0);
    if (metric == WalkMetric::Distance) {
      for (std::size_t r = 0; r < n; ++r) {
        const double w = inv_deg[r];
        std::size_t pair = 0;
        for (std::size_t s = 0; s < steps; ++s) {
          const double* ps = probs.data() + (s * n + r) * kBlock;
          for (std::size_t t = s + 1; t < steps; ++t, ++pair) {
            const double* pt = probs.data() + (t * n + r) * kBlock;
            double* a = acc.data() + pair * kBlock;
            for (std::size_t b = 0; b < kBlock; ++b) {
              const double diff = ps[b] - pt[b];
              a[b] += diff * diff * w;
            }
          }
        }
      }
      for (std::size_t b = 0; b < width; ++b) {
        double* row = out.data() + (block_start + b) * dim;
        for (std::size_t pair = 0; pair < dim; ++pair) row[pair] = std::sqrt(acc[pair * kBlock + b]);
      }
    } else {
      std::fill(norms.begin(), norms.end(), 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        const double w = inv_deg[r];
        std::size_t pair = 0;
        for (std::size_t s = 0; s < steps; ++s) {
          const double* ps = probs.data() + (s * n + r) * kBlock;
          double* ns = norms.data() + s * kBlock;
          for (std::size_t b = 0; b < kBlock; ++b) ns[b] += ps[b] * ps[b] * w;
          for (std::size_t t = s + 1; t < steps; ++t, ++pair) {
            const double* pt = probs.data() + (t * n + r) * kBlock;
            double* a = acc.data() + pair * kBlock;
            for (std::size_t b = 0; b < kBlock; ++b) a[b] += ps[b] * pt[b] * w;
          }
        }
      }
      for (std::size_t b = 0; b < width; ++b) {
        double* row = out.data() + (block_start + b) * dim;
        std::size_t pair = 0;
        for (std::size_t s = 0; s < steps; ++s) {
          for (std::size_t t = s + 1; t < steps; ++t, ++pair) {
            const double denom = std::sqrt(norms[s * kBlock + b]) * std::sqrt(norms[t * kBlock + b]);
            if (denom == 0.0) throw NumericalError("walk step has zero norm");
            row[pair] = std::min(1.0, acc[pair * kBlock + b] / denom);
          }
        }
      }
    }
  }
  return out;
}

Landmarks select_degree_landmarks(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InvalidArgument("landmark selection requires at least one node");
  require_no_isolated(g, "select_degree_landmarks");
  const auto deg = degrees(g);
  const auto rank = pagerank(g);

  auto sorted = deg;
  std::sort(sorted.begin(), sorted.end());
  const double median = static_cast<double>(sorted[(n - 1) / 2]);
  const double mean =
      static_cast<double>(std::accumulate(deg.begin(), deg.end(), std::size_t{0})) /
      static_cast<double>(n);

  // Candidates minimizing key(d_i); exact comparisons on integer-derived keys.
  auto argmin_set = [&](auto key) {
    double best = key(deg[0]);
    for (std::size_t i = 1; i < n; ++i) best = std::min(best, key(deg[i]));
    std::vector<NodeId> out;
    for (NodeId i = 0; i < n; ++i) {
      if (key(deg[i]) == best) out.push_back(i);
    }
    return out;
  };

  const auto max_set = argmin_set([](std::size_t d) { return -static_cast<double>(d); });
  const auto min_set = argmin_set([](std::size_t d) { return static_cast<double>(d); });
  const auto median_set =
      argmin_set([median](std::size_t d) { return std::abs(static_cast<double>(d) - median); });
  const auto mean_set =
      argmin_set([mean](std::size_t d) { return std::abs(static_cast<double>(d) - mean); });

  Landmarks lm;
  lm.nodes[0] = break_tie(max_set, rank, true, lm.unique[0]);
  lm.nodes[1] = break_tie(min_set, rank, false, lm.unique[1]);
  lm.nodes[2] = break_tie(median_set, rank, true, lm.unique[2]);
  lm.nodes[3] = break_tie(mean_set, rank, true, lm.unique[3]);
  return lm;
}

InitialDistribution delta_distribution(std::size_t n, NodeId i) {
  if (i >= n) throw InvalidArgument("delta node " + std::to_string(i) + " out of range");
  std::vector<double> p(n, 0.0);
  p[i] = 1.0;
  return InitialDistribution(std::move(p));
}

InitialDistribution ego_uniform_distribution(const Graph& g, NodeId i) {
  const std::size_t n = g.node_count();
  if (i >= n) throw InvalidArgument("ego node " + std::to_string(i) + " out of range");
  std::vector<double> p(n, 0.0);
  const double mass = 1.0 / static_cast<double>(g.degree(i) + 1);
  p[i] = mass;
  for (NodeId j : g.neighbors(i)) p[j] = mass;
  return InitialDistribution(std::move(p));
}

}  // namespace walk2vec
