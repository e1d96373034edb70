#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "profitmax/errors.hpp"
#include "profitmax/graph.hpp"
#include "profitmax/random.hpp"

namespace profitmax {

/// Small instance for brute-force checks: up to `max_nodes` nodes (at least
/// 2), up to `max_edges` distinct directed edges, probabilities uniform in
/// [0,1), benefit and cost uniform in [0, weight_scale).
inline WeightedGraph random_small_graph(Rng& rng, std::size_t max_nodes = 7, std::size_t max_edges = 12,
                                        double weight_scale = 4.0) {
  if (max_nodes < 2) throw DomainError("random_small_graph needs max_nodes >= 2");
  const std::size_t n = 2 + uniform_index(rng, max_nodes - 1);
  const std::size_t cap = std::min(max_edges, n * (n - 1));
  const std::size_t m = uniform_index(rng, cap + 1);
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<Edge> edges;
  while (edges.size() < m) {
    const auto u = static_cast<NodeId>(uniform_index(rng, n));
    const auto v = static_cast<NodeId>(uniform_index(rng, n));
    if (u == v || !used.emplace(u, v).second) continue;
    edges.push_back({u, v, uniform01(rng)});
  }
  std::vector<double> benefit(n), cost(n);
  for (std::size_t v = 0; v < n; ++v) {
    benefit[v] = weight_scale * uniform01(rng);
    cost[v] = weight_scale * uniform01(rng);
  }
  return WeightedGraph::build(n, std::move(edges), std::move(benefit), std::move(cost));
}

/// Directed random graph with `n` nodes and about n·avg_out_degree edges whose
/// endpoints are chosen with probability proportional to a power-law
/// popularity score, weighted-cascade probabilities (1/in-degree), uniform
/// benefit, and out-degree cost scaled so Σc = r·Σb.
inline WeightedGraph synthetic_social_graph(std::size_t n, double avg_out_degree, double r, std::uint64_t seed) {
  if (n < 2) throw DomainError("synthetic graph needs at least 2 nodes");
  Rng rng = make_rng(seed, 0);
  // Popularity ~ 1/(rank+1)^0.8 via cumulative table.
  std::vector<double> cumulative(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) cumulative[i] = total += 1.0 / std::pow(static_cast<double>(i + 1), 0.8);
  auto pick = [&] {
    const double x = uniform01(rng) * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return static_cast<NodeId>(std::min<std::size_t>(it - cumulative.begin(), n - 1));
  };
  const auto target_edges = static_cast<std::size_t>(avg_out_degree * static_cast<double>(n));
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<Edge> edges;
  std::size_t attempts = 0;
  while (edges.size() < target_edges && attempts++ < 20 * target_edges) {
    const auto u = static_cast<NodeId>(uniform_index(rng, n));
    const NodeId v = pick();
    if (u == v || !used.emplace(u, v).second) continue;
    edges.push_back({u, v, 0.0});
  }
  std::vector<std::size_t> in_degree(n, 0);
  for (const Edge& e : edges) ++in_degree[e.target];
  for (Edge& e : edges) e.probability = 1.0 / static_cast<double>(in_degree[e.target]);
  const WeightedGraph bare = WeightedGraph::build(n, std::move(edges), std::vector<double>(n, 0.0),
                                                  std::vector<double>(n, 0.0));
  return assign_weights(bare, WeightDistribution::uniform, WeightDistribution::degree_proportional, r);
}

}  // namespace profitmax
