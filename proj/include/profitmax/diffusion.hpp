#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "profitmax/errors.hpp"
#include "profitmax/graph.hpp"
#include "profitmax/node_set.hpp"
#include "profitmax/random.hpp"

namespace profitmax {

/// Benefit, cost, and profit of one seed set. profit == benefit - cost.
struct SpreadValue {
  double benefit = 0.0;
  double cost = 0.0;
  double profit = 0.0;
};

enum class Quantity { benefit, cost, profit };

// ---------------------------------------------------------------------------
// Forward Independent Cascade simulation
// ---------------------------------------------------------------------------

/// One IC cascade from `seeds`. Each edge's coin is flipped lazily, once, when
/// its source first activates and its target is still inactive.
inline NodeSet simulate_spread(const WeightedGraph& g, const NodeSet& seeds, Rng& rng) {
  if (seeds.universe() != g.node_count()) throw DomainError("seed set universe does not match the graph");
  NodeSet active = seeds;
  std::vector<NodeId> frontier = seeds.members();
  while (!frontier.empty()) {
    const NodeId u = frontier.back();
    frontier.pop_back();
    for (std::uint32_t ei : g.out_edges(u)) {
      const Edge& e = g.edge(ei);
      if (active.contains(e.target)) continue;
      if (uniform01(rng) < e.probability) {
        active.insert(e.target);
        frontier.push_back(e.target);
      }
    }
  }
  return active;
}

inline NodeSet simulate_spread(const WeightedGraph& g, std::span<const NodeId> seeds, Rng& rng) {
  return simulate_spread(g, NodeSet(g.node_count(), seeds), rng);
}

/// Sample means of benefit/cost/profit over `runs` cascades.
inline SpreadValue monte_carlo_estimate(const WeightedGraph& g, const NodeSet& seeds, std::size_t runs,
                                        std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  double benefit = 0.0, cost = 0.0;
  for (std::size_t i = 0; i < runs; ++i) {
    const NodeSet active = simulate_spread(g, seeds, rng);
    for (NodeId v : active.members()) {
      benefit += g.benefit(v);
      cost += g.cost(v);
    }
  }
  benefit /= static_cast<double>(runs);
  cost /= static_cast<double>(runs);
  return {benefit, cost, benefit - cost};
}

// ---------------------------------------------------------------------------
// Live-edge worlds and the exact oracle
// ---------------------------------------------------------------------------

/// One deterministic outcome of the edge coins: bit i of live_mask says
/// whether edge i is live.
struct LiveEdgeWorld {
  std::uint64_t live_mask = 0;
  double probability = 0.0;
};

inline constexpr std::size_t default_edge_cap = 20;
inline constexpr std::size_t default_node_cap = 16;

/// All 2^|E| worlds in increasing mask order. Worlds of probability zero
/// (an edge with p = 0 live, or p = 1 dead) are dropped.
inline std::vector<LiveEdgeWorld> enumerate_worlds(const WeightedGraph& g, std::size_t edge_cap = default_edge_cap) {
  const std::size_t m = g.edge_count();
  if (m > edge_cap || m >= 63) throw CapacityError("live-edge enumeration needs |E| <= cap, got " + std::to_string(m), edge_cap);
  std::vector<LiveEdgeWorld> worlds;
  const std::uint64_t count = std::uint64_t{1} << m;
  worlds.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double p = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double q = g.edge(i).probability;
      p *= (mask >> i) & 1 ? q : 1.0 - q;
    }
    if (p > 0.0) worlds.push_back({mask, p});
  }
  return worlds;
}

/// Nodes reachable from `seeds` through live edges of `world`.
inline NodeSet reachable(const WeightedGraph& g, const LiveEdgeWorld& world, const NodeSet& seeds) {
  NodeSet seen = seeds;
  std::vector<NodeId> stack = seeds.members();
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (std::uint32_t ei : g.out_edges(u)) {
      if (!((world.live_mask >> ei) & 1)) continue;
      const NodeId v = g.edge(ei).target;
      if (!seen.contains(v)) {
        seen.insert(v);
        stack.push_back(v);
      }
    }
  }
  return seen;
}

/// Exact benefit/cost by enumerating every live-edge world. Values and
/// marginals are memoized per seed set, so repeated queries on small graphs
/// are cheap. Safe to share across threads.
class ExactOracle {
 public:
  explicit ExactOracle(WeightedGraph g, std::size_t edge_cap = default_edge_cap)
      : graph_(std::move(g)), worlds_(enumerate_worlds(graph_, edge_cap)) {
    if (graph_.node_count() > 64) throw CapacityError("exact oracle supports at most 64 nodes", 64);
  }

  const WeightedGraph& graph() const noexcept { return graph_; }
  std::size_t node_count() const noexcept { return graph_.node_count(); }
  std::span<const LiveEdgeWorld> worlds() const noexcept { return worlds_; }

  double world_probability_total() const {
    double total = 0.0;
    for (const auto& w : worlds_) total += w.probability;
    return total;
  }

  SpreadValue evaluate(const NodeSet& seeds) const {
    const std::uint64_t mask = to_mask(seeds);
    {
      std::lock_guard lock(mutex_);
      if (auto it = values_.find(mask); it != values_.end()) return it->second;
    }
    double benefit = 0.0, cost = 0.0;
    std::vector<NodeId> stack;
    for (const auto& w : worlds_) {
      const std::uint64_t reach = closure(w.live_mask, mask, 0, stack);
      auto [b, c] = weigh(reach);
      benefit += w.probability * b;
      cost += w.probability * c;
    }
    SpreadValue out{benefit, cost, benefit - cost};
    std::lock_guard lock(mutex_);
    values_.emplace(mask, out);
    return out;
  }

  double value(Metric m, const NodeSet& seeds) const {
    const SpreadValue v = evaluate(seeds);
    return m == Metric::benefit ? v.benefit : v.cost;
  }

  /// f(base ∪ {v}) - f(base \ {v}), summed world by world over the nodes that
  /// v newly reaches, so marginals that are mathematically zero come out as
  /// exactly zero.
  SpreadValue marginal(NodeId v, const NodeSet& base) const {
    std::uint64_t mask = to_mask(base);
    if (v >= node_count()) throw DomainError("node id out of range");
    mask &= ~(std::uint64_t{1} << v);
    const Key key{mask, v};
    {
      std::lock_guard lock(mutex_);
      if (auto it = marginals_.find(key); it != marginals_.end()) return it->second;
    }
    double benefit = 0.0, cost = 0.0;
    std::vector<NodeId> stack;
    for (const auto& w : worlds_) {
      const std::uint64_t before = closure(w.live_mask, mask, 0, stack);
      if ((before >> v) & 1) continue;
      const std::uint64_t after = closure(w.live_mask, std::uint64_t{1} << v, before, stack);
      auto [b, c] = weigh(after & ~before);
      benefit += w.probability * b;
      cost += w.probability * c;
    }
    SpreadValue out{benefit, cost, benefit - cost};
    std::lock_guard lock(mutex_);
    marginals_.emplace(key, out);
    return out;
  }

  std::vector<double> gains(Metric m, const NodeSet& base, std::span<const NodeId> nodes) const {
    std::vector<double> out;
    out.reserve(nodes.size());
    for (NodeId v : nodes) {
      const SpreadValue g = marginal(v, base);
      out.push_back(m == Metric::benefit ? g.benefit : g.cost);
    }
    return out;
  }

  /// Successive gains f(S_i) - f(S_{i-1}) along the chain S_i = order[0..i].
  std::vector<double> chain_gains(Metric m, std::span<const NodeId> order) const {
    std::vector<double> out;
    out.reserve(order.size());
    NodeSet prefix(node_count());
    for (NodeId v : order) {
      const SpreadValue g = marginal(v, prefix);
      out.push_back(m == Metric::benefit ? g.benefit : g.cost);
      prefix.insert(v);
    }
    return out;
  }

 private:
  struct Key {
    std::uint64_t mask;
    NodeId node;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return std::hash<std::uint64_t>{}(k.mask * 131 + k.node); }
  };

  std::uint64_t to_mask(const NodeSet& s) const {
    if (s.universe() != node_count()) throw DomainError("node set universe does not match the graph");
    std::uint64_t mask = 0;
    for (NodeId v : s.members()) mask |= std::uint64_t{1} << v;
    return mask;
  }

  /// Extends `reached` by everything reachable from `sources` over live edges.
  std::uint64_t closure(std::uint64_t live, std::uint64_t sources, std::uint64_t reached,
                        std::vector<NodeId>& stack) const {
    stack.clear();
    for (std::uint64_t s = sources & ~reached; s; s &= s - 1) stack.push_back(static_cast<NodeId>(std::countr_zero(s)));
    reached |= sources;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (std::uint32_t ei : graph_.out_edges(u)) {
        if (!((live >> ei) & 1)) continue;
        const NodeId t = graph_.edge(ei).target;
        if (!((reached >> t) & 1)) {
          reached |= std::uint64_t{1} << t;
          stack.push_back(t);
        }
      }
    }
    return reached;
  }

  std::pair<double, double> weigh(std::uint64_t nodes) const {
    double b = 0.0, c = 0.0;
    for (; nodes; nodes &= nodes - 1) {
      const auto v = static_cast<NodeId>(std::countr_zero(nodes));
      b += graph_.benefit(v);
      c += graph_.cost(v);
    }
    return {b, c};
  }

  WeightedGraph graph_;
  std::vector<LiveEdgeWorld> worlds_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, SpreadValue> values_;
  mutable std::unordered_map<Key, SpreadValue, KeyHash> marginals_;
};

inline SpreadValue exact_evaluate(const WeightedGraph& g, const NodeSet& seeds,
                                  std::size_t edge_cap = default_edge_cap) {
  return ExactOracle(g, edge_cap).evaluate(seeds);
}

/// f(base ∪ {v}) - f(base) for v not in base.
inline double exact_marginal(const WeightedGraph& g, const NodeSet& base, NodeId v, Quantity q,
                             std::size_t edge_cap = default_edge_cap) {
  if (base.contains(v)) throw DomainError("marginal node must not belong to the base set");
  const SpreadValue d = ExactOracle(g, edge_cap).marginal(v, base);
  switch (q) {
    case Quantity::benefit: return d.benefit;
    case Quantity::cost: return d.cost;
    case Quantity::profit: return d.profit;
  }
  return d.profit;
}

/// True when a's sorted member list precedes b's lexicographically.
inline bool lexicographically_less(const NodeSet& a, const NodeSet& b) {
  const auto x = a.members(), y = b.members();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

struct Optimum {
  NodeSet seeds;
  double profit = 0.0;
};

/// Every seed set whose exact profit is within `tolerance` of the maximum.
inline std::vector<Optimum> all_optima(const ExactOracle& oracle, double tolerance = 1e-9,
                                       std::size_t node_cap = default_node_cap) {
  const std::size_t n = oracle.node_count();
  if (n > node_cap) throw CapacityError("exhaustive search needs |V| <= cap, got " + std::to_string(n), node_cap);
  std::vector<Optimum> all;
  all.reserve(std::size_t{1} << n);
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    NodeSet s(n);
    for (std::uint64_t m = mask; m; m &= m - 1) s.insert(static_cast<NodeId>(std::countr_zero(m)));
    const double phi = oracle.evaluate(s).profit;
    best = std::max(best, phi);
    all.push_back({std::move(s), phi});
  }
  std::erase_if(all, [&](const Optimum& o) { return o.profit < best - tolerance; });
  std::sort(all.begin(), all.end(),
            [](const Optimum& a, const Optimum& b) { return lexicographically_less(a.seeds, b.seeds); });
  return all;
}

/// Maximum-profit seed set; among sets within `tolerance` of the maximum, the
/// lexicographically smallest one.
inline Optimum exhaustive_optimum(const ExactOracle& oracle, double tolerance = 1e-9,
                                  std::size_t node_cap = default_node_cap) {
  return all_optima(oracle, tolerance, node_cap).front();
}

inline Optimum exhaustive_optimum(const WeightedGraph& g, std::size_t node_cap = default_node_cap,
                                  std::size_t edge_cap = default_edge_cap) {
  if (g.node_count() > node_cap)
    throw CapacityError("exhaustive search needs |V| <= cap, got " + std::to_string(g.node_count()), node_cap);
  return exhaustive_optimum(ExactOracle(g, edge_cap), 1e-9, node_cap);
}

}  // namespace profitmax
