#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "profitmax/errors.hpp"
#include "profitmax/node_set.hpp"

namespace profitmax {

/// Which per-node weight a quantity refers to.
enum class Metric { benefit, cost };

inline const char* to_string(Metric m) { return m == Metric::benefit ? "benefit" : "cost"; }

struct Edge {
  NodeId source;
  NodeId target;
  double probability;
};

struct WeightTotals {
  double upsilon_b = 0.0;
  double upsilon_c = 0.0;

  double of(Metric m) const noexcept { return m == Metric::benefit ? upsilon_b : upsilon_c; }
};

/// Directed graph with per-edge propagation probabilities and per-node
/// benefit/cost weights. Immutable once built; node ids are dense 0..n-1 and
/// the original ids live in a remap table.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates and indexes the graph. `external_ids` defaults to the identity.
  static WeightedGraph build(std::size_t node_count, std::vector<Edge> edges,
                             std::vector<double> benefit, std::vector<double> cost,
                             std::vector<std::uint64_t> external_ids = {},
                             bool normalized = false) {
    WeightedGraph g;
    g.node_count_ = node_count;
    g.edges_ = std::move(edges);
    g.benefit_ = std::move(benefit);
    g.cost_ = std::move(cost);
    g.external_ids_ = std::move(external_ids);
    g.normalized_ = normalized;

    if (g.benefit_.empty()) g.benefit_.assign(node_count, 0.0);
    if (g.cost_.empty()) g.cost_.assign(node_count, 0.0);
    if (g.benefit_.size() != node_count || g.cost_.size() != node_count)
      throw DomainError("weight vectors must have one entry per node");
    if (g.external_ids_.empty()) {
      g.external_ids_.resize(node_count);
      std::iota(g.external_ids_.begin(), g.external_ids_.end(), std::uint64_t{0});
    }
    if (g.external_ids_.size() != node_count)
      throw DomainError("remap table must have one entry per node");

    for (std::size_t v = 0; v < node_count; ++v) {
      if (!(g.benefit_[v] >= 0.0) || !std::isfinite(g.benefit_[v]))
        throw DomainError("benefit of node " + std::to_string(g.external_ids_[v]) + " must be a finite value >= 0");
      if (!(g.cost_[v] >= 0.0) || !std::isfinite(g.cost_[v]))
        throw DomainError("cost of node " + std::to_string(g.external_ids_[v]) + " must be a finite value >= 0");
      if (normalized && std::min(g.benefit_[v], g.cost_[v]) != 0.0)
        throw DomainError("normalized weights must have min(b, c) = 0 at every node");
    }
    for (std::size_t i = 0; i < node_count; ++i) {
      auto [it, fresh] = g.internal_ids_.emplace(g.external_ids_[i], static_cast<NodeId>(i));
      if (!fresh) throw DomainError("duplicate external id " + std::to_string(g.external_ids_[i]));
    }

    std::vector<std::uint64_t> keys;
    keys.reserve(g.edges_.size());
    for (const Edge& e : g.edges_) {
      if (e.source >= node_count || e.target >= node_count) throw DomainError("edge endpoint out of range");
      if (e.source == e.target)
        throw DomainError("self-loop on node " + std::to_string(g.external_ids_[e.source]));
      if (!(e.probability >= 0.0 && e.probability <= 1.0))
        throw DomainError("edge probability " + std::to_string(e.probability) + " outside [0,1]");
      keys.push_back((std::uint64_t{e.source} << 32) | e.target);
    }
    std::sort(keys.begin(), keys.end());
    if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end())
      throw DomainError("duplicate edge " + std::to_string(g.external_ids_[*dup >> 32]) + " -> " +
                        std::to_string(g.external_ids_[*dup & 0xffffffffULL]));

    g.index();
    return g;
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  /// Indices into edges() of the edges leaving / entering v.
  std::span<const std::uint32_t> out_edges(NodeId v) const {
    return {out_list_.data() + out_offset_[v], out_list_.data() + out_offset_[v + 1]};
  }
  std::span<const std::uint32_t> in_edges(NodeId v) const {
    return {in_list_.data() + in_offset_[v], in_list_.data() + in_offset_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const { return out_offset_[v + 1] - out_offset_[v]; }
  std::size_t in_degree(NodeId v) const { return in_offset_[v + 1] - in_offset_[v]; }

  std::span<const double> benefit() const noexcept { return benefit_; }
  std::span<const double> cost() const noexcept { return cost_; }
  std::span<const double> weights(Metric m) const noexcept { return m == Metric::benefit ? benefit_ : cost_; }
  double benefit(NodeId v) const { return benefit_[v]; }
  double cost(NodeId v) const { return cost_[v]; }
  /// w(v) = b(v) - c(v), the profit of activating v.
  double net_weight(NodeId v) const { return benefit_[v] - cost_[v]; }
  bool normalized() const noexcept { return normalized_; }

  std::uint64_t external_id(NodeId v) const { return external_ids_[v]; }
  std::span<const std::uint64_t> external_ids() const noexcept { return external_ids_; }
  std::optional<NodeId> internal_id(std::uint64_t external) const {
    auto it = internal_ids_.find(external);
    if (it == internal_ids_.end()) return std::nullopt;
    return it->second;
  }

  NodeSet all_nodes() const { return NodeSet::full(node_count_); }

  WeightTotals totals() const {
    return {std::accumulate(benefit_.begin(), benefit_.end(), 0.0),
            std::accumulate(cost_.begin(), cost_.end(), 0.0)};
  }

  /// Same topology with a different weight assignment.
  WeightedGraph with_weights(std::vector<double> benefit, std::vector<double> cost,
                             bool normalized = false) const {
    return build(node_count_, edges_, std::move(benefit), std::move(cost), external_ids_, normalized);
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.node_count_ != b.node_count_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const Edge &x = a.edges_[i], &y = b.edges_[i];
      if (x.source != y.source || x.target != y.target || x.probability != y.probability) return false;
    }
    return a.benefit_ == b.benefit_ && a.cost_ == b.cost_ && a.external_ids_ == b.external_ids_ &&
           a.normalized_ == b.normalized_;
  }

 private:
  void index() {
    out_offset_.assign(node_count_ + 1, 0);
    in_offset_.assign(node_count_ + 1, 0);
    for (const Edge& e : edges_) {
      ++out_offset_[e.source + 1];
      ++in_offset_[e.target + 1];
    }
    std::partial_sum(out_offset_.begin(), out_offset_.end(), out_offset_.begin());
    std::partial_sum(in_offset_.begin(), in_offset_.end(), in_offset_.begin());
    out_list_.resize(edges_.size());
    in_list_.resize(edges_.size());
    std::vector<std::uint32_t> out_fill(out_offset_.begin(), out_offset_.end() - 1);
    std::vector<std::uint32_t> in_fill(in_offset_.begin(), in_offset_.end() - 1);
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
      out_list_[out_fill[edges_[i].source]++] = i;
      in_list_[in_fill[edges_[i].target]++] = i;
    }
  }

  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> benefit_;
  std::vector<double> cost_;
  std::vector<std::uint64_t> external_ids_;
  std::unordered_map<std::uint64_t, NodeId> internal_ids_;
  bool normalized_ = false;
  std::vector<std::uint32_t> out_offset_, in_offset_;
  std::vector<std::uint32_t> out_list_, in_list_;
};

enum class WeightDistribution { uniform, degree_proportional };

/// Uniform gives every node weight 1; degree-proportional gives out-degree(v).
/// Costs are then rescaled so that sum(c) = r * sum(b).
inline WeightedGraph assign_weights(const WeightedGraph& g, WeightDistribution benefit_dist,
                                    WeightDistribution cost_dist, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("scale factor r must be > 0");
  const std::size_t n = g.node_count();
  auto raw = [&](WeightDistribution d) {
    std::vector<double> w(n);
    for (NodeId v = 0; v < n; ++v)
      w[v] = d == WeightDistribution::uniform ? 1.0 : static_cast<double>(g.out_degree(v));
    return w;
  };
  std::vector<double> benefit = raw(benefit_dist);
  std::vector<double> cost = raw(cost_dist);
  const double benefit_total = std::accumulate(benefit.begin(), benefit.end(), 0.0);
  const double cost_total = std::accumulate(cost.begin(), cost.end(), 0.0);
  const double scale = cost_total > 0.0 ? r * benefit_total / cost_total : 0.0;
  for (double& c : cost) c *= scale;
  return g.with_weights(std::move(benefit), std::move(cost));
}

/// One row of an explicit weights file, keyed by external node id.
struct WeightRow {
  std::uint64_t node;
  double benefit;
  double cost;
};

/// Overrides the weights of the listed nodes verbatim.
inline WeightedGraph apply_weight_rows(const WeightedGraph& g, std::span<const WeightRow> rows) {
  std::vector<double> benefit(g.benefit().begin(), g.benefit().end());
  std::vector<double> cost(g.cost().begin(), g.cost().end());
  for (const WeightRow& row : rows) {
    auto v = g.internal_id(row.node);
    if (!v) throw DomainError("weights refer to unknown node " + std::to_string(row.node));
    benefit[*v] = row.benefit;
    cost[*v] = row.cost;
  }
  return g.with_weights(std::move(benefit), std::move(cost));
}

/// b̄(v) = max{0, w(v)}, c̄(v) = max{0, -w(v)}. Idempotent; w(v) unchanged.
inline WeightedGraph normalize_weights(const WeightedGraph& g) {
  if (g.normalized()) return g;
  const std::size_t n = g.node_count();
  std::vector<double> benefit(n), cost(n);
  for (NodeId v = 0; v < n; ++v) {
    const double w = g.net_weight(v);
    benefit[v] = std::max(0.0, w);
    cost[v] = std::max(0.0, -w);
  }
  return g.with_weights(std::move(benefit), std::move(cost), true);
}

}  // namespace profitmax
