#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "profitmax/graph.hpp"
#include "profitmax/node_set.hpp"

namespace profitmax {

/// A pair of submodular set functions (benefit β, cost γ) over the nodes of a
/// graph, evaluated either exactly or on frozen RR collections.
///
/// gains(m, base, nodes)[i] is f(base ∪ {v}) - f(base \ {v}) for v = nodes[i],
/// i.e. the marginal of v on base with v itself removed; for v ∉ base this is
/// the usual f(v | base). chain_gains(m, order)[i] is f(S_i) - f(S_{i-1}) with
/// S_i the first i+1 nodes of `order`.
template <class E>
concept ProfitEvaluator = requires(const E& e, Metric m, const NodeSet& s, std::span<const NodeId> nodes) {
  { e.node_count() } -> std::convertible_to<std::size_t>;
  { e.value(m, s) } -> std::convertible_to<double>;
  { e.gains(m, s, nodes) } -> std::convertible_to<std::vector<double>>;
  { e.chain_gains(m, nodes) } -> std::convertible_to<std::vector<double>>;
};

template <ProfitEvaluator E>
double profit(const E& e, const NodeSet& s) {
  return e.value(Metric::benefit, s) - e.value(Metric::cost, s);
}

/// φ(v | base \ {v}) for each v in `nodes`.
template <ProfitEvaluator E>
std::vector<double> profit_gains(const E& e, const NodeSet& base, std::span<const NodeId> nodes) {
  auto out = e.gains(Metric::benefit, base, nodes);
  const auto cost = e.gains(Metric::cost, base, nodes);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= cost[i];
  return out;
}

template <ProfitEvaluator E>
double gain(const E& e, Metric m, const NodeSet& base, NodeId v) {
  const NodeId one[] = {v};
  return e.gains(m, base, one).front();
}

}  // namespace profitmax
