#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "profitmax/errors.hpp"
#include "profitmax/evaluator.hpp"
#include "profitmax/node_set.hpp"
#include "profitmax/prune.hpp"
#include "profitmax/random.hpp"

namespace profitmax {

/// m(Y) = base + Σ_{v ∈ Y} per_node[v].
struct ModularFunction {
  double base = 0.0;
  std::vector<double> per_node;

  double operator()(const NodeSet& y) const {
    double total = base;
    for (NodeId v : y.members()) total += per_node[v];
    return total;
  }
};

/// Which of the four tight modular upper bounds at X to build:
///   1: f(X) - Σ_{X\Y} f(v | V\{v}) + Σ_{Y\X} f(v | X)
///   2: f(X) - Σ_{X\Y} f(v | X\{v}) + Σ_{Y\X} f(v | ∅)
///   3: as 1 with V replaced by B
///   4: as 2 with ∅ replaced by A
/// Variants 3 and 4 are only valid inside the lattice [A, B].
enum class UpperBound { v1 = 1, v2 = 2, v3 = 3, v4 = 4 };

/// Modular upper bound on f = (eval, metric), tight at X. Stored in additive
/// form: per_node[v] is the removal term for v ∈ X and the addition term for
/// v ∉ X, with base = f(X) - Σ_{v ∈ X} per_node[v].
template <ProfitEvaluator E>
ModularFunction modular_upper(const E& eval, Metric metric, const NodeSet& x, UpperBound variant, const Lattice& lat) {
  const std::size_t n = eval.node_count();
  const bool restricted = variant == UpperBound::v3 || variant == UpperBound::v4;
  if (restricted && !lat.contains(x)) throw DomainError("bound variants 3 and 4 need X inside the lattice");

  const NodeSet& ground = restricted ? lat.may_include : NodeSet::full(n);
  const auto inside = x.members();
  const auto outside = set_difference(ground, x).members();

  std::vector<double> removal, addition;
  switch (variant) {
    case UpperBound::v1:
      removal = eval.gains(metric, NodeSet::full(n), inside);
      addition = eval.gains(metric, x, outside);
      break;
    case UpperBound::v2:
      removal = eval.gains(metric, x, inside);
      addition = eval.gains(metric, NodeSet(n), outside);
      break;
    case UpperBound::v3:
      removal = eval.gains(metric, lat.may_include, inside);
      addition = eval.gains(metric, x, outside);
      break;
    case UpperBound::v4:
      removal = eval.gains(metric, x, inside);
      addition = eval.gains(metric, lat.must_include, outside);
      break;
  }

  ModularFunction m{eval.value(metric, x), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < inside.size(); ++i) {
    m.per_node[inside[i]] = removal[i];
    m.base -= removal[i];
  }
  for (std::size_t i = 0; i < outside.size(); ++i) m.per_node[outside[i]] = addition[i];
  return m;
}

/// Checks that `order` lists A, then X \ A, then B \ X, each node once.
inline void check_lattice_permutation(std::span<const NodeId> order, const NodeSet& x, const Lattice& lat) {
  const NodeSet& a = lat.must_include;
  const NodeSet& b = lat.may_include;
  if (order.size() != b.size()) throw DomainError("permutation must list every node of B exactly once");
  NodeSet seen(b.universe());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId v = order[i];
    if (!b.contains(v) || seen.contains(v)) throw DomainError("permutation must list every node of B exactly once");
    seen.insert(v);
    const int block = a.contains(v) ? 0 : x.contains(v) ? 1 : 2;
    const int expected = i < a.size() ? 0 : i < x.size() ? 1 : 2;
    if (block != expected) throw DomainError("permutation must order A, then X \\ A, then B \\ X");
  }
}

/// Modular lower bound on f tight at X, from the chain S_i = {π(1..i)}:
/// per_node[π(i)] = f(S_i) - f(S_{i-1}), base = 0. π ranges over B only.
template <ProfitEvaluator E>
ModularFunction modular_lower(const E& eval, Metric metric, const NodeSet& x, std::span<const NodeId> pi,
                              const Lattice& lat) {
  if (!lat.contains(x)) throw DomainError("X must lie inside the lattice");
  check_lattice_permutation(pi, x, lat);
  const auto chain = eval.chain_gains(metric, pi);
  ModularFunction h{0.0, std::vector<double>(eval.node_count(), 0.0)};
  for (std::size_t i = 0; i < pi.size(); ++i) h.per_node[pi[i]] = chain[i];
  return h;
}

/// argmax over A ⊆ Y ⊆ B of plus(Y) - minus(Y): A plus every free node with a
/// strictly positive per-node difference.
inline NodeSet maximize_modular_difference(const ModularFunction& plus, const ModularFunction& minus,
                                           const Lattice& lat) {
  NodeSet y = lat.must_include;
  for (NodeId v : lat.free_nodes())
    if (plus.per_node[v] - minus.per_node[v] > 0.0) y.insert(v);
  return y;
}

enum class PermutationPolicy { singleton_profit, random };

inline PermutationPolicy parse_permutation_policy(const std::string& s) {
  if (s == "singleton" || s == "singleton_profit") return PermutationPolicy::singleton_profit;
  if (s == "random") return PermutationPolicy::random;
  throw ConfigError("unknown permutation policy '" + s + "'");
}

/// Concatenation of A, X \ A, B \ X. Within each block nodes are ordered by
/// descending score (ties by id), or shuffled when the policy is random.
inline std::vector<NodeId> lattice_permutation(const NodeSet& x, const Lattice& lat, PermutationPolicy policy,
                                               const std::vector<double>& score, Rng& rng) {
  std::vector<NodeId> order;
  order.reserve(lat.may_include.size());
  auto append = [&](std::vector<NodeId> block) {
    if (policy == PermutationPolicy::random) {
      for (std::size_t i = block.size(); i > 1; --i) std::swap(block[i - 1], block[uniform_index(rng, i)]);
    } else {
      std::stable_sort(block.begin(), block.end(), [&](NodeId u, NodeId v) { return score[u] > score[v]; });
    }
    order.insert(order.end(), block.begin(), block.end());
  };
  append(lat.must_include.members());
  append(set_difference(x, lat.must_include).members());
  append(set_difference(lat.may_include, x).members());
  return order;
}

/// φ({v}) for every v, indexed by node; used to order permutation blocks.
template <ProfitEvaluator E>
std::vector<double> singleton_scores(const E& eval, const NodeSet& nodes) {
  std::vector<double> score(eval.node_count(), 0.0);
  const auto members = nodes.members();
  const auto gains = profit_gains(eval, NodeSet(eval.node_count()), members);
  for (std::size_t i = 0; i < members.size(); ++i) score[members[i]] = gains[i];
  return score;
}

}  // namespace profitmax
