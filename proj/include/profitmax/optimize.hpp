#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "profitmax/errors.hpp"
#include "profitmax/evaluator.hpp"
#include "profitmax/graph.hpp"
#include "profitmax/modular.hpp"
#include "profitmax/node_set.hpp"
#include "profitmax/prune.hpp"
#include "profitmax/random.hpp"

namespace profitmax {

struct TrajectoryPoint {
  NodeSet seeds;
  double profit = 0.0;
};

struct SelectionResult {
  std::string algorithm;
  NodeSet seeds;
  double estimated_profit = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  nlohmann::json parameters = nlohmann::json::object();
};

// ---------------------------------------------------------------------------
// Greedy
// ---------------------------------------------------------------------------

struct GreedyOptions {
  /// Skip re-evaluating nodes whose upper bound β(v|S_old) - γ(v|B\{v})
  /// cannot beat the best exact marginal of the round.
  bool lazy = true;
};

namespace detail {

/// Best (value, node) with ties toward the smaller id.
inline bool better(double value, NodeId v, double best_value, NodeId best) {
  return value > best_value || (value == best_value && v < best);
}

}  // namespace detail

/// Hill climbing inside the lattice: start at A, add the free node of largest
/// φ(v|S) (smallest id on ties) while that marginal is positive.
template <ProfitEvaluator E>
SelectionResult greedy(const E& eval, const Lattice& lat, GreedyOptions options = {}) {
  const std::size_t n = eval.node_count();
  SelectionResult result{"greedy", lat.must_include, 0.0, {}, {{"lazy", options.lazy}}};
  NodeSet& s = result.seeds;
  result.trajectory.push_back({s, profit(eval, s)});

  std::vector<NodeId> pool = lat.free_nodes();
  if (pool.empty()) {
    result.estimated_profit = result.trajectory.back().profit;
    return result;
  }

  if (!options.lazy) {
    while (!pool.empty()) {
      const auto gains = profit_gains(eval, s, pool);
      std::size_t best = 0;
      for (std::size_t i = 1; i < pool.size(); ++i)
        if (detail::better(gains[i], pool[i], gains[best], pool[best])) best = i;
      if (gains[best] <= 0.0) break;
      s.insert(pool[best]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
      result.trajectory.push_back({s, profit(eval, s)});
    }
    result.estimated_profit = result.trajectory.back().profit;
    return result;
  }

  // γ(v|S) ≥ γ(v|B\{v}) and β(v|S) ≤ β(v|S_old) for S_old ⊆ S, so
  // benefit[v] - cost_floor[v] bounds φ(v|S) from above.
  std::vector<double> cost_floor(n, 0.0), benefit(n, 0.0);
  {
    const auto floor = eval.gains(Metric::cost, lat.may_include, pool);
    const auto first = eval.gains(Metric::benefit, s, pool);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      cost_floor[pool[i]] = floor[i];
      benefit[pool[i]] = first[i];
    }
  }
  struct Entry {
    double bound;
    NodeId node;
  };
  auto lower_priority = [](const Entry& x, const Entry& y) {
    return x.bound < y.bound || (x.bound == y.bound && x.node > y.node);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);
  for (NodeId v : pool) heap.push({benefit[v] - cost_floor[v], v});

  // Candidates are popped in doubling batches so that one gains call covers
  // many re-evaluations when the bounds are loose.
  for (;;) {
    double best_value = -std::numeric_limits<double>::infinity();
    NodeId best = 0;
    bool have_best = false;
    std::vector<Entry> parked;
    std::vector<NodeId> batch;
    for (std::size_t width = 1; !heap.empty(); width *= 2) {
      batch.clear();
      while (!heap.empty() && batch.size() < width) {
        const Entry top = heap.top();
        if (have_best && !detail::better(top.bound, top.node, best_value, best)) break;
        heap.pop();
        batch.push_back(top.node);
      }
      if (batch.empty()) break;
      const auto b = eval.gains(Metric::benefit, s, batch);
      const auto c = eval.gains(Metric::cost, s, batch);
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const NodeId v = batch[i];
        benefit[v] = b[i];
        const double value = b[i] - c[i];
        if (!have_best || detail::better(value, v, best_value, best)) {
          best_value = value;
          best = v;
          have_best = true;
        }
        parked.push_back({benefit[v] - cost_floor[v], v});
      }
    }
    if (!have_best || best_value <= 0.0) break;
    s.insert(best);
    for (const Entry& e : parked)
      if (e.node != best) heap.push(e);
    result.trajectory.push_back({s, profit(eval, s)});
    if (heap.empty()) break;
  }
  result.estimated_profit = result.trajectory.back().profit;
  return result;
}

// ---------------------------------------------------------------------------
// Modular-modular
// ---------------------------------------------------------------------------

struct ModModOptions {
  /// Cost upper bound: v3 (ModMod-1) or v4 (ModMod-2).
  UpperBound cost_bound = UpperBound::v3;
  PermutationPolicy permutation = PermutationPolicy::singleton_profit;
  std::uint64_t seed = 0;
  /// 0 means 100 · |B \ A| (at least 100).
  std::size_t max_iterations = 0;
};

/// Repeatedly maximizes h(Y; β) - m(Y; γ) over the lattice, with h a modular
/// lower bound of benefit and m a modular upper bound of cost, both tight at
/// the current X, until X stops changing.
template <ProfitEvaluator E>
SelectionResult modmod(const E& eval, const Lattice& lat, ModModOptions options = {}) {
  if (options.cost_bound != UpperBound::v3 && options.cost_bound != UpperBound::v4)
    throw DomainError("ModMod uses cost bound variant 3 or 4");
  const std::string name = options.cost_bound == UpperBound::v3 ? "modmod1" : "modmod2";
  SelectionResult result{name, lat.must_include, 0.0, {},
                         {{"cost_bound", static_cast<int>(options.cost_bound)},
                          {"permutation", options.permutation == PermutationPolicy::random ? "random" : "singleton"},
                          {"seed", options.seed}}};
  NodeSet& x = result.seeds;
  result.trajectory.push_back({x, profit(eval, x)});

  const std::size_t limit =
      options.max_iterations ? options.max_iterations : std::max<std::size_t>(100, 100 * lat.free_nodes().size());
  const auto score = options.permutation == PermutationPolicy::singleton_profit
                         ? singleton_scores(eval, lat.may_include)
                         : std::vector<double>(eval.node_count(), 0.0);
  Rng rng = make_rng(options.seed, 0);

  for (std::size_t it = 0; it < limit; ++it) {
    const auto pi = lattice_permutation(x, lat, options.permutation, score, rng);
    const ModularFunction h = modular_lower(eval, Metric::benefit, x, pi, lat);
    const ModularFunction m = modular_upper(eval, Metric::cost, x, options.cost_bound, lat);
    NodeSet next = maximize_modular_difference(h, m, lat);
    if (next == x) {
      result.estimated_profit = result.trajectory.back().profit;
      result.parameters["iterations"] = it + 1;
      return result;
    }
    x = std::move(next);
    result.trajectory.push_back({x, profit(eval, x)});
  }
  throw InvariantError("ModMod did not converge within " + std::to_string(limit) + " iterations");
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

enum class BaselineKind { random, highdegree, benefitmax };

inline const char* to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::random: return "random";
    case BaselineKind::highdegree: return "highdegree";
    case BaselineKind::benefitmax: return "benefitmax";
  }
  return "?";
}

inline constexpr std::size_t random_baseline_draws = 10;

/// Uniform k-subset by partial Fisher-Yates.
inline NodeSet random_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(ids[i], ids[i + uniform_index(rng, n - i)]);
  return NodeSet(n, std::span<const NodeId>(ids.data(), k));
}

/// Top-k by out-degree, ties toward smaller ids.
inline NodeSet highest_degree(const WeightedGraph& g, std::size_t k) {
  std::vector<NodeId> ids(g.node_count());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::stable_sort(ids.begin(), ids.end(), [&](NodeId u, NodeId v) { return g.out_degree(u) > g.out_degree(v); });
  return NodeSet(g.node_count(), std::span<const NodeId>(ids.data(), k));
}

/// k rounds of argmax β(v|S) over all nodes (lazy; β is submodular). On an
/// RR evaluator this is greedy maximum coverage of the benefit collection.
template <ProfitEvaluator E>
NodeSet benefit_greedy(const E& eval, std::size_t k) {
  const std::size_t n = eval.node_count();
  NodeSet s(n);
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  const auto first = eval.gains(Metric::benefit, s, all);
  struct Entry {
    double gain;
    NodeId node;
    std::size_t round;
  };
  auto lower_priority = [](const Entry& x, const Entry& y) {
    return x.gain < y.gain || (x.gain == y.gain && x.node > y.node);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);
  for (NodeId v = 0; v < n; ++v) heap.push({first[v], v, 0});
  for (std::size_t round = 0; round < k && !heap.empty();) {
    Entry top = heap.top();
    heap.pop();
    if (top.round == round) {
      s.insert(top.node);
      ++round;
      continue;
    }
    top.gain = gain(eval, Metric::benefit, s, top.node);
    top.round = round;
    heap.push(top);
  }
  return s;
}

/// One baseline at a fixed k. Random reports the mean profit of
/// random_baseline_draws independent draws; its `seeds` is the first draw.
template <ProfitEvaluator E>
SelectionResult baseline(BaselineKind kind, const WeightedGraph& g, std::size_t k, const E& eval,
                         std::uint64_t seed = 0) {
  const std::size_t n = g.node_count();
  if (k < 1 || k > n) throw DomainError("baseline k must lie in [1, |V|]");
  SelectionResult result{to_string(kind), NodeSet(n), 0.0, {}, {{"k", k}}};
  switch (kind) {
    case BaselineKind::random: {
      Rng rng = make_rng(seed, k);
      double total = 0.0;
      for (std::size_t d = 0; d < random_baseline_draws; ++d) {
        NodeSet draw = random_subset(n, k, rng);
        const double phi = profit(eval, draw);
        total += phi;
        result.trajectory.push_back({draw, phi});
      }
      result.seeds = result.trajectory.front().seeds;
      result.estimated_profit = total / static_cast<double>(random_baseline_draws);
      result.parameters["seed"] = seed;
      return result;
    }
    case BaselineKind::highdegree: result.seeds = highest_degree(g, k); break;
    case BaselineKind::benefitmax: result.seeds = benefit_greedy(eval, k); break;
  }
  result.estimated_profit = profit(eval, result.seeds);
  result.trajectory.push_back({result.seeds, result.estimated_profit});
  return result;
}

/// k = ⌈|V| / 2^i⌉ for i = 0..10, deduplicated, largest first.
inline std::vector<std::size_t> sweep_sizes(std::size_t n) {
  std::vector<std::size_t> ks;
  for (unsigned i = 0; i <= 10; ++i) {
    const std::size_t k = (n + (std::size_t{1} << i) - 1) >> i;
    if (k >= 1 && (ks.empty() || ks.back() != k)) ks.push_back(k);
  }
  return ks;
}

/// Runs the baseline at every sweep size and keeps the most profitable one
/// (the largest k on ties).
template <ProfitEvaluator E>
SelectionResult k_sweep(BaselineKind kind, const WeightedGraph& g, const E& eval, std::uint64_t seed = 0) {
  if (g.node_count() == 0) throw DomainError("k-sweep needs a nonempty graph");
  std::optional<SelectionResult> best;
  nlohmann::json profile = nlohmann::json::array();
  for (std::size_t k : sweep_sizes(g.node_count())) {
    SelectionResult r = baseline(kind, g, k, eval, seed);
    profile.push_back({{"k", k}, {"profit", r.estimated_profit}});
    if (!best || r.estimated_profit > best->estimated_profit) best = std::move(r);
  }
  best->parameters["sweep"] = std::move(profile);
  return *best;
}

}  // namespace profitmax
