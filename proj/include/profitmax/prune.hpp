#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "profitmax/errors.hpp"
#include "profitmax/evaluator.hpp"
#include "profitmax/node_set.hpp"

namespace profitmax {

/// One sweep of the pruning loop, recorded against the sets (A_t, B_t) it
/// started from. For each candidate v in B_t \ A_t:
///   lower_gain = β(v | B_t\{v}) - γ(v | A_t)   (> 0  => v joins A)
///   upper_gain = β(v | A_t) - γ(v | B_t\{v})   (< 0  => v leaves B)
struct PruneStep {
  NodeSet must_include;
  NodeSet may_include;
  std::vector<NodeId> candidates;
  std::vector<double> lower_gain;
  std::vector<double> upper_gain;
};

/// The reduced search space [A, B]: every set S with A ⊆ S ⊆ B.
struct Lattice {
  NodeSet must_include;
  NodeSet may_include;
  std::vector<PruneStep> trace;

  static Lattice trivial(std::size_t node_count) { return {NodeSet(node_count), NodeSet::full(node_count), {}}; }

  std::size_t node_count() const noexcept { return may_include.universe(); }

  bool contains(const NodeSet& s) const { return must_include.is_subset_of(s) && s.is_subset_of(may_include); }

  /// B \ A in increasing id order.
  std::vector<NodeId> free_nodes() const { return set_difference(may_include, must_include).members(); }

  /// Fraction of V decided by pruning: 1 - |B \ A| / |V|.
  double reduction() const {
    const std::size_t n = node_count();
    if (n == 0) return 0.0;
    return 1.0 - static_cast<double>(may_include.size() - must_include.size()) / static_cast<double>(n);
  }
};

/// Grows A and shrinks B until neither changes. Marginals in each sweep are
/// taken against (A_t, B_t) as they stood at the start of the sweep, and the
/// comparisons are strict, so zero-difference nodes stay undecided.
///
/// Throws InvariantError if the evaluator produces a non-nested step
/// (A_t ⊆ A_{t+1} ⊆ B_{t+1} ⊆ B_t fails) or fails to converge within |V| + 1
/// sweeps; both indicate marginals that are not submodular, e.g. too few RR
/// sets mixed from different samples.
template <ProfitEvaluator E>
Lattice iterative_prune(const E& eval, const NodeSet& universe) {
  const std::size_t n = eval.node_count();
  if (universe.universe() != n) throw DomainError("universe does not match the evaluator");
  Lattice lat{NodeSet(n), universe, {}};

  for (std::size_t sweep = 0;; ++sweep) {
    if (sweep > universe.size() + 1) throw InvariantError("pruning did not converge within |V| + 1 sweeps");
    const NodeSet& a = lat.must_include;
    const NodeSet& b = lat.may_include;

    PruneStep step{a, b, set_difference(b, a).members(), {}, {}};
    const auto benefit_high = eval.gains(Metric::benefit, a, step.candidates);
    const auto benefit_low = eval.gains(Metric::benefit, b, step.candidates);
    const auto cost_high = eval.gains(Metric::cost, a, step.candidates);
    const auto cost_low = eval.gains(Metric::cost, b, step.candidates);

    NodeSet next_a = a, next_b = b;
    for (std::size_t i = 0; i < step.candidates.size(); ++i) {
      const double lower = benefit_low[i] - cost_high[i];
      const double upper = benefit_high[i] - cost_low[i];
      step.lower_gain.push_back(lower);
      step.upper_gain.push_back(upper);
      if (lower > 0.0) next_a.insert(step.candidates[i]);
      if (upper < 0.0) next_b.erase(step.candidates[i]);
    }
    lat.trace.push_back(std::move(step));

    if (next_a == a && next_b == b) return lat;
    if (!next_a.is_subset_of(next_b))
      throw InvariantError("pruning produced A ⊄ B at sweep " + std::to_string(sweep + 1) +
                           "; marginals are inconsistent (too few samples?)");
    lat.must_include = std::move(next_a);
    lat.may_include = std::move(next_b);
  }
}

template <ProfitEvaluator E>
Lattice iterative_prune(const E& eval) {
  return iterative_prune(eval, NodeSet::full(eval.node_count()));
}

/// S ∩ B ∪ A: the image of S inside the lattice.
inline NodeSet project(const NodeSet& s, const Lattice& lat) {
  return set_union(set_intersection(s, lat.may_include), lat.must_include);
}

}  // namespace profitmax
