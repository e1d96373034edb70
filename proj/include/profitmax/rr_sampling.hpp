#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "profitmax/alias_table.hpp"
#include "profitmax/errors.hpp"
#include "profitmax/graph.hpp"
#include "profitmax/node_set.hpp"
#include "profitmax/random.hpp"

namespace profitmax {

/// θ reverse-reachable sets of one weight kind, frozen after construction,
/// with an inverted node -> set index. The root of each set is stored first.
class RRCollection {
 public:
  RRCollection() = default;

  /// Adopts flat storage: set i is nodes[offsets[i] .. offsets[i+1]).
  static RRCollection from_parts(Metric kind, std::size_t node_count, double upsilon, std::uint64_t seed,
                                 std::vector<std::size_t> offsets, std::vector<NodeId> nodes) {
    RRCollection c;
    c.kind_ = kind;
    c.node_count_ = node_count;
    c.upsilon_ = upsilon;
    c.seed_ = seed;
    c.offsets_ = std::move(offsets);
    c.nodes_ = std::move(nodes);
    if (c.offsets_.empty() || c.offsets_.front() != 0 || c.offsets_.back() != c.nodes_.size())
      throw DomainError("inconsistent RR set offsets");
    for (std::size_t i = 0; i + 1 < c.offsets_.size(); ++i)
      if (c.offsets_[i + 1] <= c.offsets_[i]) throw DomainError("RR sets must be nonempty");
    for (NodeId v : c.nodes_)
      if (v >= node_count) throw DomainError("RR set node out of range");
    c.build_index();
    return c;
  }

  /// Builds a collection from explicit sets (deserialization, tests).
  static RRCollection from_sets(Metric kind, std::size_t node_count, double upsilon, std::uint64_t seed,
                                const std::vector<std::vector<NodeId>>& sets) {
    std::vector<std::size_t> offsets{0};
    std::vector<NodeId> nodes;
    for (const auto& s : sets) {
      nodes.insert(nodes.end(), s.begin(), s.end());
      offsets.push_back(nodes.size());
    }
    return from_parts(kind, node_count, upsilon, seed, std::move(offsets), std::move(nodes));
  }

  Metric kind() const noexcept { return kind_; }
  std::size_t theta() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  double upsilon() const noexcept { return upsilon_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t total_size() const noexcept { return nodes_.size(); }

  std::span<const NodeId> set(std::size_t i) const {
    return {nodes_.data() + offsets_[i], nodes_.data() + offsets_[i + 1]};
  }
  NodeId root(std::size_t i) const { return nodes_[offsets_[i]]; }

  /// Ids of the sets that contain v.
  std::span<const std::uint32_t> sets_containing(NodeId v) const {
    return {index_.data() + index_offsets_[v], index_.data() + index_offsets_[v + 1]};
  }

  /// Υ/θ: the weight one covered set stands for.
  double scale() const noexcept { return theta() == 0 ? 0.0 : upsilon_ / static_cast<double>(theta()); }

 private:
  void build_index() {
    index_offsets_.assign(node_count_ + 1, 0);
    for (NodeId v : nodes_) ++index_offsets_[v + 1];
    for (std::size_t v = 0; v < node_count_; ++v) index_offsets_[v + 1] += index_offsets_[v];
    index_.resize(nodes_.size());
    std::vector<std::size_t> fill(index_offsets_.begin(), index_offsets_.end() - 1);
    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i)
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) index_[fill[nodes_[k]]++] = static_cast<std::uint32_t>(i);
  }

  Metric kind_ = Metric::benefit;
  std::size_t node_count_ = 0;
  double upsilon_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> nodes_;
  std::vector<std::size_t> index_offsets_;
  std::vector<std::uint32_t> index_;
};

inline constexpr std::size_t rr_block_size = 1024;

/// θ weighted RR sets: root drawn with probability weight(v)/Υ, then every
/// node that reaches the root in a freshly sampled live-edge world. Sets of
/// block b come from stream (seed, b), so the result does not depend on how
/// blocks are spread over workers.
inline RRCollection generate_rr_sets(const WeightedGraph& g, Metric kind, std::size_t theta, std::uint64_t seed,
                                     unsigned workers = 0) {
  const auto weights = g.weights(kind);
  double upsilon = 0.0;
  for (double w : weights) upsilon += w;
  if (!(upsilon > 0.0))
    throw DomainError(std::string("no sampleable roots: total ") + to_string(kind) + " weight is 0");
  if (theta == 0) throw DomainError("theta must be >= 1");
  const AliasTable roots(weights);

  const std::size_t blocks = (theta + rr_block_size - 1) / rr_block_size;
  std::vector<std::vector<NodeId>> block_nodes(blocks);
  std::vector<std::vector<std::uint32_t>> block_sizes(blocks);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    std::vector<std::uint32_t> stamp(g.node_count(), 0);
    std::uint32_t epoch = 0;
    std::vector<NodeId> queue;
    for (std::size_t b; (b = next.fetch_add(1)) < blocks;) {
      Rng rng = make_rng(seed, b);
      const std::size_t count = std::min(rr_block_size, theta - b * rr_block_size);
      auto& out = block_nodes[b];
      auto& sizes = block_sizes[b];
      sizes.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        if (++epoch == 0) {
          std::fill(stamp.begin(), stamp.end(), 0);
          epoch = 1;
        }
        const auto root = static_cast<NodeId>(roots.sample(rng));
        const std::size_t start = out.size();
        queue.clear();
        queue.push_back(root);
        stamp[root] = epoch;
        out.push_back(root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
          for (std::uint32_t ei : g.in_edges(queue[head])) {
            const Edge& e = g.edge(ei);
            if (stamp[e.source] == epoch) continue;
            if (uniform01(rng) < e.probability) {
              stamp[e.source] = epoch;
              queue.push_back(e.source);
              out.push_back(e.source);
            }
          }
        }
        sizes.push_back(static_cast<std::uint32_t>(out.size() - start));
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::size_t total = 0;
  for (const auto& b : block_nodes) total += b.size();
  std::vector<NodeId> nodes;
  std::vector<std::size_t> offsets;
  nodes.reserve(total);
  offsets.reserve(theta + 1);
  offsets.push_back(0);
  for (std::size_t b = 0; b < blocks; ++b) {
    nodes.insert(nodes.end(), block_nodes[b].begin(), block_nodes[b].end());
    for (std::uint32_t s : block_sizes[b]) offsets.push_back(offsets.back() + s);
    std::vector<NodeId>().swap(block_nodes[b]);
  }
  return RRCollection::from_parts(kind, g.node_count(), upsilon, seed, std::move(offsets), std::move(nodes));
}

/// Λ(S): number of sets that intersect S.
inline std::size_t coverage(const RRCollection& c, const NodeSet& s) {
  std::vector<std::uint8_t> covered(c.theta(), 0);
  std::size_t count = 0;
  for (NodeId v : s.members())
    for (std::uint32_t r : c.sets_containing(v))
      if (!covered[r]) {
        covered[r] = 1;
        ++count;
      }
  return count;
}

/// Number of sets that contain v and no member of S other than v, i.e.
/// Λ(S ∪ {v}) - Λ(S \ {v}).
inline std::size_t marginal_coverage(const RRCollection& c, const NodeSet& s, NodeId v) {
  std::size_t count = 0;
  for (std::uint32_t r : c.sets_containing(v)) {
    bool hit = false;
    for (NodeId u : c.set(r))
      if (u != v && s.contains(u)) {
        hit = true;
        break;
      }
    if (!hit) ++count;
  }
  return count;
}

inline nlohmann::json rr_collection_to_json(const RRCollection& c) {
  nlohmann::json sets = nlohmann::json::array();
  for (std::size_t i = 0; i < c.theta(); ++i) {
    auto s = c.set(i);
    sets.push_back(std::vector<NodeId>(s.begin(), s.end()));
  }
  return {{"kind", to_string(c.kind())}, {"theta", c.theta()},   {"seed", c.seed()},
          {"upsilon", c.upsilon()},     {"node_count", c.node_count()}, {"sets", std::move(sets)}};
}

inline RRCollection rr_collection_from_json(const nlohmann::json& j) {
  try {
    const auto kind_name = j.at("kind").get<std::string>();
    if (kind_name != "benefit" && kind_name != "cost") throw DomainError("unknown collection kind " + kind_name);
    const Metric kind = kind_name == "benefit" ? Metric::benefit : Metric::cost;
    auto sets = j.at("sets").get<std::vector<std::vector<NodeId>>>();
    if (sets.size() != j.at("theta").get<std::size_t>()) throw DomainError("theta does not match the number of sets");
    return RRCollection::from_sets(kind, j.at("node_count").get<std::size_t>(), j.at("upsilon").get<double>(),
                                   j.at("seed").get<std::uint64_t>(), sets);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed RR collection: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Estimation
// ---------------------------------------------------------------------------

struct Estimate {
  double benefit = 0.0;
  double cost = 0.0;
  double profit = 0.0;
};

/// Benefit and cost estimated from two frozen collections:
/// φ̃(S) = Λ_β(S)·Υ_b/θ_β - Λ_γ(S)·Υ_c/θ_γ. A kind whose total weight is zero
/// has no collection and evaluates to zero everywhere.
class ProfitEstimator {
 public:
  ProfitEstimator(std::size_t node_count, std::optional<RRCollection> benefit, std::optional<RRCollection> cost,
                  std::size_t theta_benefit, std::size_t theta_cost)
      : node_count_(node_count),
        benefit_(std::move(benefit)),
        cost_(std::move(cost)),
        theta_{theta_benefit, theta_cost} {
    for (const auto* c : {&benefit_, &cost_})
      if (*c && (*c)->node_count() != node_count) throw DomainError("collection built for a different graph");
  }

  /// Independent benefit and cost collections, streams derived from `seed`.
  static ProfitEstimator build(const WeightedGraph& g, std::size_t theta_benefit, std::size_t theta_cost,
                               std::uint64_t seed, unsigned workers = 0) {
    const WeightTotals totals = g.totals();
    std::optional<RRCollection> benefit, cost;
    if (totals.upsilon_b > 0.0)
      benefit = generate_rr_sets(g, Metric::benefit, theta_benefit, derive_seed(seed, 1), workers);
    if (totals.upsilon_c > 0.0) cost = generate_rr_sets(g, Metric::cost, theta_cost, derive_seed(seed, 2), workers);
    return ProfitEstimator(g.node_count(), std::move(benefit), std::move(cost), theta_benefit, theta_cost);
  }

  std::size_t node_count() const noexcept { return node_count_; }

  const RRCollection* collection(Metric m) const {
    const auto& c = m == Metric::benefit ? benefit_ : cost_;
    return c ? &*c : nullptr;
  }
  std::size_t theta(Metric m) const noexcept { return theta_[m == Metric::benefit ? 0 : 1]; }
  double upsilon(Metric m) const {
    const auto* c = collection(m);
    return c ? c->upsilon() : 0.0;
  }
  std::size_t coverage(Metric m, const NodeSet& s) const {
    const auto* c = collection(m);
    return c ? profitmax::coverage(*c, s) : 0;
  }

  double value(Metric m, const NodeSet& s) const {
    const auto* c = collection(m);
    return c ? static_cast<double>(profitmax::coverage(*c, s)) * c->scale() : 0.0;
  }

  Estimate estimate(const NodeSet& s) const {
    const double b = value(Metric::benefit, s), c = value(Metric::cost, s);
    return {b, c, b - c};
  }

  std::vector<double> gains(Metric m, const NodeSet& base, std::span<const NodeId> nodes) const {
    std::vector<double> out(nodes.size(), 0.0);
    const auto* c = collection(m);
    if (!c) return out;
    if (nodes.size() <= 4) {
      for (std::size_t i = 0; i < nodes.size(); ++i)
        out[i] = static_cast<double>(marginal_coverage(*c, base, nodes[i])) * c->scale();
      return out;
    }
    // Per-set count of base members; v's gain counts sets whose only base
    // member (if any) is v itself.
    std::vector<std::uint32_t> hits(c->theta(), 0);
    for (NodeId u : base.members())
      for (std::uint32_t r : c->sets_containing(u)) ++hits[r];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const NodeId v = nodes[i];
      const std::uint32_t self = base.contains(v) ? 1 : 0;
      std::size_t count = 0;
      for (std::uint32_t r : c->sets_containing(v))
        if (hits[r] == self) ++count;
      out[i] = static_cast<double>(count) * c->scale();
    }
    return out;
  }

  std::vector<double> chain_gains(Metric m, std::span<const NodeId> order) const {
    std::vector<double> out(order.size(), 0.0);
    const auto* c = collection(m);
    if (!c) return out;
    std::vector<std::uint8_t> covered(c->theta(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::size_t fresh = 0;
      for (std::uint32_t r : c->sets_containing(order[i]))
        if (!covered[r]) {
          covered[r] = 1;
          ++fresh;
        }
      out[i] = static_cast<double>(fresh) * c->scale();
    }
    return out;
  }

 private:
  std::size_t node_count_;
  std::optional<RRCollection> benefit_;
  std::optional<RRCollection> cost_;
  std::size_t theta_[2];
};

inline Estimate estimate(const ProfitEstimator& e, const NodeSet& s) { return e.estimate(s); }

// ---------------------------------------------------------------------------
// Concentration bounds
// ---------------------------------------------------------------------------

/// a = 4(e-2)·ln(2/δ).
inline double chernoff_constant(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  return 4.0 * (std::numbers::e - 2.0) * std::log(2.0 / delta);
}

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Two one-sided bounds on the true weighted spread, each holding with
/// probability at least 1 - δ/2 for sets drawn independently of S:
/// (√(Λ + a/4) ∓ √a/2)² · Υ/θ.
inline ConfidenceInterval confidence_bounds(std::size_t lambda, std::size_t theta, double upsilon, double delta) {
  const double a = chernoff_constant(delta);
  if (lambda > theta) throw DomainError("coverage count exceeds theta");
  if (upsilon == 0.0) return {0.0, 0.0};
  if (theta == 0) throw DomainError("theta must be >= 1");
  const double center = std::sqrt(static_cast<double>(lambda) + 0.25 * a);
  const double half = 0.5 * std::sqrt(a);
  const double scale = upsilon / static_cast<double>(theta);
  // For Λ = 0 the two roots cancel; return the exact zero.
  const double lower = lambda == 0 ? 0.0 : (center - half) * (center - half) * scale;
  return {lower, (center + half) * (center + half) * scale};
}

/// Error limit ε_β + ε_γ = √(aΥ_b β/θ_β) + √(aΥ_c γ/θ_γ) that holds the
/// estimate of φ within ±ε with probability 1 - 2δ.
inline double sampling_error_limit(double benefit, double cost, const WeightTotals& totals, std::size_t theta_benefit,
                                   std::size_t theta_cost, double delta) {
  const double a = chernoff_constant(delta);
  return std::sqrt(a * totals.upsilon_b * benefit / static_cast<double>(theta_benefit)) +
         std::sqrt(a * totals.upsilon_c * cost / static_cast<double>(theta_cost));
}

/// Smallest θ whose error limit √(a/(λθ)) stays within `relative_error` of
/// the estimate, for sets covering at least a `min_fraction` of the weight.
inline std::size_t validation_theta(double relative_error, double delta, double min_fraction) {
  if (!(relative_error > 0.0) || !(min_fraction > 0.0 && min_fraction <= 1.0))
    throw DomainError("relative error and fraction must be positive");
  const double a = chernoff_constant(delta);
  return static_cast<std::size_t>(std::ceil(a / (min_fraction * relative_error * relative_error)));
}

/// Default RR budget: 2^i × 10,000.
inline std::size_t theta_for_exponent(unsigned i) { return (std::size_t{1} << i) * 10000; }

}  // namespace profitmax
