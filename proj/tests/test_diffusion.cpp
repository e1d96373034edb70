#include <gtest/gtest.h>

#include "fixture.hpp"
#include "profitmax/diffusion.hpp"
#include "profitmax/evaluator.hpp"
#include "profitmax/generators.hpp"

using namespace profitmax;
using profitmax::testing::fixture_graph;
using profitmax::testing::nodes;

namespace {

NodeSet from_mask(std::size_t n, std::uint64_t mask) {
  NodeSet s(n);
  for (NodeId v = 0; v < n; ++v)
    if (mask >> v & 1) s.insert(v);
  return s;
}

}  // namespace

TEST(Simulate, DeterministicCascades) {
  const auto path = WeightedGraph::build(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {}, {});
  Rng rng = make_rng(1, 0);
  EXPECT_EQ(simulate_spread(path, NodeSet(3, {0}), rng), NodeSet::full(3));
  const auto dead = WeightedGraph::build(3, {{0, 1, 0.0}, {1, 2, 0.0}}, {}, {});
  EXPECT_EQ(simulate_spread(dead, NodeSet(3, {0, 2}), rng), NodeSet(3, {0, 2}));
  EXPECT_THROW(simulate_spread(path, NodeSet(4, {0}), rng), DomainError);
}

TEST(Simulate, FixtureActivationFrequency) {
  const auto g = fixture_graph();
  Rng rng = make_rng(2024, 0);
  const std::size_t runs = 1'000'000;
  std::size_t hits = 0;
  const NodeSet seeds = nodes({0, 2});
  for (std::size_t i = 0; i < runs; ++i) hits += simulate_spread(g, seeds, rng).contains(3);
  EXPECT_NEAR(static_cast<double>(hits) / runs, 0.6052, 0.002);
}

TEST(Simulate, MonteCarloAgreesWithExact) {
  const auto g = fixture_graph();
  const auto exact = exact_evaluate(g, nodes({1, 2}));
  const auto mc = monte_carlo_estimate(g, nodes({1, 2}), 1'000'000, 99);
  EXPECT_NEAR(mc.benefit, exact.benefit, 0.005 * exact.benefit);
  EXPECT_NEAR(mc.cost, exact.cost, 0.005 * exact.cost);
}

TEST(Exact, FixtureProfits) {
  const auto g = fixture_graph();
  const auto s23 = exact_evaluate(g, nodes({1, 2}));
  EXPECT_NEAR(s23.profit, 1.68, 1e-9);
  EXPECT_NEAR(s23.benefit, 5.88, 1e-9);
  EXPECT_NEAR(s23.cost, 4.20, 1e-9);
  EXPECT_NEAR(exact_evaluate(g, nodes({1, 3})).profit, -2.0, 1e-9);
  EXPECT_NEAR(exact_evaluate(g, nodes({1, 2, 3})).profit, 0.0, 1e-9);
  const auto none = exact_evaluate(g, nodes({}));
  EXPECT_EQ(none.benefit, 0.0);
  EXPECT_EQ(none.cost, 0.0);
  EXPECT_EQ(none.profit, 0.0);
}

TEST(Exact, ProfitIsNotMonotone) {
  EXPECT_NEAR(exact_evaluate(fixture_graph(), nodes({3})).profit, -3.0, 1e-12);
}

TEST(Exact, FixtureMarginals) {
  const auto g = fixture_graph();
  const double b = exact_marginal(g, nodes({1, 2, 3}), 0, Quantity::benefit);
  const double c = exact_marginal(g, nodes({}), 0, Quantity::cost);
  EXPECT_NEAR(b - c, -1.98, 1e-9);
  EXPECT_NEAR(exact_marginal(g, nodes({2}), 1, Quantity::benefit), 2.28, 1e-9);
  EXPECT_NEAR(exact_marginal(g, nodes({2}), 1, Quantity::cost), 1.70, 1e-9);
  EXPECT_NEAR(exact_marginal(g, nodes({2}), 1, Quantity::profit), 0.58, 1e-9);
  EXPECT_THROW(exact_marginal(g, nodes({1}), 1, Quantity::profit), DomainError);
}

TEST(Exact, EdgelessMarginalIsNetWeight) {
  const auto g = WeightedGraph::build(3, {}, {2, 0, 3}, {0, 1, 0});
  for (NodeId v = 0; v < 3; ++v)
    EXPECT_DOUBLE_EQ(exact_marginal(g, NodeSet(3, {static_cast<NodeId>((v + 1) % 3)}), v, Quantity::profit),
                     g.net_weight(v));
}

TEST(Exact, WorldProbabilitiesSumToOne) {
  Rng rng = make_rng(5, 0);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(ExactOracle(random_small_graph(rng, 7, 12)).world_probability_total(), 1.0, 1e-9);
}

TEST(Exact, CapacityErrors) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < 6; ++u)
    for (NodeId v = 0; v < 6; ++v)
      if (u != v) edges.push_back({u, v, 0.5});
  const auto g = WeightedGraph::build(6, edges, {}, {});
  try {
    ExactOracle oracle(g);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.cap(), default_edge_cap);
  }
  const auto wide = WeightedGraph::build(20, {}, {}, {});
  EXPECT_THROW(exhaustive_optimum(wide), CapacityError);
}

TEST(Exhaustive, Examples) {
  const auto fx = exhaustive_optimum(fixture_graph());
  EXPECT_EQ(fx.seeds, nodes({1, 2}));
  EXPECT_NEAR(fx.profit, 1.68, 1e-9);
  const auto edgeless = exhaustive_optimum(WeightedGraph::build(3, {}, {2, 0, 3}, {0, 1, 0}));
  EXPECT_EQ(edgeless.seeds, NodeSet(3, {0, 2}));
  EXPECT_DOUBLE_EQ(edgeless.profit, 5.0);
  const auto zero = exhaustive_optimum(WeightedGraph::build(3, {{0, 1, 0.5}}, {}, {}));
  EXPECT_TRUE(zero.seeds.empty());
  EXPECT_EQ(zero.profit, 0.0);
}

TEST(Exact, ReachabilityIsMonotonePerWorld) {
  Rng rng = make_rng(8, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_small_graph(rng, 7, 10);
    const std::size_t n = g.node_count();
    const auto worlds = enumerate_worlds(g, 12);
    for (int k = 0; k < 10; ++k) {
      const std::uint64_t t = uniform_index(rng, 1ULL << n);
      const std::uint64_t s = t & uniform_index(rng, 1ULL << n);
      const auto& w = worlds[uniform_index(rng, worlds.size())];
      EXPECT_TRUE(reachable(g, w, from_mask(n, s)).is_subset_of(reachable(g, w, from_mask(n, t))));
    }
  }
}

TEST(Exact, BenefitAndCostAreSubmodular) {
  Rng rng = make_rng(9, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_small_graph(rng, 7, 12);
    const ExactOracle oracle(g);
    const std::size_t n = g.node_count();
    for (int k = 0; k < 20; ++k) {
      const std::uint64_t t = uniform_index(rng, 1ULL << n);
      const std::uint64_t s = t & uniform_index(rng, 1ULL << n);
      const NodeSet big = from_mask(n, t), small = from_mask(n, s);
      for (NodeId v = 0; v < n; ++v) {
        if (big.contains(v)) continue;
        for (Metric m : {Metric::benefit, Metric::cost})
          EXPECT_GE(gain(oracle, m, small, v), gain(oracle, m, big, v) - 1e-9);
      }
    }
  }
}

TEST(Exact, AllOptimaAreSortedAndTied) {
  // Two disconnected copies of one node with w = 1: {0}, {1}, {0,1} -> only {0,1} is optimal.
  const auto g = WeightedGraph::build(3, {}, {1, 1, 0}, {0, 0, 0});
  const ExactOracle oracle(g);
  const auto all = all_optima(oracle);
  ASSERT_EQ(all.size(), 2u);  // {0,1} and {0,1,2} tie at 2
  EXPECT_EQ(all[0].seeds, NodeSet(3, {0, 1}));
  EXPECT_EQ(all[1].seeds, NodeSet(3, {0, 1, 2}));
}
