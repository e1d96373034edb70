#include <gtest/gtest.h>

#include "fixture.hpp"
#include "profitmax/diffusion.hpp"
#include "profitmax/generators.hpp"
#include "profitmax/graph.hpp"

using namespace profitmax;
using profitmax::testing::fixture_graph;

TEST(Graph, AdjacencyMirrorsEdges) {
  const auto g = fixture_graph();
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.out_degree(0), 2u);
  EXPECT_EQ(g.in_degree(3), 3u);
  std::multiset<std::pair<NodeId, NodeId>> fwd, rev;
  for (NodeId v = 0; v < 4; ++v) {
    for (auto e : g.out_edges(v)) fwd.emplace(g.edge(e).source, g.edge(e).target);
    for (auto e : g.in_edges(v)) rev.emplace(g.edge(e).source, g.edge(e).target);
  }
  EXPECT_EQ(fwd, rev);
  EXPECT_EQ(fwd.size(), 4u);
}

TEST(Graph, RejectsInvalidInput) {
  EXPECT_THROW(WeightedGraph::build(2, {{0, 0, 0.5}}, {}, {}), DomainError);
  EXPECT_THROW(WeightedGraph::build(2, {{0, 1, 1.5}}, {}, {}), DomainError);
  EXPECT_THROW(WeightedGraph::build(2, {{0, 1, 0.5}, {0, 1, 0.2}}, {}, {}), DomainError);
  EXPECT_THROW(WeightedGraph::build(2, {}, {-1, 0}, {}), DomainError);
  EXPECT_THROW(WeightedGraph::build(2, {}, {}, {0, 1}, {7, 7}), DomainError);
  EXPECT_THROW(WeightedGraph::build(2, {{0, 2, 0.5}}, {}, {}), DomainError);
}

TEST(Graph, ExternalIdsAreRemapped) {
  const auto g = fixture_graph();
  EXPECT_EQ(g.external_id(2), 3u);
  EXPECT_EQ(g.internal_id(4), NodeId{3});
  EXPECT_FALSE(g.internal_id(99).has_value());
}

TEST(AssignWeights, PathWithDegreeCost) {
  const auto g = WeightedGraph::build(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {}, {});
  const auto w = assign_weights(g, WeightDistribution::uniform, WeightDistribution::degree_proportional, 1.0);
  EXPECT_EQ(std::vector<double>(w.benefit().begin(), w.benefit().end()), (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(std::vector<double>(w.cost().begin(), w.cost().end()), (std::vector<double>{1.5, 1.5, 0}));
}

TEST(AssignWeights, EqualDegreesGiveEqualWeights) {
  const auto g = WeightedGraph::build(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}, {}, {});
  const auto w = assign_weights(g, WeightDistribution::uniform, WeightDistribution::degree_proportional, 1.0);
  for (NodeId v = 0; v < 3; ++v) {
    EXPECT_DOUBLE_EQ(w.benefit(v), 1.0);
    EXPECT_DOUBLE_EQ(w.cost(v), 1.0);
  }
}

TEST(AssignWeights, RejectsNonPositiveScale) {
  const auto g = fixture_graph();
  EXPECT_THROW(assign_weights(g, WeightDistribution::uniform, WeightDistribution::uniform, 0.0), DomainError);
  EXPECT_THROW(assign_weights(g, WeightDistribution::uniform, WeightDistribution::uniform, -2.0), DomainError);
}

TEST(AssignWeights, ExplicitRowsOverride) {
  const auto bare = WeightedGraph::build(4, {{0, 1, 0.3}, {0, 3, 0.4}, {1, 3, 0.2}, {2, 3, 0.3}}, {}, {}, {1, 2, 3, 4});
  const std::vector<WeightRow> rows{{1, 1.5, 1}, {2, 2, 1}, {3, 3, 1}, {4, 2, 5}};
  const auto g = apply_weight_rows(bare, rows);
  EXPECT_EQ(g, fixture_graph());
  const std::vector<WeightRow> bad{{9, 1, 1}};
  EXPECT_THROW(apply_weight_rows(bare, bad), DomainError);
}

TEST(Normalize, FixtureValues) {
  const auto g = normalize_weights(fixture_graph());
  EXPECT_TRUE(g.normalized());
  const std::vector<double> b{0.5, 1, 2, 0}, c{0, 0, 0, 3};
  for (NodeId v = 0; v < 4; ++v) {
    EXPECT_DOUBLE_EQ(g.benefit(v), b[v]);
    EXPECT_DOUBLE_EQ(g.cost(v), c[v]);
  }
}

TEST(Normalize, EqualWeightsVanishAndIdempotent) {
  const auto g = WeightedGraph::build(2, {{0, 1, 0.5}}, {2, 3}, {2, 3});
  const auto n = normalize_weights(g);
  EXPECT_EQ(n.totals().upsilon_b, 0.0);
  EXPECT_EQ(n.totals().upsilon_c, 0.0);
  const auto f = normalize_weights(fixture_graph());
  EXPECT_EQ(normalize_weights(f), f);
}

TEST(Normalize, PreservesNetWeightAndExactProfit) {
  Rng rng = make_rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_small_graph(rng, 6, 8);
    const auto n = normalize_weights(g);
    const ExactOracle raw(g), norm(n);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      EXPECT_NEAR(g.net_weight(v), n.net_weight(v), 1e-12);
      EXPECT_EQ(std::min(n.benefit(v), n.cost(v)), 0.0);
    }
    for (std::uint64_t mask = 0; mask < (1u << g.node_count()); ++mask) {
      NodeSet s(g.node_count());
      for (NodeId v = 0; v < g.node_count(); ++v)
        if (mask >> v & 1) s.insert(v);
      EXPECT_NEAR(raw.evaluate(s).profit, norm.evaluate(s).profit, 1e-12);
    }
  }
}
