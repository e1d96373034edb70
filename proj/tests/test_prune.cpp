#include <gtest/gtest.h>

#include "fixture.hpp"
#include "profitmax/diffusion.hpp"
#include "profitmax/generators.hpp"
#include "profitmax/prune.hpp"
#include "profitmax/rr_sampling.hpp"

using namespace profitmax;
using profitmax::testing::fixture_graph;
using profitmax::testing::nodes;

namespace {

void expect_values(const std::vector<double>& got, const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9) << "index " << i;
}

NodeSet from_mask(std::size_t n, std::uint64_t mask) {
  NodeSet s(n);
  for (NodeId v = 0; v < n; ++v)
    if (mask >> v & 1) s.insert(v);
  return s;
}

}  // namespace

TEST(Prune, FixtureTrace) {
  const ExactOracle oracle(fixture_graph());
  const Lattice lat = iterative_prune(oracle);
  EXPECT_EQ(lat.must_include, nodes({2}));
  EXPECT_EQ(lat.may_include, nodes({0, 1, 2}));
  ASSERT_EQ(lat.trace.size(), 3u);

  EXPECT_EQ(lat.trace[0].candidates, (std::vector<NodeId>{0, 1, 2, 3}));
  expect_values(lat.trace[0].lower_gain, {-1.98, -0.6, 0.5, -4.328});
  expect_values(lat.trace[0].upper_gain, {1.972, 1.7, 2.6, 0.32});

  EXPECT_EQ(lat.trace[1].candidates, (std::vector<NodeId>{0, 1, 3}));
  expect_values(lat.trace[1].lower_gain, {-1.326, -0.3, -2.828});
  expect_values(lat.trace[1].upper_gain, {1.7104, 1.58, -0.28});

  EXPECT_EQ(lat.trace[2].candidates, (std::vector<NodeId>{0, 1}));
  expect_values(lat.trace[2].lower_gain, {-0.878, -0.1824});
  expect_values(lat.trace[2].upper_gain, {0.5904, 1.286});

  // The third sweep changes nothing, so it is the fixpoint.
  EXPECT_EQ(lat.trace[2].must_include, lat.must_include);
  EXPECT_EQ(lat.trace[2].may_include, lat.may_include);
  EXPECT_DOUBLE_EQ(lat.reduction(), 0.5);
}

TEST(Prune, EdgelessGraphDecidesBySign) {
  const auto g = WeightedGraph::build(4, {}, {2, 0, 1, 1}, {0, 1, 1, 0});
  const Lattice lat = iterative_prune(ExactOracle(g));
  EXPECT_EQ(lat.must_include, NodeSet(4, {0, 3}));
  EXPECT_EQ(lat.may_include, NodeSet(4, {0, 2, 3}));
  EXPECT_EQ(lat.trace.size(), 2u);
}

TEST(Prune, ZeroWeightsDecideNothing) {
  const auto g = WeightedGraph::build(3, {{0, 1, 0.5}}, {}, {});
  const Lattice lat = iterative_prune(ExactOracle(g));
  EXPECT_TRUE(lat.must_include.empty());
  EXPECT_EQ(lat.may_include, NodeSet::full(3));
  EXPECT_DOUBLE_EQ(lat.reduction(), 0.0);
}

TEST(Prune, UniverseMismatch) {
  const ExactOracle oracle(fixture_graph());
  EXPECT_THROW(iterative_prune(oracle, NodeSet::full(5)), DomainError);
}

TEST(Project, Examples) {
  const Lattice lat{nodes({2}), nodes({0, 1, 2}), {}};
  EXPECT_EQ(project(nodes({1, 3}), lat), nodes({1, 2}));
  EXPECT_EQ(project(nodes({0, 2}), lat), nodes({0, 2}));
  EXPECT_EQ(project(nodes({}), lat), nodes({2}));
}

TEST(Prune, TraceIsNestedOnRRCollections) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = synthetic_social_graph(200, 3.0, 0.8, seed);
    const auto e = ProfitEstimator::build(g, 5000, 5000, seed, 1);
    const Lattice lat = iterative_prune(e);
    for (std::size_t t = 0; t + 1 < lat.trace.size(); ++t) {
      EXPECT_TRUE(lat.trace[t].must_include.is_subset_of(lat.trace[t + 1].must_include));
      EXPECT_TRUE(lat.trace[t + 1].must_include.is_subset_of(lat.trace[t + 1].may_include));
      EXPECT_TRUE(lat.trace[t + 1].may_include.is_subset_of(lat.trace[t].may_include));
    }
  }
}

TEST(Prune, PropertiesOnRandomGraphs) {
  Rng rng = make_rng(31, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_small_graph(rng, 6, 10);
    const std::size_t n = g.node_count();
    const ExactOracle oracle(g);
    const Lattice lat = iterative_prune(oracle);
    // Every optimum lies inside the lattice.
    for (const auto& opt : all_optima(oracle)) EXPECT_TRUE(lat.contains(opt.seeds));
    // Projection never hurts and strictly helps outside the lattice.
    for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
      const NodeSet s = from_mask(n, mask);
      const double before = oracle.evaluate(s).profit, after = oracle.evaluate(project(s, lat)).profit;
      if (lat.contains(s))
        EXPECT_EQ(project(s, lat), s);
      else
        EXPECT_GT(after, before - 1e-9);
    }
    // Normalized weights prune at least as far.
    const Lattice norm = iterative_prune(ExactOracle(normalize_weights(g)));
    EXPECT_TRUE(lat.must_include.is_subset_of(norm.must_include));
    EXPECT_TRUE(norm.must_include.is_subset_of(norm.may_include));
    EXPECT_TRUE(norm.may_include.is_subset_of(lat.may_include));
  }
}
