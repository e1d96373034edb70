#include <gtest/gtest.h>

#include <sstream>

#include "fixture.hpp"
#include "profitmax/graph_io.hpp"

using namespace profitmax;
using profitmax::testing::data_path;
using profitmax::testing::fixture_graph;

namespace {

WeightedGraph parse(const std::string& text, ProbabilityPolicy policy = ProbabilityPolicy::wic()) {
  std::istringstream in(text);
  return parse_edge_list(in, policy);
}

}  // namespace

TEST(EdgeList, WeightedCascadeDefault) {
  const auto g = parse("0 1\n1 2");
  EXPECT_EQ(g.node_count(), 3u);
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(g.edge(0).probability, 1.0);
  EXPECT_DOUBLE_EQ(g.edge(1).probability, 1.0);
}

TEST(EdgeList, WeightedCascadeSplitsByInDegree) {
  const auto g = parse("0 2\n1 2\n3 2\n");
  for (const Edge& e : g.edges()) EXPECT_DOUBLE_EQ(e.probability, 1.0 / 3.0);
}

TEST(EdgeList, ExplicitProbabilitiesPassThrough) {
  const auto g = parse("0 1 0.4\n0 2 0.3", ProbabilityPolicy::constant(0.1));
  EXPECT_DOUBLE_EQ(g.edge(0).probability, 0.4);
  EXPECT_DOUBLE_EQ(g.edge(1).probability, 0.3);
  const auto h = parse("0 1\n", ProbabilityPolicy::constant(0.1));
  EXPECT_DOUBLE_EQ(h.edge(0).probability, 0.1);
}

TEST(EdgeList, CommentsAndBlankLines) {
  const auto g = parse("# header\n\n  0 1 0.5  \n# trailing\n");
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(EdgeList, MalformedLineReportsLineNumber) {
  try {
    parse("0 1\n0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("0 1 0.5 9\n"), ParseError);
  EXPECT_THROW(parse("a b\n"), ParseError);
}

TEST(EdgeList, DomainErrors) {
  EXPECT_THROW(parse("0 1 1.2\n"), DomainError);
  EXPECT_THROW(parse("0 1 -0.1\n"), DomainError);
  EXPECT_THROW(parse("3 3 0.5\n"), DomainError);
  EXPECT_THROW(ProbabilityPolicy::parse("often"), DomainError);
}

TEST(EdgeList, FixtureFile) {
  const auto bare = load_edge_list(data_path("fixture.edges"), ProbabilityPolicy::wic());
  EXPECT_EQ(bare.node_count(), 4u);
  EXPECT_EQ(bare.edge_count(), 4u);
  const auto g = load_weights(data_path("fixture.weights"), bare);
  EXPECT_EQ(g, fixture_graph());
}

TEST(EdgeList, MissingFileIsIoError) {
  EXPECT_THROW(load_edge_list("/nonexistent/graph.txt", ProbabilityPolicy::wic()), IoError);
}

TEST(EdgeList, RoundTrip) {
  const auto g = fixture_graph();
  std::stringstream edges, weights;
  write_edge_list(edges, g);
  write_weights(weights, g);
  const auto reloaded = apply_weight_rows(parse_edge_list(edges, ProbabilityPolicy::constant(0.0)),
                                          parse_weight_rows(weights));
  EXPECT_EQ(reloaded, g);
}

TEST(Weights, RejectsBadRows) {
  std::istringstream short_row("1 2\n"), negative("1 -1 0\n");
  EXPECT_THROW(parse_weight_rows(short_row), ParseError);
  EXPECT_THROW(parse_weight_rows(negative), DomainError);
}

TEST(GraphJson, RoundTripKeepsIsolatedNodes) {
  const auto g = WeightedGraph::build(3, {{0, 1, 0.25}}, {1, 0, 2}, {0, 1, 0}, {10, 20, 30});
  const auto back = graph_from_json(nlohmann::json::parse(graph_to_json(g).dump()));
  EXPECT_EQ(back, g);
  EXPECT_EQ(back.node_count(), 3u);
  EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"edges": []})")), ParseError);
}
