#include <gtest/gtest.h>

#include "profitmax/node_set.hpp"

using profitmax::DomainError;
using profitmax::NodeId;
using profitmax::NodeSet;

TEST(NodeSet, InsertEraseAndMembers) {
  NodeSet s(5);
  EXPECT_TRUE(s.empty());
  s.insert(3);
  s.insert(1);
  s.insert(3);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.members(), (std::vector<NodeId>{1, 3}));
  s.erase(3);
  s.erase(4);
  EXPECT_EQ(s.members(), (std::vector<NodeId>{1}));
}

TEST(NodeSet, OutOfRangeThrows) {
  NodeSet s(3);
  EXPECT_THROW(s.insert(3), DomainError);
  EXPECT_THROW(s.erase(7), DomainError);
  EXPECT_FALSE(s.contains(9));
}

TEST(NodeSet, SetAlgebra) {
  const NodeSet a(6, {0, 1, 2}), b(6, {2, 3});
  EXPECT_EQ(set_union(a, b), NodeSet(6, {0, 1, 2, 3}));
  EXPECT_EQ(set_intersection(a, b), NodeSet(6, {2}));
  EXPECT_EQ(set_difference(a, b), NodeSet(6, {0, 1}));
  EXPECT_TRUE(NodeSet(6, {1}).is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_EQ(NodeSet::full(3).size(), 3u);
  EXPECT_EQ(a.with(5).without(0), NodeSet(6, {1, 2, 5}));
}
