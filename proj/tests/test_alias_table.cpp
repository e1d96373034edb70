#include <gtest/gtest.h>

#include "profitmax/alias_table.hpp"

using namespace profitmax;

TEST(AliasTable, MatchesWeights) {
  const std::vector<double> w{1.5, 2, 3, 2};
  const AliasTable table(w);
  Rng rng = make_rng(3, 0);
  std::vector<std::size_t> counts(4, 0);
  const std::size_t draws = 850'000;
  for (std::size_t i = 0; i < draws; ++i) ++counts[table.sample(rng)];
  for (std::size_t v = 0; v < 4; ++v) EXPECT_NEAR(static_cast<double>(counts[v]) / draws, w[v] / 8.5, 0.002);
}

TEST(AliasTable, ZeroWeightsNeverDrawn) {
  const std::vector<double> w{0, 1, 0, 0, 3, 0};
  const AliasTable table(w);
  Rng rng = make_rng(4, 0);
  for (int i = 0; i < 100'000; ++i) {
    const auto v = table.sample(rng);
    EXPECT_TRUE(v == 1 || v == 4);
  }
}

TEST(AliasTable, RejectsDegenerateInput) {
  EXPECT_THROW(AliasTable(std::vector<double>{0, 0}), DomainError);
  EXPECT_THROW(AliasTable(std::vector<double>{}), DomainError);
  EXPECT_THROW(AliasTable(std::vector<double>{1, -1}), DomainError);
}

TEST(AliasTable, SingleEntry) {
  const AliasTable table(std::vector<double>{0.25});
  Rng rng = make_rng(0, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(table.sample(rng), 0u);
}
