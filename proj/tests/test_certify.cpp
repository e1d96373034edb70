#include <gtest/gtest.h>

#include <cmath>

#include "fixture.hpp"
#include "profitmax/certify.hpp"
#include "profitmax/diffusion.hpp"
#include "profitmax/generators.hpp"
#include "profitmax/optimize.hpp"

using namespace profitmax;
using profitmax::testing::fixture_graph;
using profitmax::testing::nodes;

TEST(MuBound, EdgelessIsExact) {
  const auto g = WeightedGraph::build(4, {}, {2, 0, 3, 1}, {0, 1, 1, 4});
  const ExactOracle oracle(g);
  const Lattice lat = Lattice::trivial(4);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    NodeSet x(4);
    for (NodeId v = 0; v < 4; ++v)
      if (mask >> v & 1) x.insert(v);
    for (auto variant : {UpperBound::v3, UpperBound::v4}) EXPECT_NEAR(mu_bound(oracle, x, lat, variant), 4.0, 1e-12);
  }
}

TEST(MuBound, FixtureBoundsTheOptimum) {
  const ExactOracle oracle(fixture_graph());
  const Lattice lat = iterative_prune(oracle);
  const double mu3 = mu_bound(oracle, nodes({1, 2}), lat, UpperBound::v3);
  const double mu4 = mu_bound(oracle, nodes({1, 2}), lat, UpperBound::v4);
  EXPECT_GE(mu3, 1.68 - 1e-9);
  EXPECT_GE(mu4, 1.68 - 1e-9);
  EXPECT_THROW(mu_bound(oracle, nodes({3}), lat, UpperBound::v3), DomainError);
}

TEST(MuBound, RandomGraphsBoundTheOptimum) {
  Rng rng = make_rng(55, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_small_graph(rng, 7, 12);
    const ExactOracle oracle(g);
    const Lattice lat = iterative_prune(oracle);
    const double best = exhaustive_optimum(oracle).profit;
    const auto x = greedy(oracle, lat).seeds;
    for (auto policy : {PermutationPolicy::singleton_profit, PermutationPolicy::random}) {
      const double mu = std::min(mu_bound(oracle, x, lat, UpperBound::v3, policy, 1),
                                 mu_bound(oracle, x, lat, UpperBound::v4, policy, 1));
      EXPECT_GE(mu, best - 1e-9);
    }
  }
}

TEST(Epsilon, AtTheBenefitCeiling) {
  const double a = chernoff_constant(1e-3);
  const double rho_b = 100.0 / 1e4;
  const double expected = 0.5 * a * rho_b + rho_b * std::sqrt(a * (1e4 + 0.25 * a));
  EXPECT_NEAR(epsilon_mu(100.0, 10'000, 20'000, 100.0, 60.0, 1e-3), expected, 1e-12);
}

TEST(Epsilon, RegressionValue) {
  EXPECT_NEAR(epsilon_mu(50.0, 10'000, 10'000, 100.0, 100.0, 1e-6), 11.029898640216334, 1e-12);
}

TEST(Epsilon, NonIncreasingInMu) {
  double previous = std::numeric_limits<double>::infinity();
  for (double mu = -20.0; mu <= 100.0; mu += 0.5) {
    const double eps = epsilon_mu(mu, 10'000, 10'000, 100.0, 100.0, 1e-6);
    EXPECT_LE(eps, previous + 1e-12);
    EXPECT_GE(eps, 0.0);
    previous = eps;
  }
}

TEST(Epsilon, ZeroCostTotalAndErrors) {
  EXPECT_NO_THROW(epsilon_mu(3.0, 100, 100, 5.0, 0.0, 0.01));
  EXPECT_THROW(epsilon_mu(1e6, 100, 100, 5.0, 5.0, 0.01), DomainError);
  EXPECT_THROW(epsilon_mu(1.0, 0, 100, 5.0, 5.0, 0.01), DomainError);
  EXPECT_THROW(epsilon_mu(1.0, 100, 100, 5.0, 5.0, 2.0), DomainError);
}

TEST(Certify, FixtureGuarantee) {
  const auto g = fixture_graph();
  const ExactOracle oracle(g);
  const Lattice lat = iterative_prune(oracle);
  const auto cert = certify(nodes({1, 2}), g, lat, 1'000'000, 1'000'000, 1e-3, 7);
  EXPECT_GE(cert.guarantee, 0.9);
  EXPECT_LE(cert.guarantee, 1.0);
  EXPECT_LE(cert.beta_lower, cert.beta_estimate);
  EXPECT_GE(cert.beta_upper, cert.beta_estimate);
  EXPECT_LE(cert.gamma_lower, cert.gamma_estimate);
  EXPECT_GE(cert.gamma_upper, cert.gamma_estimate);
  EXPECT_GE(cert.epsilon_mu, 0.0);
  EXPECT_DOUBLE_EQ(cert.mu_estimate, std::min({cert.mu3, cert.mu4, cert.upsilon_b}));
  EXPECT_DOUBLE_EQ(cert.guarantee, cert.numerator / cert.denominator);
  // Validation collections use normalized weights.
  EXPECT_DOUBLE_EQ(cert.upsilon_b, 3.5);
  EXPECT_DOUBLE_EQ(cert.upsilon_c, 3.0);
}

TEST(Certify, SingleNodeApproachesOne) {
  const auto g = WeightedGraph::build(1, {}, {1}, {0});
  double previous = 0.0;
  for (std::size_t theta : {1'000u, 100'000u, 10'000'000u}) {
    const auto cert = certify(NodeSet(1, {0}), g, Lattice::trivial(1), theta, theta, 1e-6, 1);
    EXPECT_DOUBLE_EQ(cert.mu_estimate, 1.0);
    EXPECT_EQ(cert.gamma_upper, 0.0);
    EXPECT_NEAR(cert.guarantee, cert.beta_lower / (1.0 + cert.epsilon_mu), 1e-12);
    EXPECT_GT(cert.guarantee, previous);
    previous = cert.guarantee;
  }
  EXPECT_GT(previous, 0.99);
}

TEST(Certify, RejectsBadInputs) {
  const auto g = fixture_graph();
  const Lattice lat{nodes({2}), nodes({0, 1, 2}), {}};
  EXPECT_THROW(certify(nodes({1, 2}), g, lat, 100, 100, 0.0, 1), DomainError);
  EXPECT_THROW(certify(nodes({3}), g, lat, 100, 100, 0.1, 1), DomainError);
}

TEST(Certify, NegativeNumeratorIsReported) {
  const auto g = fixture_graph();
  const auto cert = certify(nodes({3}), g, Lattice::trivial(4), 10'000, 10'000, 1e-3, 3);
  EXPECT_LT(cert.numerator, 0.0);
  EXPECT_LT(cert.guarantee, 0.0);
}
