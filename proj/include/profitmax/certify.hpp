#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "profitmax/errors.hpp"
#include "profitmax/evaluator.hpp"
#include "profitmax/graph.hpp"
#include "profitmax/modular.hpp"
#include "profitmax/node_set.hpp"
#include "profitmax/prune.hpp"
#include "profitmax/random.hpp"
#include "profitmax/rr_sampling.hpp"

namespace profitmax {

/// Upper bound on the best achievable profit: the maximum over the lattice of
/// m_X(Y; β) - h_X^π(Y; γ), a modular upper bound on benefit minus a modular
/// lower bound on cost, both tight at X.
template <ProfitEvaluator E>
double mu_bound(const E& eval, const NodeSet& x, const Lattice& lat, UpperBound variant,
                PermutationPolicy policy = PermutationPolicy::singleton_profit, std::uint64_t seed = 0) {
  if (!lat.contains(x)) throw DomainError("X must lie inside the lattice");
  const ModularFunction m = modular_upper(eval, Metric::benefit, x, variant, lat);
  const auto score = policy == PermutationPolicy::singleton_profit ? singleton_scores(eval, lat.may_include)
                                                                   : std::vector<double>(eval.node_count(), 0.0);
  Rng rng = make_rng(seed, static_cast<std::uint64_t>(variant));
  const auto pi = lattice_permutation(x, lat, policy, score, rng);
  const ModularFunction h = modular_lower(eval, Metric::cost, x, pi, lat);
  const NodeSet y = maximize_modular_difference(m, h, lat);
  return m(y) - h(y);
}

/// Sampling slack ε(μ̃) added to an estimated profit bound μ̃:
///   ρ_γ√(a((ρ_β θ_β - μ̃)/ρ_γ + a/4)) + a(ρ_β - ρ_γ)/2 + ρ_β√(a(θ_β + a/4))
/// with ρ_β = Υ_b/θ_β and ρ_γ = Υ_c/θ_γ. The first term is evaluated as
/// √(a(ρ_γ(ρ_β θ_β - μ̃) + aρ_γ²/4)) so that ρ_γ = 0 is well defined.
inline double epsilon_mu(double mu_tilde, std::size_t theta_benefit, std::size_t theta_cost, double upsilon_b,
                         double upsilon_c, double delta) {
  if (theta_benefit == 0 || theta_cost == 0) throw DomainError("theta must be >= 1");
  if (!(upsilon_b >= 0.0) || !(upsilon_c >= 0.0)) throw DomainError("weight totals must be >= 0");
  const double a = chernoff_constant(delta);
  const double tb = static_cast<double>(theta_benefit);
  const double rho_b = upsilon_b / tb;
  const double rho_c = upsilon_c / static_cast<double>(theta_cost);
  const double radicand = rho_c * (rho_b * tb - mu_tilde) + 0.25 * a * rho_c * rho_c;
  if (radicand < 0.0) throw DomainError("mu estimate exceeds the benefit ceiling");
  return std::sqrt(a * radicand) + 0.5 * a * (rho_b - rho_c) + rho_b * std::sqrt(a * (tb + 0.25 * a));
}

struct ProfitCertificate {
  NodeSet seeds;
  double beta_estimate = 0.0;
  double gamma_estimate = 0.0;
  double phi_estimate = 0.0;
  double beta_lower = 0.0;
  double beta_upper = 0.0;
  double gamma_lower = 0.0;
  double gamma_upper = 0.0;
  double mu3 = 0.0;
  double mu4 = 0.0;
  /// min(mu3, mu4), capped at Υ_b.
  double mu_estimate = 0.0;
  double epsilon_mu = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double guarantee = 0.0;
  double delta = 0.0;
  std::size_t theta_benefit = 0;
  std::size_t theta_cost = 0;
  double upsilon_b = 0.0;
  double upsilon_c = 0.0;
  std::uint64_t seed = 0;
};

/// Certificate for `seeds` from an estimator whose collections were sampled
/// independently of how `seeds` was chosen.
inline ProfitCertificate certify_with(const ProfitEstimator& validation, const NodeSet& seeds, const Lattice& lat,
                                      double delta, PermutationPolicy policy = PermutationPolicy::singleton_profit,
                                      std::uint64_t seed = 0) {
  if (!lat.contains(seeds)) throw DomainError("certified seeds must lie inside the lattice");
  ProfitCertificate cert;
  cert.seeds = seeds;
  cert.delta = delta;
  cert.seed = seed;
  cert.theta_benefit = validation.theta(Metric::benefit);
  cert.theta_cost = validation.theta(Metric::cost);
  cert.upsilon_b = validation.upsilon(Metric::benefit);
  cert.upsilon_c = validation.upsilon(Metric::cost);

  const Estimate est = validation.estimate(seeds);
  cert.beta_estimate = est.benefit;
  cert.gamma_estimate = est.cost;
  cert.phi_estimate = est.profit;
  const auto beta = confidence_bounds(validation.coverage(Metric::benefit, seeds), cert.theta_benefit, cert.upsilon_b,
                                      delta);
  const auto gamma =
      confidence_bounds(validation.coverage(Metric::cost, seeds), cert.theta_cost, cert.upsilon_c, delta);
  cert.beta_lower = beta.lower;
  cert.beta_upper = beta.upper;
  cert.gamma_lower = gamma.lower;
  cert.gamma_upper = gamma.upper;

  cert.mu3 = mu_bound(validation, seeds, lat, UpperBound::v3, policy, seed);
  cert.mu4 = mu_bound(validation, seeds, lat, UpperBound::v4, policy, seed);
  // No profit exceeds the total benefit, so the cap keeps the bound sound.
  cert.mu_estimate = std::min({cert.mu3, cert.mu4, cert.upsilon_b});
  cert.epsilon_mu =
      epsilon_mu(cert.mu_estimate, cert.theta_benefit, cert.theta_cost, cert.upsilon_b, cert.upsilon_c, delta);

  cert.numerator = cert.beta_lower - cert.gamma_upper;
  cert.denominator = cert.mu_estimate + cert.epsilon_mu;
  cert.guarantee = cert.denominator > 0.0 ? cert.numerator / cert.denominator
                                          : std::numeric_limits<double>::quiet_NaN();
  return cert;
}

/// Stream tag for validation collections, kept apart from the selection
/// collections drawn from the same master seed.
inline constexpr std::uint64_t validation_stream = 0x76616c6964ULL;

/// Draws fresh validation collections on the normalized weights of `g` and
/// certifies `seeds`. Total confidence is 1 - 2δ.
inline ProfitCertificate certify(const NodeSet& seeds, const WeightedGraph& g, const Lattice& lat,
                                 std::size_t theta_benefit, std::size_t theta_cost, double delta, std::uint64_t seed,
                                 PermutationPolicy policy = PermutationPolicy::singleton_profit, unsigned workers = 0) {
  chernoff_constant(delta);  // validates δ before any sampling
  const WeightedGraph view = normalize_weights(g);
  const auto validation =
      ProfitEstimator::build(view, theta_benefit, theta_cost, derive_seed(seed, validation_stream), workers);
  return certify_with(validation, seeds, lat, delta, policy, seed);
}

}  // namespace profitmax
