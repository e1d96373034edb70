// Prunes, selects and certifies on the four-node example graph, printing each
// intermediate value.
#include <iomanip>
#include <iostream>

#include "profitmax/profitmax.hpp"

using namespace profitmax;

int main() {
  const auto g = WeightedGraph::build(4, {{0, 1, 0.3}, {0, 3, 0.4}, {1, 3, 0.2}, {2, 3, 0.3}}, {1.5, 2, 3, 2},
                                      {1, 1, 1, 5}, {1, 2, 3, 4});
  const ExactOracle oracle(g);
  std::cout << std::setprecision(6);

  const Lattice lat = iterative_prune(oracle);
  for (std::size_t t = 0; t < lat.trace.size(); ++t) {
    const auto& step = lat.trace[t];
    std::cout << "sweep " << t + 1 << ":";
    for (std::size_t i = 0; i < step.candidates.size(); ++i)
      std::cout << "  v" << g.external_id(step.candidates[i]) << " [" << step.lower_gain[i] << ", "
                << step.upper_gain[i] << "]";
    std::cout << '\n';
  }
  std::cout << "lattice: " << lattice_to_json(g, lat)["must_include"] << " .. "
            << lattice_to_json(g, lat)["may_include"] << '\n';

  for (const auto& r : {greedy(oracle, lat), modmod(oracle, lat, {UpperBound::v3}), modmod(oracle, lat, {UpperBound::v4})})
    std::cout << r.algorithm << ": " << node_set_to_json(g, r.seeds) << " profit " << r.estimated_profit << '\n';

  const auto best = exhaustive_optimum(oracle);
  std::cout << "brute force: " << node_set_to_json(g, best.seeds) << " profit " << best.profit << '\n';

  const auto cert = certify(best.seeds, g, lat, 1'000'000, 1'000'000, 1e-3, 1);
  std::cout << "guarantee " << cert.guarantee << " (beta_l " << cert.beta_lower << ", gamma_u " << cert.gamma_upper
            << ", mu " << cert.mu_estimate << ", eps " << cert.epsilon_mu << ")\n";
}
