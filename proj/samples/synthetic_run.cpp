// Runs every selector on a synthetic 2000-node graph with RR estimates.
#include <chrono>
#include <iostream>

#include "profitmax/profitmax.hpp"

using namespace profitmax;

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1;
  const auto g = synthetic_social_graph(2000, 5.0, 1.0, seed);
  std::cout << g.node_count() << " nodes, " << g.edge_count() << " edges\n";

  const auto view = normalize_weights(g);
  const auto t0 = std::chrono::steady_clock::now();
  const auto est = ProfitEstimator::build(view, 40'000, 40'000, seed);
  const auto validation = ProfitEstimator::build(view, 40'000, 40'000, derive_seed(seed, validation_stream));
  std::cout << "sampling "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";

  const Lattice lat = iterative_prune(est);
  std::cout << "pruned to |A|=" << lat.must_include.size() << " |B|=" << lat.may_include.size() << '\n';

  std::vector<SelectionResult> results{greedy(est, lat), modmod(est, lat, {UpperBound::v3}),
                                       modmod(est, lat, {UpperBound::v4}),
                                       k_sweep(BaselineKind::random, view, est, seed),
                                       k_sweep(BaselineKind::highdegree, view, est, seed),
                                       k_sweep(BaselineKind::benefitmax, view, est, seed)};
  for (const auto& r : results)
    std::cout << r.algorithm << ": " << r.seeds.size() << " seeds, validation profit "
              << profit(validation, r.seeds) << '\n';
}
