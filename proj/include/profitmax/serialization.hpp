#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "profitmax/certify.hpp"
#include "profitmax/errors.hpp"
#include "profitmax/graph.hpp"
#include "profitmax/node_set.hpp"
#include "profitmax/optimize.hpp"
#include "profitmax/prune.hpp"

namespace profitmax {

/// Node sets are written as sorted external ids.
inline nlohmann::json node_set_to_json(const WeightedGraph& g, const NodeSet& s) {
  auto out = nlohmann::json::array();
  for (NodeId v : s.members()) out.push_back(g.external_id(v));
  return out;
}

inline NodeSet node_set_from_json(const WeightedGraph& g, const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError(0, "node set must be a JSON array of ids");
  NodeSet s(g.node_count());
  for (const auto& id : j) {
    const auto v = g.internal_id(id.get<std::uint64_t>());
    if (!v) throw DomainError("unknown node id " + id.dump());
    s.insert(*v);
  }
  return s;
}

inline nlohmann::json lattice_to_json(const WeightedGraph& g, const Lattice& lat) {
  nlohmann::json trace = nlohmann::json::array();
  for (const PruneStep& step : lat.trace) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < step.candidates.size(); ++i)
      rows.push_back({{"node", g.external_id(step.candidates[i])},
                      {"lower_gain", step.lower_gain[i]},
                      {"upper_gain", step.upper_gain[i]}});
    trace.push_back({{"must_include", node_set_to_json(g, step.must_include)},
                     {"may_include", node_set_to_json(g, step.may_include)},
                     {"candidates", std::move(rows)}});
  }
  return {{"nodes", g.node_count()},
          {"must_include", node_set_to_json(g, lat.must_include)},
          {"may_include", node_set_to_json(g, lat.may_include)},
          {"reduction", lat.reduction()},
          {"trace", std::move(trace)}};
}

/// Reads back A and B; the trace is not restored.
inline Lattice lattice_from_json(const WeightedGraph& g, const nlohmann::json& j) {
  Lattice lat{node_set_from_json(g, j.at("must_include")), node_set_from_json(g, j.at("may_include")), {}};
  if (!lat.must_include.is_subset_of(lat.may_include)) throw DomainError("lattice needs must_include within may_include");
  return lat;
}

inline nlohmann::json selection_to_json(const WeightedGraph& g, const SelectionResult& r) {
  nlohmann::json trajectory = nlohmann::json::array();
  for (const auto& p : r.trajectory) trajectory.push_back({{"seeds", node_set_to_json(g, p.seeds)}, {"profit", p.profit}});
  return {{"algorithm", r.algorithm},
          {"parameters", r.parameters},
          {"seeds", node_set_to_json(g, r.seeds)},
          {"estimated_profit", r.estimated_profit},
          {"trajectory", std::move(trajectory)}};
}

inline nlohmann::json certificate_to_json(const WeightedGraph& g, const ProfitCertificate& c) {
  return {{"seeds", node_set_to_json(g, c.seeds)},
          {"beta_estimate", c.beta_estimate},
          {"gamma_estimate", c.gamma_estimate},
          {"phi_estimate", c.phi_estimate},
          {"beta_lower", c.beta_lower},
          {"beta_upper", c.beta_upper},
          {"gamma_lower", c.gamma_lower},
          {"gamma_upper", c.gamma_upper},
          {"mu3", c.mu3},
          {"mu4", c.mu4},
          {"mu_estimate", c.mu_estimate},
          {"epsilon_mu", c.epsilon_mu},
          {"numerator", c.numerator},
          {"denominator", c.denominator},
          {"guarantee", c.guarantee},
          {"delta", c.delta},
          {"theta_benefit", c.theta_benefit},
          {"theta_cost", c.theta_cost},
          {"upsilon_b", c.upsilon_b},
          {"upsilon_c", c.upsilon_c},
          {"seed", c.seed}};
}

}  // namespace profitmax
