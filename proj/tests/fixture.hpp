#pragma once

#include <string>

#include "profitmax/graph.hpp"
#include "profitmax/node_set.hpp"

namespace profitmax::testing {

// v1..v4 are internal ids 0..3.
inline WeightedGraph fixture_graph() {
  return WeightedGraph::build(4, {{0, 1, 0.3}, {0, 3, 0.4}, {1, 3, 0.2}, {2, 3, 0.3}}, {1.5, 2, 3, 2}, {1, 1, 1, 5},
                              {1, 2, 3, 4});
}

inline NodeSet nodes(std::initializer_list<NodeId> ids, std::size_t n = 4) { return NodeSet(n, ids); }

inline std::string data_path(const std::string& name) { return std::string(PROFITMAX_TEST_DATA) + "/" + name; }

}  // namespace profitmax::testing
