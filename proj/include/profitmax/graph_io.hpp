#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "profitmax/errors.hpp"
#include "profitmax/graph.hpp"

namespace profitmax {

/// Probability assigned to edge-list lines that omit p: a constant, or the
/// weighted-cascade convention p(u,v) = 1 / in-degree(v).
struct ProbabilityPolicy {
  enum class Kind { constant, weighted_cascade };
  Kind kind = Kind::weighted_cascade;
  double value = 0.0;

  static ProbabilityPolicy constant(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("default probability must lie in [0,1]");
    return {Kind::constant, p};
  }
  static ProbabilityPolicy wic() { return {Kind::weighted_cascade, 0.0}; }

  /// "wic" or a number in [0,1].
  static ProbabilityPolicy parse(std::string_view text) {
    if (text == "wic") return wic();
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw DomainError("probability policy must be 'wic' or a number, got '" + std::string(text) + "'");
    return constant(p);
  }
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool is_comment_or_blank(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens.front().front() == '#';
}

inline std::uint64_t parse_id(std::string_view tok, std::size_t line) {
  std::uint64_t id = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a nonnegative integer node id, got '" + std::string(tok) + "'");
  return id;
}

inline double parse_real(std::string_view tok, std::size_t line) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a real number, got '" + std::string(tok) + "'");
  return x;
}

/// Shortest decimal text that parses back to exactly x.
inline std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace detail

/// Parses `u v [p]` lines. Node ids are remapped to 0..n-1 in increasing
/// order of external id; `#` lines and blank lines are skipped.
inline WeightedGraph parse_edge_list(std::istream& in, ProbabilityPolicy policy) {
  struct RawEdge {
    std::uint64_t u, v;
    std::optional<double> p;
    std::size_t line;
  };
  std::vector<RawEdge> raw;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    auto tokens = detail::split_ws(text);
    if (detail::is_comment_or_blank(tokens)) continue;
    if (tokens.size() < 2 || tokens.size() > 3)
      throw ParseError(line_no, "expected 'u v [p]', got " + std::to_string(tokens.size()) + " fields");
    RawEdge e{detail::parse_id(tokens[0], line_no), detail::parse_id(tokens[1], line_no), std::nullopt, line_no};
    if (tokens.size() == 3) {
      e.p = detail::parse_real(tokens[2], line_no);
      if (!(*e.p >= 0.0 && *e.p <= 1.0))
        throw DomainError("line " + std::to_string(line_no) + ": probability outside [0,1]");
    }
    if (e.u == e.v) throw DomainError("line " + std::to_string(line_no) + ": self-loop rejected");
    raw.push_back(e);
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& e : raw) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto internal = [&](std::uint64_t ext) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), ext) - ids.begin());
  };

  std::vector<std::size_t> in_degree(ids.size(), 0);
  for (const auto& e : raw) ++in_degree[internal(e.v)];

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) {
    const NodeId v = internal(e.v);
    double p = 0.0;
    if (e.p)
      p = *e.p;
    else if (policy.kind == ProbabilityPolicy::Kind::constant)
      p = policy.value;
    else
      p = 1.0 / static_cast<double>(in_degree[v]);
    edges.push_back({internal(e.u), v, p});
  }
  const std::size_t n = ids.size();
  return WeightedGraph::build(n, std::move(edges), {}, {}, std::move(ids));
}

inline WeightedGraph load_edge_list(const std::string& path, ProbabilityPolicy policy) {
  auto in = detail::open_input(path);
  return parse_edge_list(in, policy);
}

/// Writes every edge with its explicit probability, so reloading with any
/// policy reproduces the topology and probabilities exactly.
inline void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "# source target probability\n";
  for (const Edge& e : g.edges())
    out << g.external_id(e.source) << ' ' << g.external_id(e.target) << ' '
        << detail::format_real(e.probability) << '\n';
}

/// Parses `v b c` rows.
inline std::vector<WeightRow> parse_weight_rows(std::istream& in) {
  std::vector<WeightRow> rows;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    auto tokens = detail::split_ws(text);
    if (detail::is_comment_or_blank(tokens)) continue;
    if (tokens.size() != 3) throw ParseError(line_no, "expected 'v b c'");
    WeightRow row{detail::parse_id(tokens[0], line_no), detail::parse_real(tokens[1], line_no),
                  detail::parse_real(tokens[2], line_no)};
    if (!(row.benefit >= 0.0) || !(row.cost >= 0.0))
      throw DomainError("line " + std::to_string(line_no) + ": weights must be >= 0");
    rows.push_back(row);
  }
  return rows;
}

inline WeightedGraph load_weights(const std::string& path, const WeightedGraph& g) {
  auto in = detail::open_input(path);
  auto rows = parse_weight_rows(in);
  return apply_weight_rows(g, rows);
}

inline void write_weights(std::ostream& out, const WeightedGraph& g) {
  out << "# node benefit cost\n";
  for (NodeId v = 0; v < g.node_count(); ++v)
    out << g.external_id(v) << ' ' << detail::format_real(g.benefit(v)) << ' '
        << detail::format_real(g.cost(v)) << '\n';
}

/// Single-document form: {"nodes": [ext ids], "benefit": [...], "cost": [...],
/// "normalized": bool, "edges": [[u, v, p], ...]} with u, v external ids.
inline nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges())
    edges.push_back({g.external_id(e.source), g.external_id(e.target), e.probability});
  return {{"nodes", std::vector<std::uint64_t>(g.external_ids().begin(), g.external_ids().end())},
          {"benefit", std::vector<double>(g.benefit().begin(), g.benefit().end())},
          {"cost", std::vector<double>(g.cost().begin(), g.cost().end())},
          {"normalized", g.normalized()},
          {"edges", std::move(edges)}};
}

inline WeightedGraph graph_from_json(const nlohmann::json& j) {
  try {
    auto ids = j.at("nodes").get<std::vector<std::uint64_t>>();
    std::map<std::uint64_t, NodeId> internal;
    for (std::size_t i = 0; i < ids.size(); ++i) internal[ids[i]] = static_cast<NodeId>(i);
    auto lookup = [&](std::uint64_t ext) {
      auto it = internal.find(ext);
      if (it == internal.end()) throw DomainError("edge refers to unknown node " + std::to_string(ext));
      return it->second;
    };
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({lookup(e.at(0).get<std::uint64_t>()), lookup(e.at(1).get<std::uint64_t>()),
                       e.at(2).get<double>()});
    std::vector<double> benefit = j.value("benefit", std::vector<double>{});
    std::vector<double> cost = j.value("cost", std::vector<double>{});
    const std::size_t n = ids.size();
    return WeightedGraph::build(n, std::move(edges), std::move(benefit), std::move(cost), std::move(ids),
                                j.value("normalized", false));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed graph document: ") + e.what());
  }
}

}  // namespace profitmax
