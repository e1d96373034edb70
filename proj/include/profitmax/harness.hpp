#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "profitmax/certify.hpp"
#include "profitmax/diffusion.hpp"
#include "profitmax/errors.hpp"
#include "profitmax/graph.hpp"
#include "profitmax/graph_io.hpp"
#include "profitmax/optimize.hpp"
#include "profitmax/prune.hpp"
#include "profitmax/rr_sampling.hpp"
#include "profitmax/serialization.hpp"

namespace profitmax {

inline constexpr int csv_schema_version = 1;

struct RunConfig {
  std::string dataset;
  std::string graph_path;
  std::string weights_path;
  std::string probability = "wic";
  std::string benefit_dist = "uniform";
  std::string cost_dist = "degree";
  double r = 1.0;
  std::string model = "ic";
  /// θ = 2^i · 10,000 for each i, unless explicit counts are given.
  std::vector<unsigned> theta_exponents{0};
  std::vector<std::size_t> thetas;
  /// 0 means the largest selection θ.
  std::size_t validation_theta = 0;
  std::vector<std::string> algorithms{"greedy", "modmod1", "modmod2"};
  std::string permutation = "singleton";
  double delta = 1e-6;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool prune = true;
  bool normalize = true;
  bool exact = false;
  std::string seeds_path;
  unsigned jobs = 1;
  unsigned workers = 0;
};

inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"greedy",     "greedy-naive", "modmod1",   "modmod2",
                                              "random",     "highdegree",   "benefitmax"};
  return names;
}

inline WeightDistribution parse_distribution(const std::string& field, const std::string& s) {
  if (s == "uniform") return WeightDistribution::uniform;
  if (s == "degree" || s == "degree_proportional") return WeightDistribution::degree_proportional;
  throw ConfigError(field + ": unknown weight distribution '" + s + "' (expected uniform or degree)");
}

/// Throws ConfigError naming the offending field.
inline void validate(const RunConfig& c) {
  if (c.graph_path.empty()) throw ConfigError("graph: a graph file is required");
  try {
    ProbabilityPolicy::parse(c.probability);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("prob: ") + e.what());
  }
  parse_distribution("benefit-dist", c.benefit_dist);
  parse_distribution("cost-dist", c.cost_dist);
  if (!(c.r > 0.0) || !std::isfinite(c.r)) throw ConfigError("r: scale factor must be > 0");
  if (c.model != "ic") throw ConfigError("model: only the independent cascade model 'ic' is supported");
  if (c.thetas.empty() && c.theta_exponents.empty()) throw ConfigError("theta-exp: the schedule is empty");
  for (unsigned i : c.theta_exponents)
    if (i > 30) throw ConfigError("theta-exp: exponent " + std::to_string(i) + " is too large");
  for (std::size_t t : c.thetas)
    if (t == 0) throw ConfigError("theta: counts must be >= 1");
  if (c.algorithms.empty()) throw ConfigError("algo: no algorithm selected");
  for (const auto& a : c.algorithms)
    if (std::find(known_algorithms().begin(), known_algorithms().end(), a) == known_algorithms().end())
      throw ConfigError("algo: unknown algorithm '" + a + "'");
  try {
    parse_permutation_policy(c.permutation);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("permutation: ") + e.what());
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw ConfigError("delta: must lie in (0,1)");
  if (c.jobs == 0) throw ConfigError("jobs: must be >= 1");
}

inline nlohmann::json config_to_json(const RunConfig& c) {
  return {{"dataset", c.dataset},
          {"graph", c.graph_path},
          {"weights", c.weights_path},
          {"prob", c.probability},
          {"benefit_dist", c.benefit_dist},
          {"cost_dist", c.cost_dist},
          {"r", c.r},
          {"model", c.model},
          {"theta_exp", c.theta_exponents},
          {"theta", c.thetas},
          {"validation_theta", c.validation_theta},
          {"algo", c.algorithms},
          {"permutation", c.permutation},
          {"delta", c.delta},
          {"seed", c.seed},
          {"prune", c.prune},
          {"norm", c.normalize},
          {"exact", c.exact},
          {"csv_schema", csv_schema_version}};
}

/// FNV-1a over the canonical JSON of the settings that affect results (output
/// location and parallelism excluded), as 16 hex digits.
inline std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_to_json(c).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::vector<std::size_t> theta_schedule(const RunConfig& c) {
  if (!c.thetas.empty()) return c.thetas;
  std::vector<std::size_t> out;
  for (unsigned i : c.theta_exponents) out.push_back(theta_for_exponent(i));
  return out;
}

/// Graph with weights per the config: a JSON graph keeps its stored weights,
/// an edge list gets them from the weights file or the distributions.
inline WeightedGraph load_graph(const RunConfig& c) {
  const std::filesystem::path path(c.graph_path);
  WeightedGraph g;
  if (path.extension() == ".json") {
    std::ifstream in = detail::open_input(c.graph_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(0, c.graph_path + ": " + e.what());
    }
    g = graph_from_json(j);
    if (c.weights_path.empty()) return g;
  } else {
    g = load_edge_list(c.graph_path, ProbabilityPolicy::parse(c.probability));
  }
  if (!c.weights_path.empty()) return load_weights(c.weights_path, g);
  return assign_weights(g, parse_distribution("benefit-dist", c.benefit_dist),
                        parse_distribution("cost-dist", c.cost_dist), c.r);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct CsvRow {
  std::string dataset;
  std::string algorithm;
  std::size_t theta = 0;
  bool prune = true;
  bool normalize = true;
  std::size_t seeds_count = 0;
  double profit = std::numeric_limits<double>::quiet_NaN();
  double guarantee = std::numeric_limits<double>::quiet_NaN();
  double time_select_ms = 0.0;
  double time_rr_ms = 0.0;
  std::uint64_t seed = 0;
  std::string config_hash;
  /// Not part of the CSV; empty when the row succeeded.
  std::string error;
  std::optional<SelectionResult> selection;
};

inline std::string csv_header() {
  return "dataset,algo,theta,prune,norm,seeds_count,profit,guarantee,time_select_ms,time_rr_ms,seed,config_hash";
}

inline std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

inline std::string to_csv(const CsvRow& r) {
  auto real = [](double x) { return std::isnan(x) ? std::string("nan") : detail::format_real(x); };
  std::ostringstream os;
  os << r.dataset << ',' << r.algorithm << ',' << r.theta << ',' << (r.prune ? 1 : 0) << ','
     << (r.normalize ? 1 : 0) << ',' << r.seeds_count << ',' << real(r.profit) << ',' << real(r.guarantee) << ','
     << format_ms(r.time_select_ms) << ',' << format_ms(r.time_rr_ms) << ',' << r.seed << ',' << r.config_hash;
  return os.str();
}

inline void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << to_csv(r) << '\n';
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

inline std::string dataset_name(const RunConfig& c) {
  return c.dataset.empty() ? std::filesystem::path(c.graph_path).stem().string() : c.dataset;
}

inline bool is_baseline(const std::string& algo) {
  return algo == "random" || algo == "highdegree" || algo == "benefitmax";
}

template <ProfitEvaluator E>
SelectionResult run_algorithm(const E& eval, const WeightedGraph& g, const std::string& algo, const Lattice& lat,
                              const RunConfig& c) {
  const PermutationPolicy policy = parse_permutation_policy(c.permutation);
  if (algo == "greedy") return greedy(eval, lat, {true});
  if (algo == "greedy-naive") {
    auto r = greedy(eval, lat, {false});
    r.algorithm = algo;
    return r;
  }
  if (algo == "modmod1") return modmod(eval, lat, {UpperBound::v3, policy, c.seed, 0});
  if (algo == "modmod2") return modmod(eval, lat, {UpperBound::v4, policy, c.seed, 0});
  if (algo == "random") return k_sweep(BaselineKind::random, g, eval, c.seed);
  if (algo == "highdegree") return k_sweep(BaselineKind::highdegree, g, eval, c.seed);
  if (algo == "benefitmax") return k_sweep(BaselineKind::benefitmax, g, eval, c.seed);
  throw ConfigError("algo: unknown algorithm '" + algo + "'");
}

/// Exact-mode guarantee φ(S) / min(μ3, μ4): no sampling slack.
inline double exact_guarantee(const ExactOracle& oracle, const NodeSet& s, const Lattice& lat, const RunConfig& c) {
  const Lattice trivial = Lattice::trivial(oracle.node_count());
  const Lattice& use = lat.contains(s) ? lat : trivial;
  const PermutationPolicy policy = parse_permutation_policy(c.permutation);
  const double mu = std::min(mu_bound(oracle, s, use, UpperBound::v3, policy, c.seed),
                             mu_bound(oracle, s, use, UpperBound::v4, policy, c.seed));
  return mu > 0.0 ? profit(oracle, s) / mu : std::numeric_limits<double>::quiet_NaN();
}

/// Shared per-θ state for a run: the selection evaluator on one weight view.
struct Stage {
  WeightedGraph view;
  std::shared_ptr<const ExactOracle> oracle;  // the oracle is not movable
  std::optional<ProfitEstimator> estimator;
  double rr_ms = 0.0;
};

inline Stage make_stage(const WeightedGraph& g, bool normalize, std::size_t theta, const RunConfig& c) {
  Stage st;
  st.view = normalize ? normalize_weights(g) : g;
  if (c.exact) {
    st.oracle = std::make_shared<const ExactOracle>(st.view);
  } else {
    const auto t0 = Clock::now();
    st.estimator.emplace(ProfitEstimator::build(st.view, theta, theta, derive_seed(c.seed, theta), c.workers));
    st.rr_ms = elapsed_ms(t0);
  }
  return st;
}

template <class F>
decltype(auto) with_evaluator(const Stage& st, F&& f) {
  if (st.oracle) return f(*st.oracle);
  return f(*st.estimator);
}

struct RowSpec {
  std::size_t theta_index;
  bool prune;
  bool normalize;
  std::string algorithm;
};

/// Runs every row; `jobs` > 1 spreads rows over threads. Output order and
/// values do not depend on `jobs`.
inline std::vector<CsvRow> run_rows(const RunConfig& c, const WeightedGraph& g, const std::vector<RowSpec>& specs) {
  const auto thetas = theta_schedule(c);
  const std::string hash = config_hash(c);
  const std::string dataset = dataset_name(c);

  // One stage per (θ, norm) actually used.
  std::map<std::pair<std::size_t, bool>, Stage> stages;
  for (const auto& s : specs) {
    const auto key = std::make_pair(s.theta_index, s.normalize);
    if (!stages.count(key)) stages.emplace(key, make_stage(g, s.normalize, thetas[s.theta_index], c));
  }

  std::optional<ProfitEstimator> validation;
  std::optional<ExactOracle> exact_validation;
  if (c.exact) {
    exact_validation.emplace(g);
  } else {
    const std::size_t vt = c.validation_theta ? c.validation_theta : *std::max_element(thetas.begin(), thetas.end());
    validation.emplace(
        ProfitEstimator::build(normalize_weights(g), vt, vt, derive_seed(c.seed, validation_stream), c.workers));
  }

  std::vector<CsvRow> rows(specs.size());
  auto run_one = [&](std::size_t i) {
    const RowSpec& spec = specs[i];
    CsvRow& row = rows[i];
    row.dataset = dataset;
    row.algorithm = spec.algorithm;
    row.theta = c.exact ? 0 : thetas[spec.theta_index];
    row.prune = spec.prune;
    row.normalize = spec.normalize;
    row.seed = c.seed;
    row.config_hash = hash;
    try {
      const Stage& st = stages.at({spec.theta_index, spec.normalize});
      row.time_rr_ms = st.rr_ms;
      const auto t0 = Clock::now();
      SelectionResult sel = with_evaluator(st, [&](const auto& eval) {
        const Lattice lat = spec.prune && !is_baseline(spec.algorithm) ? iterative_prune(eval)
                                                                        : Lattice::trivial(g.node_count());
        SelectionResult r = run_algorithm(eval, st.view, spec.algorithm, lat, c);
        r.parameters["must_include"] = lat.must_include.size();
        r.parameters["may_include"] = lat.may_include.size();
        return r;
      });
      row.time_select_ms = elapsed_ms(t0);
      row.seeds_count = sel.seeds.size();
      if (c.exact) {
        row.profit = profit(*exact_validation, sel.seeds);
        const Lattice lat = spec.prune ? iterative_prune(*exact_validation) : Lattice::trivial(g.node_count());
        row.guarantee = exact_guarantee(*exact_validation, sel.seeds, lat, c);
      } else {
        row.profit = profit(*validation, sel.seeds);
        const Lattice trivial = Lattice::trivial(g.node_count());
        row.guarantee =
            certify_with(*validation, sel.seeds, trivial, c.delta, parse_permutation_policy(c.permutation), c.seed)
                .guarantee;
      }
      row.selection = std::move(sel);
    } catch (const CapacityError&) {
      throw;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  if (c.jobs <= 1 || specs.size() <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < std::min<std::size_t>(c.jobs, specs.size()); ++t)
        pool.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < specs.size();) {
            try {
              run_one(i);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
    }
    if (failure) std::rethrow_exception(failure);
  }
  return rows;
}

inline std::string theta_label(std::size_t theta) { return theta ? "t" + std::to_string(theta) : "exact"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct PruneSummary {
  std::size_t nodes = 0;
  std::size_t must_include = 0;
  std::size_t may_include = 0;
  std::size_t free_nodes = 0;
  double reduction = 0.0;

  /// |V|,|A|,|B|,|B\A|,reduction%
  std::string row() const {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.1f%%", 100.0 * reduction);
    return std::to_string(nodes) + ',' + std::to_string(must_include) + ',' + std::to_string(may_include) + ',' +
           std::to_string(free_nodes) + ',' + pct;
  }
};

inline PruneSummary summarize(const Lattice& lat) {
  return {lat.node_count(), lat.must_include.size(), lat.may_include.size(),
          lat.may_include.size() - lat.must_include.size(), lat.reduction()};
}

/// Prunes with the first θ of the schedule (or exactly) and writes lattice.json.
inline PruneSummary cmd_prune(const RunConfig& c, Lattice* out = nullptr) {
  validate(c);
  const WeightedGraph g = load_graph(c);
  const detail::Stage st = detail::make_stage(g, c.normalize, theta_schedule(c).front(), c);
  Lattice lat = detail::with_evaluator(st, [](const auto& eval) { return iterative_prune(eval); });
  if (!c.out_dir.empty()) {
    auto doc = lattice_to_json(g, lat);
    doc["config"] = config_to_json(c);
    doc["config_hash"] = config_hash(c);
    detail::write_json(std::filesystem::path(c.out_dir) / "lattice.json", doc);
  }
  const PruneSummary s = summarize(lat);
  if (out) *out = std::move(lat);
  return s;
}

inline void write_run_outputs(const RunConfig& c, const WeightedGraph& g, const std::vector<CsvRow>& rows,
                              const std::string& csv_name) {
  if (c.out_dir.empty()) return;
  const std::filesystem::path dir(c.out_dir);
  auto csv = detail::open_output(dir / csv_name);
  write_csv(csv, rows);
  detail::write_json(dir / "run_config.json", {{"config", config_to_json(c)}, {"config_hash", config_hash(c)}});
  for (const auto& r : rows) {
    if (!r.selection) continue;
    auto doc = selection_to_json(g, *r.selection);
    doc["config_hash"] = r.config_hash;
    doc["theta"] = r.theta;
    doc["prune"] = r.prune;
    doc["norm"] = r.normalize;
    const std::string name = "seeds_" + r.algorithm + "_" + detail::theta_label(r.theta) + (r.prune ? "" : "_noprune") +
                             (r.normalize ? "" : "_nonorm") + ".json";
    detail::write_json(dir / name, doc);
  }
}

/// One row per (θ, algorithm) with the configured prune/norm settings.
inline std::vector<CsvRow> cmd_select(const RunConfig& c) {
  validate(c);
  const WeightedGraph g = load_graph(c);
  std::vector<detail::RowSpec> specs;
  const std::size_t n_theta = c.exact ? 1 : theta_schedule(c).size();
  for (std::size_t t = 0; t < n_theta; ++t)
    for (const auto& a : c.algorithms) specs.push_back({t, c.prune, c.normalize, a});
  auto rows = detail::run_rows(c, g, specs);
  write_run_outputs(c, g, rows, "select.csv");
  return rows;
}

/// θ schedule × algorithms × pruning on/off × normalization on/off.
inline std::vector<CsvRow> cmd_experiment(const RunConfig& c) {
  validate(c);
  const WeightedGraph g = load_graph(c);
  std::vector<detail::RowSpec> specs;
  const std::size_t n_theta = c.exact ? 1 : theta_schedule(c).size();
  for (std::size_t t = 0; t < n_theta; ++t)
    for (bool p : {true, false})
      for (bool nm : {true, false})
        for (const auto& a : c.algorithms) specs.push_back({t, p, nm, a});
  auto rows = detail::run_rows(c, g, specs);
  write_run_outputs(c, g, rows, "experiment.csv");
  return rows;
}

/// Seeds file: a JSON document with a "seeds" array of external ids (as
/// written by select), or whitespace-separated ids.
inline std::pair<NodeSet, std::string> load_seeds(const std::string& path, const WeightedGraph& g) {
  if (path.empty()) throw IoError("seeds: no seeds file given");
  std::ifstream in = detail::open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(0, path + ": " + e.what());
    }
    return {node_set_from_json(g, j.at("seeds")), j.value("algorithm", std::string("external"))};
  }
  NodeSet s(g.node_count());
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto tokens = detail::split_ws(line);
    if (detail::is_comment_or_blank(tokens)) continue;
    for (auto tok : tokens) {
      const auto ext = detail::parse_id(tok, lineno);
      const auto v = g.internal_id(ext);
      if (!v) throw DomainError("seeds refer to unknown node " + std::to_string(ext));
      s.insert(*v);
    }
  }
  return {s, "external"};
}

struct CertifyOutcome {
  std::string algorithm;
  ProfitCertificate certificate;

  /// guarantee=<ratio> (beta_l=…, gamma_u=…, mu=…, eps=…)
  std::string summary() const {
    const auto& k = certificate;
    return "guarantee=" + detail::format_real(k.guarantee) + " (beta_l=" + detail::format_real(k.beta_lower) +
           ", gamma_u=" + detail::format_real(k.gamma_upper) + ", mu=" + detail::format_real(k.mu_estimate) +
           ", eps=" + detail::format_real(k.epsilon_mu) + ")";
  }
};

inline std::string certify_csv_header() { return "dataset,algo,theta,guarantee,beta_l,gamma_u,mu,eps,seed,config_hash"; }

/// Certifies the seeds file on fresh validation collections over the full
/// node set.
inline CertifyOutcome cmd_certify(const RunConfig& c) {
  validate(c);
  const WeightedGraph g = load_graph(c);
  auto [seeds, algo] = load_seeds(c.seeds_path, g);
  const auto thetas = theta_schedule(c);
  const std::size_t vt = c.validation_theta ? c.validation_theta : *std::max_element(thetas.begin(), thetas.end());
  CertifyOutcome out{algo, certify(seeds, g, Lattice::trivial(g.node_count()), vt, vt, c.delta, c.seed,
                                   parse_permutation_policy(c.permutation), c.workers)};
  if (!c.out_dir.empty()) {
    const std::filesystem::path dir(c.out_dir);
    auto doc = certificate_to_json(g, out.certificate);
    doc["algorithm"] = algo;
    doc["config"] = config_to_json(c);
    doc["config_hash"] = config_hash(c);
    detail::write_json(dir / "certificate.json", doc);
    auto csv = detail::open_output(dir / "certify.csv");
    const auto& k = out.certificate;
    csv << certify_csv_header() << '\n'
        << detail::dataset_name(c) << ',' << algo << ',' << vt << ',' << detail::format_real(k.guarantee) << ','
        << detail::format_real(k.beta_lower) << ',' << detail::format_real(k.gamma_upper) << ','
        << detail::format_real(k.mu_estimate) << ',' << detail::format_real(k.epsilon_mu) << ',' << c.seed << ','
        << config_hash(c) << '\n';
  }
  return out;
}

/// Writes the weights the config would assign, in `v b c` form.
inline WeightedGraph cmd_gen_weights(const RunConfig& c, std::ostream& out) {
  validate(c);
  const WeightedGraph g = load_graph(c);
  write_weights(out, g);
  return g;
}

}  // namespace profitmax
