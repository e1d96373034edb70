#pragma once

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "profitmax/harness.hpp"

namespace profitmax::cli {

enum ExitCode { ok = 0, config_error = 2, io_error = 3, capacity_error = 4, internal_error = 5 };

struct Command {
  std::string name;
  RunConfig config;
};

/// Options live on the top-level app so a config file can use flat keys
/// (`graph = ...`); subcommands fall through to them.
inline void configure(CLI::App& app, Command& cmd) {
  RunConfig& c = cmd.config;
  app.set_config("--config", "", "Flat key = value file mirroring the long flags; flags override it");
  app.add_option("--graph", c.graph_path, "Edge list (u v [p]) or JSON graph");
  app.add_option("--weights", c.weights_path, "Weights file (v b c); overrides the distributions");
  app.add_option("--prob", c.probability, "Edge probability for edge lists: wic or a constant")->capture_default_str();
  app.add_option("--benefit-dist", c.benefit_dist, "uniform | degree")->capture_default_str();
  app.add_option("--cost-dist", c.cost_dist, "uniform | degree")->capture_default_str();
  app.add_option("--r", c.r, "Cost scale: sum(c) = r * sum(b)")->capture_default_str();
  app.add_option("--model", c.model, "Diffusion model (ic)")->capture_default_str();
  app.add_option("--theta-exp", c.theta_exponents, "RR budget exponents i, theta = 2^i * 10000")->delimiter(',');
  app.add_option("--theta", c.thetas, "Explicit RR set counts (override --theta-exp)")->delimiter(',');
  app.add_option("--validation-theta", c.validation_theta, "Validation RR sets per kind (0: largest theta)");
  app.add_option("--algo", c.algorithms, "greedy, greedy-naive, modmod1, modmod2, random, highdegree, benefitmax")
      ->delimiter(',');
  app.add_option("--permutation", c.permutation, "singleton | random")->capture_default_str();
  app.add_option("--delta", c.delta, "Failure probability")->capture_default_str();
  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--out", c.out_dir, "Output directory (prune/select/certify/experiment) or file (gen-weights)");
  app.add_option("--dataset", c.dataset, "Dataset label for CSV rows (default: graph file stem)");
  app.add_option("--seeds", c.seeds_path, "Seeds file to certify");
  app.add_option("--jobs", c.jobs, "Rows run in parallel")->capture_default_str();
  app.add_option("--workers", c.workers, "RR sampling threads (0: hardware concurrency)");
  app.add_flag("--exact", c.exact, "Use the exact live-edge oracle instead of RR sets (small graphs)");
  app.add_flag("--no-prune{false},--prune{true}", c.prune, "Disable/enable lattice pruning");
  app.add_flag("--no-norm{false},--norm{true}", c.normalize, "Disable/enable weight normalization");

  app.require_subcommand(1, 1);
  app.fallthrough();
  for (const char* name : {"prune", "select", "certify", "experiment", "gen-weights"}) {
    static const std::map<std::string, std::string> help{
        {"prune", "Shrink the search space and report |V|,|A|,|B|,|B\\A|,reduction"},
        {"select", "Select seeds with each algorithm and write a CSV row per (algorithm, theta)"},
        {"certify", "Bound the approximation ratio of a seeds file"},
        {"experiment", "Full matrix: theta x algorithms x pruning on/off x normalization on/off"},
        {"gen-weights", "Write the benefit/cost weights implied by the configuration"}};
    app.add_subcommand(name, help.at(name))->callback([&cmd, n = std::string(name)] { cmd.name = n; });
  }
}

/// Runs the parsed command, printing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
inline int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig& c = cmd.config;
    if (cmd.name == "prune") {
      out << cmd_prune(c).row() << '\n';
    } else if (cmd.name == "select" || cmd.name == "experiment") {
      const auto rows = cmd.name == "select" ? cmd_select(c) : cmd_experiment(c);
      write_csv(out, rows);
      bool failed = false;
      for (const auto& r : rows)
        if (!r.error.empty()) {
          err << "row " << r.algorithm << " theta=" << r.theta << " failed: " << r.error << '\n';
          failed = true;
        }
      if (failed && cmd.name == "select") return internal_error;
    } else if (cmd.name == "certify") {
      const auto outcome = cmd_certify(c);
      out << outcome.summary() << '\n';
    } else if (cmd.name == "gen-weights") {
      if (c.out_dir.empty()) {
        cmd_gen_weights(c, out);
      } else {
        auto file = detail::open_output(c.out_dir);
        cmd_gen_weights(c, file);
      }
    }
    return ok;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return config_error;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return io_error;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return io_error;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << '\n';
    return capacity_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_error;
  }
}

/// Parses argv and runs; CLI usage errors map to the config exit code.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Profit maximization under the independent cascade model", "profitmax"};
  Command cmd;
  configure(app, cmd);
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError& e) {
    app.exit(e, out, err);
    return io_error;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return config_error;
  }
  return run(cmd, out, err);
}

}  // namespace profitmax::cli
