// covertsim command line: seeded Monte Carlo experiments for covert
// wireless communication against a mobile radiometer-carrying warden.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "covertsim/experiments.hpp"
#include "covertsim/presets.hpp"

namespace fs = std::filesystem;
using covertsim::harness::ExperimentConfig;
using covertsim::harness::ExperimentKind;

namespace {

ExperimentConfig load_config(const std::string& config_path,
                             const std::string& preset,
                             ExperimentKind kind) {
  ExperimentConfig cfg;
  if (!preset.empty() && !config_path.empty()) {
    throw std::invalid_argument("--preset and --config are exclusive");
  }
  if (!preset.empty()) {
    cfg = covertsim::harness::parse_config_text(
        covertsim::harness::preset_text(preset));
    if (cfg.kind != kind) {
      throw std::invalid_argument(
          "preset '" + preset + "' is a '" +
          covertsim::harness::to_string(cfg.kind) +
          "' experiment; run it under that subcommand");
    }
  } else if (!config_path.empty()) {
    cfg = covertsim::harness::parse_config_file(config_path);
    cfg.kind = kind;  // the subcommand decides what runs
  } else {
    cfg.kind = kind;
  }
  return cfg;
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

int run(ExperimentKind kind, const std::string& config_path,
        const std::string& preset, const std::optional<std::uint64_t>& seed,
        const std::optional<int>& trials, const std::optional<int>& threads,
        const std::string& out_dir) {
  ExperimentConfig cfg = load_config(config_path, preset, kind);
  if (seed) cfg.seed = *seed;
  if (trials) cfg.trials = *trials;
  if (threads) cfg.threads = *threads;
  cfg.validate();

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + out_dir +
                             "': " + ec.message());
  }

  using covertsim::harness::csv_comment;
  using covertsim::harness::export_network;

  switch (kind) {
    case ExperimentKind::DetectOnce: {
      const auto summary = covertsim::harness::run_detection_trials(cfg);
      const auto table = covertsim::harness::detect_table(cfg, summary);
      const auto path = out_path(out_dir, "detect.csv");
      table.write_file(path);
      std::cout << "h1_rate=" << covertsim::harness::format_g9(summary.h1_rate)
                << " stderr="
                << covertsim::harness::format_g9(summary.std_error)
                << " mean_statistic="
                << covertsim::harness::format_g9(summary.mean_statistic)
                << "\nwrote " << path << "\n";
      return 0;
    }
    case ExperimentKind::SweepT:
    case ExperimentKind::SweepP:
    case ExperimentKind::SecureRatioSweep: {
      const auto table = covertsim::harness::run_sweep(cfg);
      const std::string name = kind == ExperimentKind::SweepT ? "sweep_t.csv"
                               : kind == ExperimentKind::SweepP
                                   ? "sweep_p.csv"
                                   : "secure_ratio.csv";
      const auto path = out_path(out_dir, name);
      table.write_file(path);
      std::cout << "wrote " << path << " (" << table.row_count() << " rows)\n";
      return 0;
    }
    case ExperimentKind::NetGen: {
      const auto graph = covertsim::harness::generate_network(cfg);
      const auto files = export_network(graph, nullptr, csv_comment(cfg));
      const auto nodes_path = out_path(out_dir, "nodes.csv");
      const auto edges_path = out_path(out_dir, "edges.csv");
      files.nodes.write_file(nodes_path);
      files.edges.write_file(edges_path);
      std::cout << graph.nodes().size() << " nodes, mean comm degree "
                << covertsim::harness::format_g9(graph.mean_degree())
                << "\nwrote " << nodes_path << ", " << edges_path << "\n";
      return 0;
    }
    case ExperimentKind::RouteOnce: {
      const auto outcome = covertsim::harness::run_route_once(cfg);
      const auto files =
          export_network(outcome.graph, &outcome.route, csv_comment(cfg));
      const auto nodes_path = out_path(out_dir, "nodes.csv");
      const auto edges_path = out_path(out_dir, "edges.csv");
      files.nodes.write_file(nodes_path);
      files.edges.write_file(edges_path);
      std::cout << "route hops=" << outcome.route.hops.size()
                << " secure_ratio="
                << covertsim::harness::format_g9(outcome.secure_ratio)
                << " (networks drawn: " << outcome.attempts_used << ")"
                << "\nwrote " << nodes_path << ", " << edges_path << "\n";
      return 0;
    }
  }
  throw std::logic_error("unhandled experiment kind");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covertsim: Monte Carlo study of covert wireless "
               "communication against a mobile warden"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, preset, out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, threads;
  app.add_option("--config", config_path, "config file (key=value sections)");
  app.add_option("--preset", preset, "built-in preset: fig3, fig6, fig12");
  app.add_option("--seed", seed, "master seed (overrides config)");
  app.add_option("--trials", trials, "Monte Carlo trials (overrides config)");
  app.add_option("--threads", threads,
                 "worker threads; 1 = serial, 0 = library default");
  app.add_option("--out", out_dir, "output directory for CSV files");

  app.add_subcommand("detect",
                     "run detection trials and report the H1 rate");
  app.add_subcommand("sweep-t",
                     "sweep the walk length t (analytic beta + H1 rate)");
  app.add_subcommand("sweep-p",
                     "sweep the transmission probability countermeasure");
  app.add_subcommand("netgen", "generate a network and export node/edge CSVs");
  app.add_subcommand("route", "route one network and export it with overlay");
  app.add_subcommand("secure-ratio",
                     "sweep density: secure-relay ratio per router");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto kind = covertsim::harness::experiment_kind_from(
        app.get_subcommands().front()->get_name());
    return run(kind, config_path, preset, seed, trials, threads, out_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
