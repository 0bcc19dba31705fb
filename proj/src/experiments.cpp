#include "covertsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <tuple>
#include <stdexcept>
#include <string>
#include <utility>

#include "covertsim/countermeasure.hpp"

namespace covertsim::harness {

namespace {

// Index-parallel driver. threads == 1 is the serial reference path; the
// OpenMP path must produce identical results because every index owns its
// own substream and results land in preallocated slots.
template <typename Fn>
void for_each_index(int n, int threads, Fn&& fn) {
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
#ifdef _OPENMP
  if (threads > 1) {
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
  }
#else
  for (int i = 0; i < n; ++i) fn(i);
#endif
  if (error) std::rethrow_exception(error);
}

std::uint64_t stream_index(std::uint32_t row, std::uint32_t item) {
  return (static_cast<std::uint64_t>(row) << 32) | item;
}

std::string hex16(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

double clamp_beta(double beta) {
  return std::min(std::max(beta, 1e-9), 0.4999999);
}

}  // namespace

std::string csv_comment(const ExperimentConfig& cfg) {
  return "config_hash=" + hex16(cfg.config_hash()) +
         " seed=" + std::to_string(cfg.seed);
}

channel::ChannelScenario make_scenario(const ExperimentConfig& cfg,
                                       double alpha, int t) {
  channel::ChannelScenario sc;
  sc.noise_power = channel::db_to_linear(cfg.channel.noise_power_db);
  sc.path_loss_exponent = alpha;
  sc.law = cfg.channel.law;
  sc.fading = cfg.channel.fading;
  if (cfg.channel.power_mode == PowerMode::Critical) {
    // Solve P0 * gain(d_2t) = noise for the farthest location.
    const double far = 2.0 * t * cfg.warden.spacing;
    sc.alice_power = 1.0;  // placeholder to evaluate the gain
    const double gain = channel::path_gain(far, sc);
    sc.alice_power = sc.noise_power / gain;
  } else {
    sc.alice_power = channel::db_to_linear(cfg.channel.alice_power_db);
  }
  sc.validate();
  return sc;
}

warden::WardenWalk make_walk(const ExperimentConfig& cfg, int t) {
  warden::WardenWalk walk;
  walk.t = t;
  walk.m = cfg.warden.m;
  walk.spacing = cfg.warden.spacing;
  walk.per_sample_bernoulli = cfg.warden.per_sample_bernoulli;
  walk.block_fading = cfg.warden.block_fading;
  walk.validate();
  return walk;
}

detector::ThresholdMode resolve_threshold_mode(ThresholdChoice choice,
                                               int t) {
  switch (choice) {
    case ThresholdChoice::Auto: return detector::default_threshold_mode(t);
    case ThresholdChoice::Exact: return detector::ThresholdMode::ExactBinomial;
    case ThresholdChoice::Clt: return detector::ThresholdMode::CLTApprox;
  }
  throw std::logic_error("unknown threshold choice");
}

double analytic_beta_bound(int t, double alpha) {
  const double s = std::exp2(alpha) + 1.0;
  const double denom = 1.0 - 8.0 / (s * s);
  return statmath::normal_cdf(-std::sqrt(static_cast<double>(t)) * denom);
}

DetectionSummary run_detection_core(const channel::ChannelScenario& scenario,
                                    const warden::WardenWalk& walk,
                                    statmath::Probability transmit_prob,
                                    statmath::Probability beta,
                                    detector::ThresholdMode mode, int trials,
                                    int threads, std::uint64_t seed,
                                    std::uint32_t row_index) {
  if (trials < 1) {
    throw std::invalid_argument("run_detection_core: trials must be >= 1");
  }
  DetectionSummary summary;
  summary.statistics.assign(trials, 0);
  summary.h1.assign(trials, 0);

  for_each_index(trials, threads, [&](int i) {
    rng::RandomStream stream(seed, stream_index(row_index, i));
    const auto values = warden::collect_walk(scenario, walk, transmit_prob,
                                             stream);
    const auto outcome = detector::cox_stuart_test(values, beta, mode);
    summary.statistics[i] = outcome.statistic;
    summary.h1[i] =
        outcome.decision == detector::Decision::H1_DownwardTrend ? 1 : 0;
  });

  // Reduction in trial order: integer count plus Kahan mean.
  long h1_count = 0;
  double sum = 0.0, comp = 0.0;
  for (int i = 0; i < trials; ++i) {
    h1_count += summary.h1[i];
    const double y = summary.statistics[i] - comp;
    const double t2 = sum + y;
    comp = (t2 - sum) - y;
    sum = t2;
  }
  summary.h1_rate = static_cast<double>(h1_count) / trials;
  summary.std_error =
      std::sqrt(summary.h1_rate * (1.0 - summary.h1_rate) / trials);
  summary.mean_statistic = sum / trials;
  return summary;
}

DetectionSummary run_detection_trials(const ExperimentConfig& cfg) {
  cfg.validate();
  const int t = cfg.warden.t;
  const auto scenario =
      make_scenario(cfg, cfg.channel.path_loss_exponent, t);
  const auto walk = make_walk(cfg, t);
  const auto mode = resolve_threshold_mode(cfg.detector.threshold_mode, t);

  if (cfg.detector.threshold_mode == ThresholdChoice::Clt &&
      t < statmath::kCltValidityFloor) {
    std::cerr << "warning: CLT threshold requested for t = " << t
              << "; the approximation is stated for t > 20\n";
  }
  if (cfg.schedule.transmit_prob > 0.0) {
    const double far = 2.0 * t * cfg.warden.spacing;
    if (channel::received_power(scenario, far) < scenario.noise_power) {
      std::cerr << "warning: received power at the farthest location is "
                   "below the noise floor (operating condition P_2t >= "
                   "sigma_0^2 not met)\n";
    }
  }
  return run_detection_core(scenario, walk, cfg.schedule.transmit_prob,
                            cfg.detector.beta, mode, cfg.trials, cfg.threads,
                            cfg.seed, 0);
}

CsvTable detect_table(const ExperimentConfig& cfg,
                      const DetectionSummary& summary) {
  CsvTable table;
  table.set_comment(csv_comment(cfg));
  table.set_header({"t", "m", "spacing", "transmit_prob", "beta",
                    "threshold_mode", "trials", "h1_rate", "stderr",
                    "mean_statistic"});
  const auto mode =
      resolve_threshold_mode(cfg.detector.threshold_mode, cfg.warden.t);
  table.add_row({std::to_string(cfg.warden.t), std::to_string(cfg.warden.m),
                 format_g9(cfg.warden.spacing),
                 format_g9(cfg.schedule.transmit_prob),
                 format_g9(cfg.detector.beta),
                 mode == detector::ThresholdMode::ExactBinomial ? "exact"
                                                                : "clt",
                 std::to_string(cfg.trials), format_g9(summary.h1_rate),
                 format_g9(summary.std_error),
                 format_g9(summary.mean_statistic)});
  return table;
}

namespace {

CsvTable sweep_t_table(const ExperimentConfig& cfg) {
  CsvTable table;
  table.set_comment(csv_comment(cfg));
  table.set_header({"alpha", "t", "beta_analytic", "h1_rate_empirical"});

  std::vector<double> alphas = cfg.sweep.alpha_list;
  if (alphas.empty()) alphas = {cfg.channel.path_loss_exponent};

  std::uint32_t row = 0;
  for (double alpha : alphas) {
    for (int t : cfg.sweep.t_list) {
      const double beta_analytic = analytic_beta_bound(t, alpha);
      // The empirical column tests at the significance the bound
      // certifies for this (t, alpha).
      const double beta_eff = clamp_beta(beta_analytic);
      const auto scenario = make_scenario(cfg, alpha, t);
      const auto walk = make_walk(cfg, t);
      const auto summary = run_detection_core(
          scenario, walk, cfg.schedule.transmit_prob, beta_eff,
          resolve_threshold_mode(cfg.detector.threshold_mode, t), cfg.trials,
          cfg.threads, cfg.seed, row);
      table.add_row({format_g9(alpha), std::to_string(t),
                     format_g9(beta_analytic), format_g9(summary.h1_rate)});
      ++row;
    }
  }
  return table;
}

CsvTable sweep_p_table(const ExperimentConfig& cfg) {
  CsvTable table;
  table.set_comment(csv_comment(cfg));
  table.set_header({"t", "p", "p_threshold", "expected_statistic_approx",
                    "expected_statistic_exact", "h1_rate_empirical"});

  std::uint32_t row = 0;
  for (int t : cfg.sweep.t_list) {
    const auto scenario =
        make_scenario(cfg, cfg.channel.path_loss_exponent, t);
    const auto walk = make_walk(cfg, t);
    const double p_threshold =
        countermeasure::max_covert_probability(t, cfg.detector.beta);
    for (double p : cfg.sweep.p_list) {
      const double approx = countermeasure::expected_statistic_small_p(p, t);
      double exact = 0.0;
      for (int i = 1; i <= t; ++i) {
        const double p_near =
            channel::received_power(scenario, walk.distance(i));
        const double p_far =
            channel::received_power(scenario, walk.distance(t + i));
        exact += countermeasure::delta_negative_prob_exact(
            p, walk.m, p_near, p_far, scenario.noise_power);
      }
      const auto summary = run_detection_core(
          scenario, walk, p, cfg.detector.beta,
          resolve_threshold_mode(cfg.detector.threshold_mode, t), cfg.trials,
          cfg.threads, cfg.seed, row);
      table.add_row({std::to_string(t), format_g9(p), format_g9(p_threshold),
                     format_g9(approx), format_g9(exact),
                     format_g9(summary.h1_rate)});
      ++row;
    }
  }
  return table;
}

netmodel::Placement placement_from(const std::string& name) {
  if (name == "uniform") return netmodel::Placement::Uniform;
  if (name == "clustered") return netmodel::Placement::Clustered;
  if (name == "ppp") return netmodel::Placement::PPP;
  throw std::invalid_argument("unknown placement '" + name + "'");
}

struct AnchoredNetwork {
  netmodel::NetworkGraph graph;
  int bs_id = 0;
  int source_id = 0;
};

// Draws one network with the BS anchored at (bs_x, bs_y) as id 0 and the
// source at (source_x, source_y) as id 1 (generated nodes follow from id
// 2). Coincident anchor positions collapse to a single node, giving the
// trivial zero-relay route.
AnchoredNetwork draw_anchored_network(const ExperimentConfig& cfg,
                                      netmodel::Placement placement,
                                      int node_count, double intensity,
                                      rng::RandomStream& stream) {
  const auto& net = cfg.network;
  netmodel::Region region{net.width, net.height};
  netmodel::PlacementParams params;
  params.node_count = node_count;
  params.clusters = net.clusters;
  params.cluster_spread = net.cluster_spread;
  params.intensity = intensity;

  auto generated = netmodel::generate_nodes(placement, params, region, stream);

  AnchoredNetwork out;
  std::vector<netmodel::Node> nodes;
  nodes.reserve(generated.size() + 2);
  nodes.push_back({0, net.bs_x, net.bs_y});
  const bool coincident =
      net.bs_x == net.source_x && net.bs_y == net.source_y;
  out.bs_id = 0;
  out.source_id = coincident ? 0 : 1;
  if (!coincident) nodes.push_back({1, net.source_x, net.source_y});
  const int base = coincident ? 1 : 2;
  for (std::size_t i = 0; i < generated.size(); ++i) {
    nodes.push_back({base + static_cast<int>(i), generated[i].x,
                     generated[i].y});
  }
  out.graph = netmodel::build_graph(std::move(nodes), net.detection_radius,
                                    net.comm_radius);
  return out;
}

struct RatioPair {
  double dbr = 0.0;
  double gbr = 0.0;
};

struct GroupStats {
  std::vector<RatioPair> ratios;  // successes, in attempt order
  int attempts_used = 0;
};

// Collects `trials` successful routed networks (both routers on the same
// network) for one (density, placement) group. Attempts run in parallel
// batches; success order is attempt order, so the result does not depend
// on the worker count.
GroupStats collect_secure_ratio_group(const ExperimentConfig& cfg,
                                      const std::string& placement_name,
                                      double density, std::uint32_t group,
                                      int trials) {
  const auto placement = placement_from(placement_name);
  const double area = cfg.network.width * cfg.network.height;
  const int node_count = static_cast<int>(std::lround(density * area));
  const double intensity = density;
  const int cap = cfg.network.attempt_factor * trials;

  GroupStats stats;
  stats.ratios.reserve(trials);
  int attempted = 0;
  while (static_cast<int>(stats.ratios.size()) < trials && attempted < cap) {
    const int batch =
        std::min(std::max(trials, 64), cap - attempted);
    std::vector<std::uint8_t> ok(batch, 0);
    std::vector<RatioPair> batch_ratios(batch);
    for_each_index(batch, cfg.threads, [&](int i) {
      const std::uint32_t attempt = attempted + i;
      rng::RandomStream net_stream(cfg.seed,
                                   stream_index(group, attempt * 4));
      const auto anchored = draw_anchored_network(cfg, placement, node_count,
                                                  intensity, net_stream);
      const auto beacon =
          routing::beacon_flood(anchored.graph, anchored.bs_id);
      if (beacon.hop(anchored.graph, anchored.source_id) ==
          routing::kUnreached) {
        return;
      }
      rng::RandomStream dbr_stream(cfg.seed,
                                   stream_index(group, attempt * 4 + 1));
      rng::RandomStream gbr_stream(cfg.seed,
                                   stream_index(group, attempt * 4 + 2));
      const int replicas = cfg.network.routes_per_network;
      RatioPair acc;
      for (int r = 0; r < replicas; ++r) {
        acc.dbr += routing::secure_relay_ratio(
            routing::dbr_route(anchored.graph, beacon, anchored.source_id,
                               cfg.network.p_max, dbr_stream),
            anchored.graph);
        acc.gbr += routing::secure_relay_ratio(
            routing::gbr_route(anchored.graph, beacon, anchored.source_id,
                               cfg.network.p_max, gbr_stream),
            anchored.graph);
      }
      batch_ratios[i] = {acc.dbr / replicas, acc.gbr / replicas};
      ok[i] = 1;
    });
    for (int i = 0;
         i < batch && static_cast<int>(stats.ratios.size()) < trials; ++i) {
      if (ok[i]) stats.ratios.push_back(batch_ratios[i]);
    }
    attempted += batch;
  }
  stats.attempts_used = attempted;
  return stats;
}

std::pair<double, double> mean_and_stderr(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / v.size();
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = ss / (v.size() - 1);
  return {mean, std::sqrt(var / v.size())};
}

CsvTable secure_ratio_table(const ExperimentConfig& cfg) {
  CsvTable table;
  table.set_comment(csv_comment(cfg));
  table.set_header({"density", "placement", "router", "mean_secure_ratio",
                    "stderr", "trials"});

  std::vector<std::string> placements = cfg.network.placement_list;
  if (placements.empty()) placements = {cfg.network.placement};
  std::vector<std::string> routers = cfg.network.router_list;
  if (routers.empty()) {
    routers = {cfg.network.router == RouterKind::DBR ? "dbr" : "gbr"};
  }

  std::uint32_t group = 0;
  for (double density : cfg.sweep.density_list) {
    for (const auto& placement : placements) {
      const auto stats = collect_secure_ratio_group(cfg, placement, density,
                                                    group, cfg.trials);
      for (const auto& router : routers) {
        std::vector<double> ratios;
        ratios.reserve(stats.ratios.size());
        for (const auto& pair : stats.ratios) {
          ratios.push_back(router == "dbr" ? pair.dbr : pair.gbr);
        }
        const auto [mean, se] = mean_and_stderr(ratios);
        table.add_row({format_g9(density), placement, router, format_g9(mean),
                       format_g9(se),
                       std::to_string(ratios.size())});
      }
      ++group;
    }
  }
  return table;
}

}  // namespace

CsvTable run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case ExperimentKind::SweepT: return sweep_t_table(cfg);
    case ExperimentKind::SweepP: return sweep_p_table(cfg);
    case ExperimentKind::SecureRatioSweep: return secure_ratio_table(cfg);
    default:
      throw std::invalid_argument(
          "run_sweep: config kind is not a sweep experiment");
  }
}

netmodel::NetworkGraph generate_network(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto& net = cfg.network;
  netmodel::Region region{net.width, net.height};
  netmodel::PlacementParams params;
  params.node_count = net.node_count;
  params.clusters = net.clusters;
  params.cluster_spread = net.cluster_spread;
  params.intensity = net.intensity;
  rng::RandomStream stream(cfg.seed, 0);
  auto nodes = netmodel::generate_nodes(placement_from(net.placement), params,
                                        region, stream);
  return netmodel::build_graph(std::move(nodes), net.detection_radius,
                               net.comm_radius);
}

RouteOutcome run_route_once(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto placement = placement_from(cfg.network.placement);
  const int cap = cfg.network.attempt_factor;
  for (int attempt = 0; attempt < cap; ++attempt) {
    rng::RandomStream net_stream(
        cfg.seed, stream_index(0, static_cast<std::uint32_t>(attempt * 2)));
    const auto anchored =
        draw_anchored_network(cfg, placement, cfg.network.node_count,
                              cfg.network.intensity, net_stream);
    const auto beacon = routing::beacon_flood(anchored.graph, anchored.bs_id);
    if (beacon.hop(anchored.graph, anchored.source_id) == routing::kUnreached) {
      continue;
    }
    rng::RandomStream route_stream(
        cfg.seed, stream_index(0, static_cast<std::uint32_t>(attempt * 2 + 1)));
    RouteOutcome out;
    out.route = cfg.network.router == RouterKind::DBR
                    ? routing::dbr_route(anchored.graph, beacon,
                                         anchored.source_id,
                                         cfg.network.p_max, route_stream)
                    : routing::gbr_route(anchored.graph, beacon,
                                         anchored.source_id,
                                         cfg.network.p_max, route_stream);
    out.secure_ratio = routing::secure_relay_ratio(out.route, anchored.graph);
    out.graph = std::move(anchored.graph);
    out.attempts_used = attempt + 1;
    return out;
  }
  throw std::invalid_argument(
      "route: no network with a reachable source after " +
      std::to_string(cap) + " attempts; raise attempt_factor or density");
}

NetworkExport export_network(const netmodel::NetworkGraph& graph,
                             const routing::Route* route,
                             const std::string& comment) {
  NetworkExport out;
  out.nodes.set_comment(comment);
  out.edges.set_comment(comment);

  std::map<int, std::pair<int, std::string>> overlay;  // id -> (hop, secure)
  if (route != nullptr) {
    for (std::size_t i = 0; i < route->hops.size(); ++i) {
      const bool is_relay = i + 1 < route->hops.size();
      overlay[route->hops[i]] = {
          static_cast<int>(i),
          is_relay ? (route->secure[i] ? "1" : "0") : ""};
    }
    out.nodes.set_header({"id", "x", "y", "deg_comm", "deg_detect",
                          "hop_index", "secure"});
  } else {
    out.nodes.set_header({"id", "x", "y", "deg_comm", "deg_detect"});
  }

  for (const auto& node : graph.nodes()) {
    std::vector<std::string> row{
        std::to_string(node.id), format_g9(node.x), format_g9(node.y),
        std::to_string(graph.degree(node.id, netmodel::AdjacencyKind::Comm)),
        std::to_string(
            graph.degree(node.id, netmodel::AdjacencyKind::Detection))};
    if (route != nullptr) {
      const auto it = overlay.find(node.id);
      if (it != overlay.end()) {
        row.push_back(std::to_string(it->second.first));
        row.push_back(it->second.second);
      } else {
        row.push_back("");
        row.push_back("");
      }
    }
    out.nodes.add_row(std::move(row));
  }

  out.edges.set_header({"src", "dst", "kind"});
  std::vector<std::tuple<int, int, std::string>> edges;
  for (const auto& node : graph.nodes()) {
    for (int nbr : graph.neighbors(node.id, netmodel::AdjacencyKind::Comm)) {
      if (node.id < nbr) edges.emplace_back(node.id, nbr, "comm");
    }
    for (int nbr :
         graph.neighbors(node.id, netmodel::AdjacencyKind::Detection)) {
      if (node.id < nbr) edges.emplace_back(node.id, nbr, "detect");
    }
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [src, dst, kind] : edges) {
    out.edges.add_row({std::to_string(src), std::to_string(dst), kind});
  }
  return out;
}

}  // namespace covertsim::harness
