#ifndef COVERTSIM_EXPERIMENTS_HPP
#define COVERTSIM_EXPERIMENTS_HPP

#include <cstdint>
#include <vector>

#include "covertsim/config.hpp"
#include "covertsim/csv.hpp"
#include "covertsim/detector.hpp"
#include "covertsim/netmodel.hpp"
#include "covertsim/routing.hpp"
#include "covertsim/warden.hpp"

namespace covertsim::harness {

struct DetectionSummary {
  double h1_rate = 0.0;
  double std_error = 0.0;       // binomial standard error of h1_rate
  double mean_statistic = 0.0;  // compensated mean of the trend statistic
  std::vector<int> statistics;  // per trial, indexed by trial number
  std::vector<std::uint8_t> h1;
};

// Scenario realization. Critical power mode solves P_{2t} = sigma_0^2 so
// the warden's farthest location sits exactly at the noise floor.
channel::ChannelScenario make_scenario(const ExperimentConfig& cfg,
                                       double alpha, int t);
warden::WardenWalk make_walk(const ExperimentConfig& cfg, int t);
detector::ThresholdMode resolve_threshold_mode(ThresholdChoice choice, int t);

// Significance certified by the closed-form detection bound at (t, alpha):
// the beta for which t sits exactly on the required-locations boundary.
double analytic_beta_bound(int t, double alpha);

// Monte Carlo detection pipeline: `trials` independent walk+test runs on
// substreams indexed (row_index << 32) | trial, reduced in trial order so
// the result is byte-stable for any worker count. threads == 1 runs the
// plain serial loop; 0 uses the OpenMP default team.
DetectionSummary run_detection_core(const channel::ChannelScenario& scenario,
                                    const warden::WardenWalk& walk,
                                    statmath::Probability transmit_prob,
                                    statmath::Probability beta,
                                    detector::ThresholdMode mode, int trials,
                                    int threads, std::uint64_t seed,
                                    std::uint32_t row_index);

// The `detect` experiment: scenario and walk from the config.
DetectionSummary run_detection_trials(const ExperimentConfig& cfg);
CsvTable detect_table(const ExperimentConfig& cfg,
                      const DetectionSummary& summary);

// Sweep experiments (sweep-t, sweep-p, secure-ratio) as plot-ready tables.
CsvTable run_sweep(const ExperimentConfig& cfg);

// Network generation for the netgen experiment (no BS/source anchors).
netmodel::NetworkGraph generate_network(const ExperimentConfig& cfg);

struct RouteOutcome {
  netmodel::NetworkGraph graph;
  routing::Route route;
  double secure_ratio = 0.0;
  int attempts_used = 0;  // networks drawn before the source was reachable
};

// The `route` experiment: networks with a base station anchored at
// (bs_x,bs_y) and the source at (source_x,source_y) are drawn until the
// source is reachable, then routed with the configured router.
RouteOutcome run_route_once(const ExperimentConfig& cfg);

struct NetworkExport {
  CsvTable nodes;
  CsvTable edges;
};

// nodes.csv (id,x,y,deg_comm,deg_detect[,hop_index,secure]) and edges.csv
// (src,dst,kind), rows deterministically ordered.
NetworkExport export_network(const netmodel::NetworkGraph& graph,
                             const routing::Route* route,
                             const std::string& comment);

// The leading CSV comment: config hash and master seed.
std::string csv_comment(const ExperimentConfig& cfg);

}  // namespace covertsim::harness

#endif  // COVERTSIM_EXPERIMENTS_HPP
