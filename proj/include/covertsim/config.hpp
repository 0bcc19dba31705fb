#ifndef COVERTSIM_CONFIG_HPP
#define COVERTSIM_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "covertsim/channel.hpp"

namespace covertsim::harness {

enum class ExperimentKind {
  DetectOnce,
  SweepT,
  SweepP,
  NetGen,
  RouteOnce,
  SecureRatioSweep
};

// How Alice's power is chosen: a fixed dB value, or the operating point
// where her power at the warden's farthest location equals the noise
// floor (P_{2t} = sigma_0^2).
enum class PowerMode { Explicit, Critical };

enum class ThresholdChoice { Auto, Exact, Clt };

enum class RouterKind { DBR, GBR };

struct ChannelConfig {
  double alice_power_db = 30.0;
  double noise_power_db = 0.0;
  double path_loss_exponent = 3.0;
  channel::PathLossLaw law = channel::PathLossLaw::Unbounded;
  channel::FadingModel fading = channel::FadingModel::None;
  PowerMode power_mode = PowerMode::Explicit;
};

struct WardenConfig {
  int t = 100;
  int m = 100;
  double spacing = 0.5;
  bool per_sample_bernoulli = false;
  bool block_fading = false;
};

struct DetectorConfig {
  double beta = 0.05;
  ThresholdChoice threshold_mode = ThresholdChoice::Auto;
};

struct ScheduleConfig {
  double transmit_prob = 1.0;
};

struct SweepConfig {
  std::vector<double> alpha_list;
  std::vector<int> t_list;
  std::vector<double> p_list;
  std::vector<double> density_list;
};

struct NetworkConfig {
  double width = 200.0;
  double height = 100.0;
  double detection_radius = 5.0;
  double comm_radius = 20.0;
  std::string placement = "uniform";  // uniform | clustered | ppp
  int node_count = 300;
  int clusters = 6;
  double cluster_spread = 12.0;
  double intensity = 0.015;  // PPP nodes per m^2
  double bs_x = 0.0;
  double bs_y = 50.0;
  double source_x = 200.0;
  double source_y = 50.0;
  double p_max = 0.25;
  RouterKind router = RouterKind::DBR;
  std::vector<std::string> placement_list;  // secure-ratio rows
  std::vector<std::string> router_list;
  int attempt_factor = 20;  // attempt cap = factor * trials
  // Route draws averaged per network; >1 sharpens router comparisons by
  // cancelling route randomness without changing the estimated mean.
  int routes_per_network = 1;
};

// One experiment: a kind, the master seed, the trial count, and per-module
// parameter blocks. Parsed from a flat [section] key=value text format;
// dB values are converted to linear units when scenarios are realized.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::DetectOnce;
  std::uint64_t seed = 42;
  int trials = 1000;
  int threads = 0;  // 0 = library default; 1 = serial reference path

  ChannelConfig channel;
  WardenConfig warden;
  DetectorConfig detector;
  ScheduleConfig schedule;
  SweepConfig sweep;
  NetworkConfig network;

  void validate() const;           // throws std::invalid_argument
  std::string canonical_text() const;
  std::uint64_t config_hash() const;  // FNV-1a over canonical_text()
};

ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from(std::string_view name);

}  // namespace covertsim::harness

#endif  // COVERTSIM_CONFIG_HPP
