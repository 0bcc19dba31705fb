#include "covertsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covertsim::harness {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key +
                                ": '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key +
                                ": '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad unsigned value for " + key +
                                ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: bad boolean value for " + key + ": '" +
                              value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(value);
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_double(key, item));
  return out;
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) out.push_back(parse_int(key, item));
  return out;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::DetectOnce: return "detect";
    case ExperimentKind::SweepT: return "sweep-t";
    case ExperimentKind::SweepP: return "sweep-p";
    case ExperimentKind::NetGen: return "netgen";
    case ExperimentKind::RouteOnce: return "route";
    case ExperimentKind::SecureRatioSweep: return "secure-ratio";
  }
  throw std::logic_error("unknown experiment kind");
}

ExperimentKind experiment_kind_from(std::string_view name) {
  const std::string n = lower(std::string(name));
  if (n == "detect") return ExperimentKind::DetectOnce;
  if (n == "sweep-t") return ExperimentKind::SweepT;
  if (n == "sweep-p") return ExperimentKind::SweepP;
  if (n == "netgen") return ExperimentKind::NetGen;
  if (n == "route") return ExperimentKind::RouteOnce;
  if (n == "secure-ratio") return ExperimentKind::SecureRatioSweep;
  throw std::invalid_argument("config: unknown experiment kind '" +
                              std::string(name) + "'");
}

namespace {

channel::PathLossLaw law_from(const std::string& v) {
  const std::string n = lower(v);
  if (n == "unbounded") return channel::PathLossLaw::Unbounded;
  if (n == "bounded") return channel::PathLossLaw::Bounded;
  throw std::invalid_argument("config: unknown path_loss_law '" + v + "'");
}

std::string to_string(channel::PathLossLaw law) {
  return law == channel::PathLossLaw::Unbounded ? "unbounded" : "bounded";
}

channel::FadingModel fading_from(const std::string& v) {
  const std::string n = lower(v);
  if (n == "none") return channel::FadingModel::None;
  if (n == "rayleigh") return channel::FadingModel::RayleighUnitMean;
  throw std::invalid_argument("config: unknown fading model '" + v + "'");
}

std::string to_string(channel::FadingModel fading) {
  return fading == channel::FadingModel::None ? "none" : "rayleigh";
}

PowerMode power_mode_from(const std::string& v) {
  const std::string n = lower(v);
  if (n == "explicit") return PowerMode::Explicit;
  if (n == "critical") return PowerMode::Critical;
  throw std::invalid_argument("config: unknown power_mode '" + v + "'");
}

ThresholdChoice threshold_from(const std::string& v) {
  const std::string n = lower(v);
  if (n == "auto") return ThresholdChoice::Auto;
  if (n == "exact") return ThresholdChoice::Exact;
  if (n == "clt") return ThresholdChoice::Clt;
  throw std::invalid_argument("config: unknown threshold_mode '" + v + "'");
}

std::string to_string(ThresholdChoice c) {
  switch (c) {
    case ThresholdChoice::Auto: return "auto";
    case ThresholdChoice::Exact: return "exact";
    case ThresholdChoice::Clt: return "clt";
  }
  throw std::logic_error("unknown threshold choice");
}

RouterKind router_from(const std::string& v) {
  const std::string n = lower(v);
  if (n == "dbr") return RouterKind::DBR;
  if (n == "gbr") return RouterKind::GBR;
  throw std::invalid_argument("config: unknown router '" + v + "'");
}

std::string to_string(RouterKind r) {
  return r == RouterKind::DBR ? "dbr" : "gbr";
}

void check_placement_name(const std::string& v) {
  const std::string n = lower(v);
  if (n != "uniform" && n != "clustered" && n != "ppp") {
    throw std::invalid_argument("config: unknown placement '" + v + "'");
  }
}

void apply_key(ExperimentConfig& cfg, const std::string& section,
               const std::string& key, const std::string& value) {
  if (section == "experiment") {
    if (key == "kind") { cfg.kind = experiment_kind_from(value); return; }
    if (key == "seed") { cfg.seed = parse_u64(key, value); return; }
    if (key == "trials") { cfg.trials = parse_int(key, value); return; }
    if (key == "threads") { cfg.threads = parse_int(key, value); return; }
  } else if (section == "channel") {
    auto& c = cfg.channel;
    if (key == "alice_power_db") { c.alice_power_db = parse_double(key, value); return; }
    if (key == "noise_power_db") { c.noise_power_db = parse_double(key, value); return; }
    if (key == "path_loss_exponent") { c.path_loss_exponent = parse_double(key, value); return; }
    if (key == "path_loss_law") { c.law = law_from(value); return; }
    if (key == "fading") { c.fading = fading_from(value); return; }
    if (key == "power_mode") { c.power_mode = power_mode_from(value); return; }
  } else if (section == "warden") {
    auto& w = cfg.warden;
    if (key == "t") { w.t = parse_int(key, value); return; }
    if (key == "m") { w.m = parse_int(key, value); return; }
    if (key == "spacing") { w.spacing = parse_double(key, value); return; }
    if (key == "per_sample_bernoulli") { w.per_sample_bernoulli = parse_bool(key, value); return; }
    if (key == "block_fading") { w.block_fading = parse_bool(key, value); return; }
  } else if (section == "detector") {
    auto& d = cfg.detector;
    if (key == "beta") { d.beta = parse_double(key, value); return; }
    if (key == "threshold_mode") { d.threshold_mode = threshold_from(value); return; }
  } else if (section == "schedule") {
    if (key == "transmit_prob") { cfg.schedule.transmit_prob = parse_double(key, value); return; }
  } else if (section == "sweep") {
    auto& s = cfg.sweep;
    if (key == "alpha_list") { s.alpha_list = parse_double_list(key, value); return; }
    if (key == "t_list") { s.t_list = parse_int_list(key, value); return; }
    if (key == "p_list") { s.p_list = parse_double_list(key, value); return; }
    if (key == "density_list") { s.density_list = parse_double_list(key, value); return; }
  } else if (section == "network") {
    auto& n = cfg.network;
    if (key == "width") { n.width = parse_double(key, value); return; }
    if (key == "height") { n.height = parse_double(key, value); return; }
    if (key == "detection_radius") { n.detection_radius = parse_double(key, value); return; }
    if (key == "comm_radius") { n.comm_radius = parse_double(key, value); return; }
    if (key == "placement") { check_placement_name(value); n.placement = lower(value); return; }
    if (key == "node_count") { n.node_count = parse_int(key, value); return; }
    if (key == "clusters") { n.clusters = parse_int(key, value); return; }
    if (key == "cluster_spread") { n.cluster_spread = parse_double(key, value); return; }
    if (key == "intensity") { n.intensity = parse_double(key, value); return; }
    if (key == "bs_x") { n.bs_x = parse_double(key, value); return; }
    if (key == "bs_y") { n.bs_y = parse_double(key, value); return; }
    if (key == "source_x") { n.source_x = parse_double(key, value); return; }
    if (key == "source_y") { n.source_y = parse_double(key, value); return; }
    if (key == "p_max") { n.p_max = parse_double(key, value); return; }
    if (key == "router") { n.router = router_from(value); return; }
    if (key == "placement_list") {
      n.placement_list = split_list(value);
      for (auto& p : n.placement_list) { check_placement_name(p); p = lower(p); }
      return;
    }
    if (key == "router_list") {
      n.router_list = split_list(value);
      for (auto& r : n.router_list) { router_from(r); r = lower(r); }
      return;
    }
    if (key == "attempt_factor") { n.attempt_factor = parse_int(key, value); return; }
    if (key == "routes_per_network") { n.routes_per_network = parse_int(key, value); return; }
  } else {
    throw std::invalid_argument("config: unknown section [" + section + "]");
  }
  throw std::invalid_argument("config: unknown key '" + key +
                              "' in section [" + section + "]");
}

}  // namespace

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::stringstream ss{std::string(text)};
  std::string raw;
  while (std::getline(ss, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config: malformed section at line " +
                                    std::to_string(line_no));
      }
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected key=value at line " +
                                  std::to_string(line_no));
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw std::invalid_argument("config: key '" + key +
                                  "' appears before any [section]");
    }
    apply_key(cfg, section, key, value);
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open file '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  if (!(channel.path_loss_exponent > 2.0)) {
    throw std::invalid_argument("config: path_loss_exponent must be > 2");
  }
  if (warden.t < 1 || warden.m < 1 || !(warden.spacing > 0.0)) {
    throw std::invalid_argument("config: warden needs t >= 1, m >= 1, "
                                "spacing > 0");
  }
  if (!(detector.beta > 0.0 && detector.beta < 1.0)) {
    throw std::invalid_argument("config: beta must lie strictly inside (0,1)");
  }
  if (!(schedule.transmit_prob >= 0.0 && schedule.transmit_prob <= 1.0)) {
    throw std::invalid_argument("config: transmit_prob must lie in [0,1]");
  }
  if (!(network.width > 0.0 && network.height > 0.0)) {
    throw std::invalid_argument("config: network region must be non-degenerate");
  }
  if (!(network.detection_radius > 0.0 && network.comm_radius > 0.0)) {
    throw std::invalid_argument("config: network radii must be > 0");
  }
  if (!(network.p_max > 0.0 && network.p_max <= 1.0)) {
    throw std::invalid_argument("config: p_max must lie in (0,1]");
  }
  if (network.attempt_factor < 1) {
    throw std::invalid_argument("config: attempt_factor must be >= 1");
  }
  if (network.routes_per_network < 1) {
    throw std::invalid_argument("config: routes_per_network must be >= 1");
  }
  switch (kind) {
    case ExperimentKind::SweepT:
      if (sweep.t_list.empty()) {
        throw std::invalid_argument("config: sweep-t needs sweep.t_list");
      }
      break;
    case ExperimentKind::SweepP:
      if (sweep.t_list.empty() || sweep.p_list.empty()) {
        throw std::invalid_argument(
            "config: sweep-p needs sweep.t_list and sweep.p_list");
      }
      for (double p : sweep.p_list) {
        if (!(p >= 0.0 && p <= 1.0)) {
          throw std::invalid_argument("config: p_list entries must lie in [0,1]");
        }
      }
      break;
    case ExperimentKind::SecureRatioSweep:
      if (sweep.density_list.empty()) {
        throw std::invalid_argument(
            "config: secure-ratio needs sweep.density_list");
      }
      for (double d : sweep.density_list) {
        if (!(d >= 0.0)) {
          throw std::invalid_argument("config: densities must be >= 0");
        }
      }
      break;
    default:
      break;
  }
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream out;
  out.precision(17);
  const auto list_d = [&](const std::vector<double>& v) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
  };
  const auto list_i = [&](const std::vector<int>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
  };
  const auto list_s = [&](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };

  // threads is execution machinery, not experiment identity: output must
  // be byte-identical for any worker count, so it stays out of the hash.
  out << "[experiment]\n"
      << "kind=" << harness::to_string(kind) << "\n"
      << "seed=" << seed << "\n"
      << "trials=" << trials << "\n";
  out << "[channel]\n"
      << "alice_power_db=" << channel.alice_power_db << "\n"
      << "fading=" << to_string(channel.fading) << "\n"
      << "noise_power_db=" << channel.noise_power_db << "\n"
      << "path_loss_exponent=" << channel.path_loss_exponent << "\n"
      << "path_loss_law=" << to_string(channel.law) << "\n"
      << "power_mode="
      << (channel.power_mode == PowerMode::Critical ? "critical" : "explicit")
      << "\n";
  out << "[warden]\n"
      << "block_fading=" << (warden.block_fading ? "true" : "false") << "\n"
      << "m=" << warden.m << "\n"
      << "per_sample_bernoulli="
      << (warden.per_sample_bernoulli ? "true" : "false") << "\n"
      << "spacing=" << warden.spacing << "\n"
      << "t=" << warden.t << "\n";
  out << "[detector]\n"
      << "beta=" << detector.beta << "\n"
      << "threshold_mode=" << to_string(detector.threshold_mode) << "\n";
  out << "[schedule]\n"
      << "transmit_prob=" << schedule.transmit_prob << "\n";
  out << "[sweep]\n"
      << "alpha_list=" << list_d(sweep.alpha_list) << "\n"
      << "density_list=" << list_d(sweep.density_list) << "\n"
      << "p_list=" << list_d(sweep.p_list) << "\n"
      << "t_list=" << list_i(sweep.t_list) << "\n";
  out << "[network]\n"
      << "attempt_factor=" << network.attempt_factor << "\n"
      << "bs_x=" << network.bs_x << "\n"
      << "bs_y=" << network.bs_y << "\n"
      << "cluster_spread=" << network.cluster_spread << "\n"
      << "clusters=" << network.clusters << "\n"
      << "comm_radius=" << network.comm_radius << "\n"
      << "detection_radius=" << network.detection_radius << "\n"
      << "height=" << network.height << "\n"
      << "intensity=" << network.intensity << "\n"
      << "node_count=" << network.node_count << "\n"
      << "p_max=" << network.p_max << "\n"
      << "placement=" << network.placement << "\n"
      << "placement_list=" << list_s(network.placement_list) << "\n"
      << "routes_per_network=" << network.routes_per_network << "\n"
      << "router=" << to_string(network.router) << "\n"
      << "router_list=" << list_s(network.router_list) << "\n"
      << "source_x=" << network.source_x << "\n"
      << "source_y=" << network.source_y << "\n"
      << "width=" << network.width << "\n";
  return out.str();
}

std::uint64_t ExperimentConfig::config_hash() const {
  // FNV-1a, 64-bit
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace covertsim::harness
