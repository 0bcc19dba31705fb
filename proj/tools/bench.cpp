// Compares the serial reference path against the OpenMP path on the two
// hot kernels: the detection-trial pipeline and graph construction.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "covertsim/experiments.hpp"

using namespace covertsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Brute-force all-pairs adjacency, the reference the grid build is
// compared against.
std::vector<std::vector<int>> all_pairs_adjacency(
    const std::vector<netmodel::Node>& nodes, double radius) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> adj(n);
  const double r_sq = radius * radius;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = nodes[i].x - nodes[j].x;
      const double dy = nodes[i].y - nodes[j].y;
      if (dx * dx + dy * dy < r_sq) {
        adj[i].push_back(nodes[j].id);
        adj[j].push_back(nodes[i].id);
      }
    }
  }
  return adj;
}

}  // namespace

int main() {
  int max_threads = 1;
#ifdef _OPENMP
  max_threads = omp_get_max_threads();
#endif
  std::printf("covertsim bench (max threads: %d)\n", max_threads);

  // Detection-trial kernel ------------------------------------------------
  harness::ExperimentConfig cfg;
  cfg.kind = harness::ExperimentKind::DetectOnce;
  cfg.seed = 42;
  cfg.trials = 2000;
  cfg.warden.t = 100;
  cfg.warden.m = 100;
  cfg.channel.power_mode = harness::PowerMode::Critical;
  cfg.schedule.transmit_prob = 0.2;

  cfg.threads = 1;
  auto t0 = std::chrono::steady_clock::now();
  const auto serial = harness::run_detection_trials(cfg);
  const double serial_s = seconds_since(t0);

  cfg.threads = 0;  // OpenMP default team
  t0 = std::chrono::steady_clock::now();
  const auto parallel = harness::run_detection_trials(cfg);
  const double parallel_s = seconds_since(t0);

  std::printf("detection trials (t=100, m=100, %d trials)\n", cfg.trials);
  std::printf("  serial   %8.3f s  (h1_rate %.4f)\n", serial_s,
              serial.h1_rate);
  std::printf("  openmp   %8.3f s  (h1_rate %.4f)\n", parallel_s,
              parallel.h1_rate);
  std::printf("  speedup  %8.2fx\n", serial_s / parallel_s);
  if (serial.h1 != parallel.h1 || serial.statistics != parallel.statistics) {
    std::printf("  MISMATCH between serial and parallel results\n");
    return 1;
  }
  std::printf("  results identical\n");

  // Graph-build kernel ----------------------------------------------------
  const int n_nodes = 4000;
  rng::RandomStream stream(7, 0);
  netmodel::Region region{1000.0, 500.0};
  netmodel::PlacementParams params;
  params.node_count = n_nodes;
  const auto nodes = netmodel::generate_nodes(netmodel::Placement::Uniform,
                                              params, region, stream);

  t0 = std::chrono::steady_clock::now();
  const auto brute_comm = all_pairs_adjacency(nodes, 20.0);
  const double brute_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const auto graph = netmodel::build_graph(nodes, 5.0, 20.0);
  const double grid_s = seconds_since(t0);

  bool same = true;
  for (int i = 0; i < n_nodes && same; ++i) {
    auto sorted = brute_comm[i];
    std::sort(sorted.begin(), sorted.end());
    same = sorted ==
           graph.neighbors(nodes[i].id, netmodel::AdjacencyKind::Comm);
  }
  std::printf("graph build (%d nodes)\n", n_nodes);
  std::printf("  all-pairs %7.3f s\n", brute_s);
  std::printf("  grid      %7.3f s\n", grid_s);
  std::printf("  speedup   %7.2fx, adjacency %s\n", brute_s / grid_s,
              same ? "identical" : "MISMATCH");
  return same ? 0 : 1;
}
