#include "covertsim/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace covertsim::netmodel {

void Region::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw std::invalid_argument("Region: width and height must be > 0");
  }
}

namespace {

std::vector<Node> uniform_nodes(int n, const Region& region,
                                rng::RandomStream& stream) {
  std::vector<Node> nodes(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = {i, stream.uniform01() * region.width,
                stream.uniform01() * region.height};
  }
  return nodes;
}

}  // namespace

std::vector<Node> generate_nodes(Placement mode, const PlacementParams& params,
                                 const Region& region,
                                 rng::RandomStream& stream) {
  region.validate();
  switch (mode) {
    case Placement::Uniform: {
      if (params.node_count < 0) {
        throw std::invalid_argument("generate_nodes: node_count must be >= 0");
      }
      return uniform_nodes(params.node_count, region, stream);
    }
    case Placement::Clustered: {
      if (params.node_count < 0) {
        throw std::invalid_argument("generate_nodes: node_count must be >= 0");
      }
      if (params.clusters < 1) {
        throw std::invalid_argument("generate_nodes: clusters must be >= 1");
      }
      if (!(params.cluster_spread > 0.0)) {
        throw std::invalid_argument(
            "generate_nodes: cluster_spread must be > 0");
      }
      std::vector<std::pair<double, double>> centers(params.clusters);
      for (auto& c : centers) {
        c = {stream.uniform01() * region.width,
             stream.uniform01() * region.height};
      }
      std::vector<Node> nodes(params.node_count);
      for (int i = 0; i < params.node_count; ++i) {
        const auto& [cx, cy] = centers[i % params.clusters];
        // Truncated Gaussian offset: redraw until inside the region. The
        // center is inside, so acceptance probability is bounded away
        // from zero for any spread.
        double x, y;
        do {
          x = cx + params.cluster_spread * stream.normal();
          y = cy + params.cluster_spread * stream.normal();
        } while (x < 0.0 || x > region.width || y < 0.0 || y > region.height);
        nodes[i] = {i, x, y};
      }
      return nodes;
    }
    case Placement::PPP: {
      if (!(params.intensity >= 0.0)) {
        throw std::invalid_argument("generate_nodes: intensity must be >= 0");
      }
      const int n = stream.poisson(params.intensity * region.area());
      return uniform_nodes(n, region, stream);
    }
  }
  throw std::logic_error("generate_nodes: unknown placement mode");
}

int NetworkGraph::index_of(int node_id) const {
  const auto it =
      std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), node_id);
  if (it == sorted_ids_.end() || *it != node_id) {
    throw std::invalid_argument("NetworkGraph: unknown node id " +
                                std::to_string(node_id));
  }
  return sorted_slots_[static_cast<std::size_t>(it - sorted_ids_.begin())];
}

const std::vector<int>& NetworkGraph::neighbors(int node_id,
                                                AdjacencyKind kind) const {
  const int slot = index_of(node_id);
  return kind == AdjacencyKind::Detection ? detect_adj_[slot]
                                          : comm_adj_[slot];
}

int NetworkGraph::degree(int node_id, AdjacencyKind kind) const {
  return static_cast<int>(neighbors(node_id, kind).size());
}

NetworkGraph build_graph(std::vector<Node> nodes, double detection_radius,
                         double comm_radius) {
  if (!(detection_radius > 0.0) || !(comm_radius > 0.0)) {
    throw std::invalid_argument("build_graph: radii must be > 0");
  }

  NetworkGraph g;
  g.nodes_ = std::move(nodes);
  g.detection_radius_ = detection_radius;
  g.comm_radius_ = comm_radius;

  const int n = static_cast<int>(g.nodes_.size());
  g.detect_adj_.assign(n, {});
  g.comm_adj_.assign(n, {});

  // id -> slot lookup (and uniqueness check)
  g.sorted_slots_.resize(n);
  std::iota(g.sorted_slots_.begin(), g.sorted_slots_.end(), 0);
  std::sort(g.sorted_slots_.begin(), g.sorted_slots_.end(),
            [&](int a, int b) { return g.nodes_[a].id < g.nodes_[b].id; });
  g.sorted_ids_.resize(n);
  for (int i = 0; i < n; ++i) {
    g.sorted_ids_[i] = g.nodes_[g.sorted_slots_[i]].id;
    if (i > 0 && g.sorted_ids_[i] == g.sorted_ids_[i - 1]) {
      throw std::invalid_argument("build_graph: duplicate node id " +
                                  std::to_string(g.sorted_ids_[i]));
    }
  }
  if (n == 0) return g;

  // Uniform-grid neighbor search with cell size = max radius, so any pair
  // within either radius lands in adjacent cells.
  const double cell = std::max(detection_radius, comm_radius);
  const double r_det_sq = detection_radius * detection_radius;
  const double r_com_sq = comm_radius * comm_radius;

  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  grid.reserve(static_cast<std::size_t>(n));
  const auto cell_key = [&](double x, double y) {
    const auto cx = static_cast<std::int64_t>(std::floor(x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(y / cell));
    return (static_cast<std::uint64_t>(cx) << 32) ^
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
  };
  for (int i = 0; i < n; ++i) {
    grid[cell_key(g.nodes_[i].x, g.nodes_[i].y)].push_back(i);
  }

  for (int i = 0; i < n; ++i) {
    const Node& a = g.nodes_[i];
    const auto cx = static_cast<std::int64_t>(std::floor(a.x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(a.y / cell));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(cx + dx) << 32) ^
            static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy + dy));
        const auto it = grid.find(key);
        if (it == grid.end()) continue;
        for (int j : it->second) {
          if (j <= i) continue;  // each unordered pair once
          const Node& b = g.nodes_[j];
          const double ddx = a.x - b.x;
          const double ddy = a.y - b.y;
          const double dist_sq = ddx * ddx + ddy * ddy;
          if (dist_sq < r_det_sq) {
            g.detect_adj_[i].push_back(b.id);
            g.detect_adj_[j].push_back(a.id);
          }
          if (dist_sq < r_com_sq) {
            g.comm_adj_[i].push_back(b.id);
            g.comm_adj_[j].push_back(a.id);
          }
        }
      }
    }
  }

  std::size_t degree_sum = 0;
  for (int i = 0; i < n; ++i) {
    std::sort(g.detect_adj_[i].begin(), g.detect_adj_[i].end());
    std::sort(g.comm_adj_[i].begin(), g.comm_adj_[i].end());
    degree_sum += g.comm_adj_[i].size();
  }
  g.mean_degree_ = static_cast<double>(degree_sum) / n;
  return g;
}

std::vector<std::vector<int>> connected_components(const NetworkGraph& graph,
                                                   AdjacencyKind kind) {
  const int n = static_cast<int>(graph.nodes().size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  const auto& adj = graph.adjacency(kind);
  for (int i = 0; i < n; ++i) {
    for (int nbr_id : adj[i]) {
      const int a = find(i);
      const int b = find(graph.index_of(nbr_id));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  std::unordered_map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) {
    groups[find(i)].push_back(graph.nodes()[i].id);
  }
  std::vector<std::vector<int>> components;
  components.reserve(groups.size());
  for (auto& [root, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    components.push_back(std::move(ids));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

double shadow_density_threshold(double d_aw) {
  if (!(d_aw > 0.0)) {
    throw std::invalid_argument("shadow_density_threshold: d_aw must be > 0");
  }
  return 1.0 / (M_PI * d_aw * d_aw);
}

}  // namespace covertsim::netmodel
