#ifndef COVERTSIM_NETMODEL_HPP
#define COVERTSIM_NETMODEL_HPP

#include <vector>

#include "covertsim/rng.hpp"

namespace covertsim::netmodel {

struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned placement region [0,width] x [0,height], meters.
struct Region {
  double width = 0.0;
  double height = 0.0;

  void validate() const;
  double area() const { return width * height; }
};

enum class Placement { Uniform, Clustered, PPP };

struct PlacementParams {
  int node_count = 0;       // Uniform / Clustered
  int clusters = 1;         // Clustered: number of cluster centers
  double cluster_spread = 1.0;  // Clustered: isotropic Gaussian sigma (m)
  double intensity = 0.0;   // PPP: lambda, nodes per m^2
};

// Node placement. Uniform draws node_count i.i.d. positions; Clustered
// draws cluster centers uniformly and assigns nodes round-robin with a
// Gaussian offset, redrawing offsets that land outside the region; PPP
// draws Poisson(lambda * area) nodes uniformly. Ids are 0..n-1.
std::vector<Node> generate_nodes(Placement mode, const PlacementParams& params,
                                 const Region& region,
                                 rng::RandomStream& stream);

enum class AdjacencyKind { Detection, Comm };

// Immutable dual-radius geometric graph. Edges use STRICT inequality at
// the radius (a pair exactly at the radius is not linked); co-located
// nodes are adjacent. Degrees and the mean degree refer to the
// communication adjacency, which is the neighbor notion routing uses;
// the detection adjacency only enters the security analysis.
class NetworkGraph {
 public:
  NetworkGraph() = default;

  const std::vector<Node>& nodes() const { return nodes_; }
  double detection_radius() const { return detection_radius_; }
  double comm_radius() const { return comm_radius_; }
  double mean_degree() const { return mean_degree_; }

  int index_of(int node_id) const;  // throws for unknown ids
  const Node& node(int node_id) const { return nodes_[index_of(node_id)]; }

  // Neighbor ids, ascending. Indexed by node id.
  const std::vector<int>& neighbors(int node_id, AdjacencyKind kind) const;
  int degree(int node_id, AdjacencyKind kind) const;

  // Adjacency list in graph storage order (parallel to nodes()).
  const std::vector<std::vector<int>>& adjacency(AdjacencyKind kind) const {
    return kind == AdjacencyKind::Detection ? detect_adj_ : comm_adj_;
  }

  friend NetworkGraph build_graph(std::vector<Node> nodes,
                                  double detection_radius,
                                  double comm_radius);

 private:
  std::vector<Node> nodes_;
  double detection_radius_ = 0.0;
  double comm_radius_ = 0.0;
  std::vector<std::vector<int>> detect_adj_;  // neighbor ids per node slot
  std::vector<std::vector<int>> comm_adj_;
  std::vector<int> sorted_ids_;    // for id -> slot lookup
  std::vector<int> sorted_slots_;
  double mean_degree_ = 0.0;
};

// Builds both adjacencies with a uniform-grid neighbor search.
NetworkGraph build_graph(std::vector<Node> nodes, double detection_radius,
                         double comm_radius);

// Union-find partition of node ids under the chosen adjacency. Ids within
// a component are ascending and components are ordered by their minimum id
// (the representative).
std::vector<std::vector<int>> connected_components(const NetworkGraph& graph,
                                                   AdjacencyKind kind);

// Density above which the network shadows any single transmitter from the
// warden: 1 / (pi * d_aw^2).
double shadow_density_threshold(double d_aw);

}  // namespace covertsim::netmodel

#endif  // COVERTSIM_NETMODEL_HPP
