#ifndef COVERTSIM_ROUTING_HPP
#define COVERTSIM_ROUTING_HPP

#include <span>
#include <vector>

#include "covertsim/netmodel.hpp"
#include "covertsim/statmath.hpp"

namespace covertsim::routing {

inline constexpr int kUnreached = -1;

// A candidate relay: a comm-neighbor with a strictly smaller hop count,
// carrying its comm degree for the selection rule.
struct Candidate {
  int id = 0;
  int degree = 0;
};

// Result of the beacon flood: hop counts from the base station and each
// node's relay candidate set. Vectors are parallel to the graph's node
// storage order; use the (graph, id) accessors for id-based lookup.
struct BeaconState {
  int bs_id = 0;
  std::vector<int> hop_count;                    // kUnreached if never hit
  std::vector<std::vector<Candidate>> candidates;

  int hop(const netmodel::NetworkGraph& graph, int node_id) const {
    return hop_count[graph.index_of(node_id)];
  }
  const std::vector<Candidate>& candidate_set(
      const netmodel::NetworkGraph& graph, int node_id) const {
    return candidates[graph.index_of(node_id)];
  }
};

// Breadth-first beacon flood over the communication adjacency. A node's
// candidates are its comm-neighbors one hop closer to the base station
// (the backward-path reading of the flooding stage, which keeps routes
// loop-free). Unreachable nodes keep kUnreached and an empty set.
BeaconState beacon_flood(const netmodel::NetworkGraph& graph, int bs_id);

// Degree-weighted relay selection. Candidates are sorted by ascending
// degree (ties by ascending id); a folded standard normal draw |r0| is
// matched against the cumulative-degree intervals, so higher-degree
// candidates, whose intervals sit near zero, are picked more often.
// All-zero degrees degenerate to a uniform pick (with a logged warning).
int dbr_select_relay(std::span<const Candidate> candidates,
                     rng::RandomStream& stream);

// Logistic per-hop transmission probability: p_max / (1 + e^-(deg - mean)).
double dbr_transmit_prob(int degree, double mean_degree,
                         statmath::Probability p_max);

// A multi-hop path from the source to the base station. transmit_prob and
// secure have one entry per transmitting hop (every hop except the final
// BS); secure means at least one other node sits inside the relay's
// detection radius.
struct Route {
  std::vector<int> hops;
  std::vector<double> transmit_prob;
  std::vector<bool> secure;
};

// Density-based route: repeated dbr_select_relay steps until the base
// station, logistic transmission probability per hop.
Route dbr_route(const netmodel::NetworkGraph& graph, const BeaconState& beacon,
                int source_id, statmath::Probability p_max,
                rng::RandomStream& stream);

// Gradient baseline: uniform choice among the (minimal-hop) candidates,
// constant transmission probability p_max per hop.
Route gbr_route(const netmodel::NetworkGraph& graph, const BeaconState& beacon,
                int source_id, statmath::Probability p_max,
                rng::RandomStream& stream);

// Fraction of relays with at least one other node inside their detection
// radius. A route with no relays (source == BS) scores 1 by convention.
double secure_relay_ratio(const Route& route,
                          const netmodel::NetworkGraph& graph);

}  // namespace covertsim::routing

#endif  // COVERTSIM_ROUTING_HPP
