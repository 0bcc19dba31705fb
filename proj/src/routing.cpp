#include "covertsim/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>
#include <stdexcept>
#include <string>

namespace covertsim::routing {

BeaconState beacon_flood(const netmodel::NetworkGraph& graph, int bs_id) {
  const int n = static_cast<int>(graph.nodes().size());
  const int bs_slot = graph.index_of(bs_id);  // validates the id

  BeaconState state;
  state.bs_id = bs_id;
  state.hop_count.assign(n, kUnreached);
  state.candidates.assign(n, {});

  std::deque<int> frontier;
  state.hop_count[bs_slot] = 0;
  frontier.push_back(bs_slot);
  const auto& adj = graph.adjacency(netmodel::AdjacencyKind::Comm);
  while (!frontier.empty()) {
    const int slot = frontier.front();
    frontier.pop_front();
    for (int nbr_id : adj[slot]) {
      const int nbr = graph.index_of(nbr_id);
      if (state.hop_count[nbr] == kUnreached) {
        state.hop_count[nbr] = state.hop_count[slot] + 1;
        frontier.push_back(nbr);
      }
    }
  }

  for (int slot = 0; slot < n; ++slot) {
    if (state.hop_count[slot] <= 0) continue;  // BS or unreached
    for (int nbr_id : adj[slot]) {
      const int nbr = graph.index_of(nbr_id);
      if (state.hop_count[nbr] != kUnreached &&
          state.hop_count[nbr] < state.hop_count[slot]) {
        state.candidates[slot].push_back(
            {nbr_id, graph.degree(nbr_id, netmodel::AdjacencyKind::Comm)});
      }
    }
  }
  return state;
}

int dbr_select_relay(std::span<const Candidate> candidates,
                     rng::RandomStream& stream) {
  if (candidates.empty()) {
    throw std::invalid_argument("dbr_select_relay: empty candidate set");
  }
  std::vector<Candidate> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end(), [](const Candidate& a,
                                             const Candidate& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.id < b.id;
  });

  double degree_sum = 0.0;
  for (const auto& c : sorted) {
    if (c.degree < 0) {
      throw std::invalid_argument("dbr_select_relay: negative degree");
    }
    degree_sum += c.degree;
  }
  const std::size_t count = sorted.size();
  if (degree_sum == 0.0) {
    // Selection rule is degenerate without degree mass; fall back to a
    // uniform pick.
    std::cerr << "dbr_select_relay: all candidate degrees are zero, "
                 "selecting uniformly\n";
    const auto idx = std::min(
        static_cast<std::size_t>(stream.uniform01() * count), count - 1);
    return sorted[idx].id;
  }

  const double u = std::fabs(stream.normal());
  double prefix = sorted[0].degree;
  if (u > 3.0 * (1.0 - prefix / degree_sum)) {
    return sorted[0].id;
  }
  for (std::size_t k = 1; k < count; ++k) {
    const double upper = 3.0 * (1.0 - prefix / degree_sum);
    prefix += sorted[k].degree;
    const double lower = 3.0 * (1.0 - prefix / degree_sum);
    if (u > lower && u <= upper) {
      return sorted[k].id;
    }
  }
  // |r0| == 0 (or fell through on a rounding boundary): last candidate.
  return sorted[count - 1].id;
}

double dbr_transmit_prob(int degree, double mean_degree,
                         statmath::Probability p_max) {
  if (degree < 0) {
    throw std::invalid_argument("dbr_transmit_prob: degree must be >= 0");
  }
  if (!(p_max > 0.0)) {
    throw std::invalid_argument("dbr_transmit_prob: p_max must be > 0");
  }
  return p_max / (1.0 + std::exp(-(degree - mean_degree)));
}

namespace {

bool relay_is_secure(const netmodel::NetworkGraph& graph, int node_id) {
  return graph.degree(node_id, netmodel::AdjacencyKind::Detection) >= 1;
}

enum class RelayRule { DegreeWeighted, Uniform };

Route walk_route(const netmodel::NetworkGraph& graph,
                 const BeaconState& beacon, int source_id,
                 statmath::Probability p_max, RelayRule rule,
                 rng::RandomStream& stream) {
  const int source_hop = beacon.hop(graph, source_id);
  if (source_hop == kUnreached) {
    throw std::invalid_argument("route: source " + std::to_string(source_id) +
                                " is not reachable from the base station");
  }

  Route route;
  route.hops.reserve(source_hop + 1);
  int current = source_id;
  while (current != beacon.bs_id) {
    route.hops.push_back(current);
    route.secure.push_back(relay_is_secure(graph, current));
    const int deg = graph.degree(current, netmodel::AdjacencyKind::Comm);
    route.transmit_prob.push_back(
        rule == RelayRule::DegreeWeighted
            ? dbr_transmit_prob(deg, graph.mean_degree(), p_max)
            : static_cast<double>(p_max));

    const auto& cands = beacon.candidate_set(graph, current);
    if (cands.empty()) {
      throw std::logic_error("route: reached node without candidates");
    }
    if (rule == RelayRule::DegreeWeighted) {
      current = dbr_select_relay(cands, stream);
    } else {
      const auto idx = std::min(
          static_cast<std::size_t>(stream.uniform01() * cands.size()),
          cands.size() - 1);
      current = cands[idx].id;
    }
  }
  route.hops.push_back(beacon.bs_id);
  return route;
}

}  // namespace

Route dbr_route(const netmodel::NetworkGraph& graph, const BeaconState& beacon,
                int source_id, statmath::Probability p_max,
                rng::RandomStream& stream) {
  return walk_route(graph, beacon, source_id, p_max,
                    RelayRule::DegreeWeighted, stream);
}

Route gbr_route(const netmodel::NetworkGraph& graph, const BeaconState& beacon,
                int source_id, statmath::Probability p_max,
                rng::RandomStream& stream) {
  return walk_route(graph, beacon, source_id, p_max, RelayRule::Uniform,
                    stream);
}

double secure_relay_ratio(const Route& route,
                          const netmodel::NetworkGraph& graph) {
  if (route.hops.empty()) {
    throw std::invalid_argument("secure_relay_ratio: empty route");
  }
  const std::size_t relays = route.hops.size() - 1;
  if (relays == 0) return 1.0;
  std::size_t secure = 0;
  for (std::size_t i = 0; i < relays; ++i) {
    if (relay_is_secure(graph, route.hops[i])) ++secure;
  }
  return static_cast<double>(secure) / static_cast<double>(relays);
}

}  // namespace covertsim::routing
