#ifndef COVERTSIM_COUNTERMEASURE_HPP
#define COVERTSIM_COUNTERMEASURE_HPP

#include <cstdint>
#include <vector>

#include "covertsim/statmath.hpp"

namespace covertsim::countermeasure {

// Slotted i.i.d. Bernoulli transmission schedule.
struct TransmitSchedule {
  statmath::Probability transmit_prob;
  int slots = 1;

  void validate() const;
};

// Largest transmission probability that keeps the warden's trend test
// inconclusive at significance beta: 1 - sqrt(1 + Phi^-1(beta)/sqrt(t)).
// Requires t > (Phi^-1(beta))^2; throws otherwise, naming the minimal t.
statmath::Probability max_covert_probability(int t,
                                             statmath::Probability beta);

// Small-p approximation of the expected trend statistic:
// 0.5 * (1-p)^2 * t. Drops three mixture terms, so treat it as an
// approximation only; the exact form is delta_negative_prob_exact.
double expected_statistic_small_p(statmath::Probability p, int t);

// Exact P{Delta_i < 0} for one location pair under the slotted mixture:
// the four-term combination over Alice's on/off states at the two
// locations, each term an F(m,m) CDF evaluation.
double delta_negative_prob_exact(statmath::Probability p, int m,
                                 double p_near, double p_far, double noise);

// Draws the slot sequence (1 = transmit).
std::vector<std::uint8_t> realize_schedule(const TransmitSchedule& schedule,
                                           rng::RandomStream& stream);

}  // namespace covertsim::countermeasure

#endif  // COVERTSIM_COUNTERMEASURE_HPP
