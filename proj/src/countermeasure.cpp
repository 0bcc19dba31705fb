#include "covertsim/countermeasure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace covertsim::countermeasure {

void TransmitSchedule::validate() const {
  if (slots < 1) {
    throw std::invalid_argument("TransmitSchedule: slots must be >= 1");
  }
}

statmath::Probability max_covert_probability(int t,
                                             statmath::Probability beta) {
  if (t < 1) {
    throw std::invalid_argument("max_covert_probability: t must be >= 1");
  }
  if (!(beta > 0.0 && beta < 0.5)) {
    throw std::invalid_argument(
        "max_covert_probability: beta must lie in (0, 0.5)");
  }
  const double z = statmath::normal_quantile(beta);  // negative
  const double z_sq = z * z;
  if (!(t > z_sq)) {
    throw std::invalid_argument(
        "max_covert_probability: requires t > (Phi^-1(beta))^2 = " +
        std::to_string(z_sq) + "; minimal valid t is " +
        std::to_string(static_cast<int>(std::floor(z_sq)) + 1));
  }
  return 1.0 - std::sqrt(1.0 + z / std::sqrt(static_cast<double>(t)));
}

double expected_statistic_small_p(statmath::Probability p, int t) {
  if (t < 0) {
    throw std::invalid_argument("expected_statistic_small_p: t must be >= 0");
  }
  return 0.5 * (1.0 - p) * (1.0 - p) * t;
}

double delta_negative_prob_exact(statmath::Probability p, int m,
                                 double p_near, double p_far, double noise) {
  if (m < 1) {
    throw std::invalid_argument("delta_negative_prob_exact: m must be >= 1");
  }
  if (!(noise > 0.0)) {
    throw std::invalid_argument("delta_negative_prob_exact: noise must be > 0");
  }
  if (!(p_near >= 0.0) || !(p_far >= 0.0)) {
    throw std::invalid_argument(
        "delta_negative_prob_exact: powers must be non-negative");
  }
  const double q = p;
  // Mixture over (X_near, X_far): the ratio of location variances decides
  // how often the near radiometer value falls below the far one.
  const double both_silent = statmath::f_cdf(m, 1.0);
  const double far_on = statmath::f_cdf(m, (p_far + noise) / noise);
  const double near_on = statmath::f_cdf(m, noise / (p_near + noise));
  const double both_on =
      statmath::f_cdf(m, (p_far + noise) / (p_near + noise));
  return (1.0 - q) * (1.0 - q) * both_silent +
         q * (1.0 - q) * (far_on + near_on) + q * q * both_on;
}

std::vector<std::uint8_t> realize_schedule(const TransmitSchedule& schedule,
                                           rng::RandomStream& stream) {
  schedule.validate();
  std::vector<std::uint8_t> slots(schedule.slots);
  for (auto& s : slots) {
    s = stream.bernoulli(schedule.transmit_prob) ? 1 : 0;
  }
  return slots;
}

}  // namespace covertsim::countermeasure
