#include "covertsim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace covertsim::channel {

void ChannelScenario::validate() const {
  if (!(alice_power > 0.0)) {
    throw std::invalid_argument("ChannelScenario: alice_power must be > 0");
  }
  if (!(noise_power > 0.0)) {
    throw std::invalid_argument("ChannelScenario: noise_power must be > 0");
  }
  if (!(path_loss_exponent > 2.0)) {
    throw std::invalid_argument(
        "ChannelScenario: path_loss_exponent must be > 2, got " +
        std::to_string(path_loss_exponent));
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double path_gain(double distance, const ChannelScenario& scenario) {
  switch (scenario.law) {
    case PathLossLaw::Unbounded:
      if (!(distance > 0.0)) {
        throw std::invalid_argument(
            "path_gain: the unbounded law is singular at distance 0");
      }
      return std::pow(distance, -scenario.path_loss_exponent);
    case PathLossLaw::Bounded:
      if (!(distance >= 0.0)) {
        throw std::invalid_argument("path_gain: distance must be >= 0");
      }
      return 1.0 / (1.0 + std::pow(distance, scenario.path_loss_exponent));
  }
  throw std::logic_error("path_gain: unknown path loss law");
}

double received_power(const ChannelScenario& scenario, double distance) {
  return scenario.alice_power * path_gain(distance, scenario);
}

double draw_fading_gain(const ChannelScenario& scenario,
                        rng::RandomStream& stream) {
  return scenario.fading == FadingModel::RayleighUnitMean
             ? stream.exponential()
             : 1.0;
}

double willie_sample_with_gain(const ChannelScenario& scenario,
                               double distance, bool alice_on,
                               double fading_gain, rng::RandomStream& stream) {
  double variance = scenario.noise_power;
  if (alice_on) {
    variance += fading_gain * (scenario.alice_power *
                               path_gain(distance, scenario));
  }
  return std::sqrt(variance) * stream.normal();
}

double willie_sample(const ChannelScenario& scenario, double distance,
                     bool alice_on, rng::RandomStream& stream) {
  // The fading gain is only drawn when it matters, i.e. when Alice is on.
  const double h = alice_on ? draw_fading_gain(scenario, stream) : 1.0;
  return willie_sample_with_gain(scenario, distance, alice_on, h, stream);
}

}  // namespace covertsim::channel
