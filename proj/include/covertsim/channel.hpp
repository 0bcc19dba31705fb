#ifndef COVERTSIM_CHANNEL_HPP
#define COVERTSIM_CHANNEL_HPP

#include "covertsim/rng.hpp"

namespace covertsim::channel {

enum class PathLossLaw {
  Unbounded,  // gain = d^-alpha, singular at d = 0
  Bounded     // gain = 1 / (1 + d^alpha)
};

enum class FadingModel {
  None,
  RayleighUnitMean  // power gain ~ Exp(1), drawn per sample
};

// Everything needed to draw one received sample: Alice's transmit power,
// the noise floor, and the large-scale propagation model. Powers are linear
// units; dB conversion happens at the configuration boundary.
struct ChannelScenario {
  double alice_power = 1.0;        // P0
  double noise_power = 1.0;        // sigma_0^2
  double path_loss_exponent = 3.0; // alpha, must exceed 2
  PathLossLaw law = PathLossLaw::Unbounded;
  FadingModel fading = FadingModel::None;

  void validate() const;
};

double db_to_linear(double db);
double linear_to_db(double linear);

// Large-scale path gain at the given distance in meters.
double path_gain(double distance, const ChannelScenario& scenario);

// Mean received signal power at a distance (excluding noise): P0 * gain.
double received_power(const ChannelScenario& scenario, double distance);

// One power fading gain; 1 without fading, Exp(1) for Rayleigh.
double draw_fading_gain(const ChannelScenario& scenario,
                        rng::RandomStream& stream);

// One received sample with an externally supplied fading gain (used for
// block fading, where the gain is held fixed across a batch of samples).
double willie_sample_with_gain(const ChannelScenario& scenario,
                               double distance, bool alice_on,
                               double fading_gain, rng::RandomStream& stream);

// One received sample y; N(0, sigma_0^2) when Alice is silent and
// N(0, h*P0*gain + sigma_0^2) when she transmits.
double willie_sample(const ChannelScenario& scenario, double distance,
                     bool alice_on, rng::RandomStream& stream);

}  // namespace covertsim::channel

#endif  // COVERTSIM_CHANNEL_HPP
