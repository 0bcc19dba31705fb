#include "covertsim/warden.hpp"

#include <cmath>
#include <stdexcept>

namespace covertsim::warden {

void WardenWalk::validate() const {
  if (t < 1) throw std::invalid_argument("WardenWalk: t must be >= 1");
  if (m < 1) throw std::invalid_argument("WardenWalk: m must be >= 1");
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("WardenWalk: spacing must be > 0");
  }
}

double WardenWalk::distance(int location_index) const {
  if (location_index < 1 || location_index > location_count()) {
    throw std::invalid_argument("WardenWalk: location index out of range");
  }
  return location_index * spacing;
}

double sampling_value(std::span<const double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("sampling_value: need at least one sample");
  }
  double acc = 0.0;
  for (double y : samples) acc += y * y;
  return acc / static_cast<double>(samples.size());
}

SamplingVector collect_walk(const channel::ChannelScenario& scenario,
                            const WardenWalk& walk,
                            statmath::Probability transmit_prob,
                            rng::RandomStream& stream) {
  scenario.validate();
  walk.validate();

  const int locations = walk.location_count();
  const bool fading =
      scenario.fading == channel::FadingModel::RayleighUnitMean;
  SamplingVector values(locations);

  for (int i = 1; i <= locations; ++i) {
    const double gain = channel::path_gain(walk.distance(i), scenario);
    const double signal = scenario.alice_power * gain;

    bool slot_on = false;
    if (!walk.per_sample_bernoulli) slot_on = stream.bernoulli(transmit_prob);
    double block_gain = 1.0;
    if (fading && walk.block_fading) block_gain = stream.exponential();

    double acc = 0.0;
    if (!fading && !walk.per_sample_bernoulli) {
      // No per-sample randomness in the variance: hoist it.
      const double sigma =
          std::sqrt(scenario.noise_power + (slot_on ? signal : 0.0));
      for (int k = 0; k < walk.m; ++k) {
        const double y = sigma * stream.normal();
        acc += y * y;
      }
    } else {
      for (int k = 0; k < walk.m; ++k) {
        const bool on = walk.per_sample_bernoulli
                            ? stream.bernoulli(transmit_prob)
                            : slot_on;
        double variance = scenario.noise_power;
        if (on) {
          const double h = fading ? (walk.block_fading ? block_gain
                                                       : stream.exponential())
                                  : 1.0;
          variance += h * signal;
        }
        const double y = std::sqrt(variance) * stream.normal();
        acc += y * y;
      }
    }
    values[i - 1] = acc / static_cast<double>(walk.m);
  }
  return values;
}

}  // namespace covertsim::warden
