#ifndef COVERTSIM_WARDEN_HPP
#define COVERTSIM_WARDEN_HPP

#include <span>
#include <vector>

#include "covertsim/channel.hpp"
#include "covertsim/statmath.hpp"

namespace covertsim::warden {

// The warden's measurement plan: 2t sampling locations spaced `spacing`
// meters apart (location 1 is nearest Alice, d_i = i * spacing), m
// radiometer samples per location.
//
// By default Alice's on/off state is drawn once per location (one
// transmission slot per location). `per_sample_bernoulli` redraws it for
// every sample instead; `block_fading` holds the Rayleigh gain fixed
// within a location. Both are off by default.
struct WardenWalk {
  int t = 1;
  int m = 1;
  double spacing = 1.0;
  bool per_sample_bernoulli = false;
  bool block_fading = false;

  void validate() const;
  int location_count() const { return 2 * t; }
  // 1-based location index; d_i = i * spacing.
  double distance(int location_index) const;
};

// The 2t radiometer values T(y_1..y_2t), ordered by location index
// (index 1 nearest Alice).
using SamplingVector = std::vector<double>;

// Radiometer reduction: mean of squared samples.
double sampling_value(std::span<const double> samples);

// Runs the full walk: per location draw the transmission state, take m
// channel samples, reduce with sampling_value. Bit-reproducible for a
// fixed stream.
SamplingVector collect_walk(const channel::ChannelScenario& scenario,
                            const WardenWalk& walk,
                            statmath::Probability transmit_prob,
                            rng::RandomStream& stream);

}  // namespace covertsim::warden

#endif  // COVERTSIM_WARDEN_HPP
