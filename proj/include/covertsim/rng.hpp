#ifndef COVERTSIM_RNG_HPP
#define COVERTSIM_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace covertsim::rng {

// SplitMix64 (Steele, Lea, Flood). Used for seeding and substream derivation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna). State is filled from SplitMix64 so a
// single 64-bit seed suffices.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : state_) w = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_;
};

// One seedable stream of all the draws the simulator needs.
//
// Substream rule: stream k of master seed s is seeded with
// s + (k + 1) * 0x9E3779B97F4A7C15 (the SplitMix64 increment), so every
// (seed, index) pair owns an independent deterministic sequence and the
// execution order of streams cannot change any stream's draws.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : engine_(master_seed + (stream_index + 1) * 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next_u64() { return engine_.next(); }

  // Uniform on the open interval (0,1); never returns an exact 0 or 1.
  double uniform01() {
    return (static_cast<double>(engine_.next() >> 11) + 0.5) *
           (1.0 / 9007199254740992.0);  // 2^-53
  }

  // Standard normal via the Marsaglia polar method; pairs are cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Unit-mean exponential.
  double exponential() { return -std::log(uniform01()); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Poisson by chunked Knuth multiplication; exact for any finite mean.
  int poisson(double mean) {
    if (!(mean >= 0.0)) {
      throw std::invalid_argument("poisson: mean must be non-negative");
    }
    int total = 0;
    while (mean > 16.0) {
      total += poisson_knuth(16.0);
      mean -= 16.0;
    }
    return total + poisson_knuth(mean);
  }

 private:
  int poisson_knuth(double mu) {
    if (mu <= 0.0) return 0;
    const double limit = std::exp(-mu);
    int k = 0;
    double prod = uniform01();
    while (prod > limit) {
      ++k;
      prod *= uniform01();
    }
    return k;
  }

  Xoshiro256StarStar engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace covertsim::rng

#endif  // COVERTSIM_RNG_HPP
