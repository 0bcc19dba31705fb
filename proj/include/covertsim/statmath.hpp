#ifndef COVERTSIM_STATMATH_HPP
#define COVERTSIM_STATMATH_HPP

#include <stdexcept>
#include <string>

#include "covertsim/rng.hpp"

namespace covertsim::statmath {

// A probability value, validated to [0,1] on construction. Converts
// implicitly to double so it can be used directly in arithmetic.
class Probability {
 public:
  Probability(double value) : value_(value) {  // NOLINT: implicit by design
    if (!(value >= 0.0 && value <= 1.0)) {
      throw std::invalid_argument("Probability: value " +
                                  std::to_string(value) +
                                  " outside [0,1]");
    }
  }
  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_;
};

// The CLT threshold approximation is stated for t > 20; below that the
// exact binomial quantile should be preferred.
inline constexpr int kCltValidityFloor = 21;

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile, q strictly inside (0,1). Rational initializer
// (Acklam) refined by one Halley step on the erfc-based CDF; absolute error
// is well below 1e-8 everywhere. Antisymmetric by construction:
// normal_quantile(q) == -normal_quantile(1-q) up to the rounding of 1-q
// itself (exact for q in [0.25, 0.75], below 1e-12 for q down to ~1e-4;
// in the far tail the rounding of the complement dominates any method).
double normal_quantile(double q);

// Largest integer b such that P{B <= b-1} <= beta for B ~ Bin(t, 1/2), i.e.
// rejecting when the statistic is < b keeps the type-I error at or below
// beta. Returns 0 when even b=1 would exceed beta (never reject).
int binomial_reject_threshold(int t, Probability beta);

// 0.5 * (t + sqrt(t) * Phi^-1(beta)). Valid as a binomial-quantile
// approximation only for t > 20 (kCltValidityFloor); callers are expected
// to check, the function does not block small t.
double clt_reject_threshold(int t, Probability beta);

// CDF of the F(m,m) distribution at x >= 0, computed through the
// regularized incomplete beta function.
double f_cdf(int m, double x);

// Regularized incomplete beta function I_x(a,b), continued-fraction
// evaluation (modified Lentz).
double incomplete_beta(double a, double b, double x);

// One chi-square(m) draw as the sum of m squared standard normals.
double chi_square_sample(int m, rng::RandomStream& stream);

}  // namespace covertsim::statmath

#endif  // COVERTSIM_STATMATH_HPP
