#ifndef COVERTSIM_DETECTOR_HPP
#define COVERTSIM_DETECTOR_HPP

#include <span>

#include "covertsim/statmath.hpp"

namespace covertsim::detector {

enum class ThresholdMode { ExactBinomial, CLTApprox };
enum class Decision { H0_NoTrend, H1_DownwardTrend };

struct CoxStuartOutcome {
  int statistic = 0;       // number of negative differences
  double threshold = 0.0;  // b(beta)
  double significance = 0.0;
  Decision decision = Decision::H0_NoTrend;
  ThresholdMode threshold_mode = ThresholdMode::ExactBinomial;
};

// Exact binomial quantile for small t, CLT approximation above its
// validity floor.
ThresholdMode default_threshold_mode(int t);

// Cox-Stuart trend test on a length-2t sampling vector. The statistic
// counts the strictly negative half-differences T[i] - T[t+i] (ties count
// as non-negative); the null is rejected when statistic < threshold, i.e.
// a downward trend is declared.
CoxStuartOutcome cox_stuart_test(std::span<const double> values,
                                 statmath::Probability beta,
                                 ThresholdMode mode);

// Upper bound on P{Delta_i < 0} from the F-ratio second moment:
// ((P_far + noise) / (P_near + noise))^2, clamped to 1.
double delta_negative_bound(double p_near, double p_far, double noise);

// Bound on the expected statistic when Alice transmits continuously under
// the warden's operating condition: t * (2 / (2^alpha + 1))^2.
double expected_statistic_bound(int t, double alpha);

struct LocationRequirement {
  int t;          // smallest t that guarantees detection with prob 1-beta
  int clt_floor;  // threshold approximation valid only above this
};

// Smallest integer t strictly greater than
// (Phi^-1(beta) / (1 - 8/(2^alpha+1)^2))^2. The CLT validity floor is
// reported alongside rather than silently applied.
LocationRequirement required_locations(statmath::Probability beta,
                                       double alpha);

}  // namespace covertsim::detector

#endif  // COVERTSIM_DETECTOR_HPP
