#include "covertsim/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace covertsim::detector {

ThresholdMode default_threshold_mode(int t) {
  return t < statmath::kCltValidityFloor ? ThresholdMode::ExactBinomial
                                         : ThresholdMode::CLTApprox;
}

CoxStuartOutcome cox_stuart_test(std::span<const double> values,
                                 statmath::Probability beta,
                                 ThresholdMode mode) {
  if (values.empty() || values.size() % 2 != 0) {
    throw std::invalid_argument(
        "cox_stuart_test: sampling vector length must be even and positive");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument(
        "cox_stuart_test: beta must lie strictly inside (0,1)");
  }
  const int t = static_cast<int>(values.size() / 2);

  int statistic = 0;
  for (int i = 0; i < t; ++i) {
    if (values[i] - values[t + i] < 0.0) ++statistic;
  }

  CoxStuartOutcome out;
  out.statistic = statistic;
  out.significance = beta;
  out.threshold_mode = mode;
  out.threshold = mode == ThresholdMode::ExactBinomial
                      ? static_cast<double>(
                            statmath::binomial_reject_threshold(t, beta))
                      : statmath::clt_reject_threshold(t, beta);
  out.decision = statistic < out.threshold ? Decision::H1_DownwardTrend
                                           : Decision::H0_NoTrend;
  return out;
}

double delta_negative_bound(double p_near, double p_far, double noise) {
  if (!(noise > 0.0)) {
    throw std::invalid_argument("delta_negative_bound: noise must be > 0");
  }
  if (!(p_near >= 0.0) || !(p_far >= 0.0)) {
    throw std::invalid_argument(
        "delta_negative_bound: powers must be non-negative");
  }
  const double ratio = (p_far + noise) / (p_near + noise);
  return std::min(1.0, ratio * ratio);
}

double expected_statistic_bound(int t, double alpha) {
  if (t < 0) {
    throw std::invalid_argument("expected_statistic_bound: t must be >= 0");
  }
  if (!(alpha > 2.0)) {
    throw std::invalid_argument(
        "expected_statistic_bound: alpha must be > 2");
  }
  // t * (2/(2^alpha+1))^2, written so integer alpha stays exact.
  const double s = std::exp2(alpha) + 1.0;
  return 4.0 * t / (s * s);
}

LocationRequirement required_locations(statmath::Probability beta,
                                       double alpha) {
  if (!(beta > 0.0 && beta < 0.5)) {
    throw std::invalid_argument(
        "required_locations: beta must lie in (0, 0.5) for the one-sided "
        "test, got " +
        std::to_string(beta.value()));
  }
  if (!(alpha > 2.0)) {
    throw std::invalid_argument("required_locations: alpha must be > 2");
  }
  const double s = std::exp2(alpha) + 1.0;
  const double denom = 1.0 - 8.0 / (s * s);  // positive for alpha > 2
  const double root = statmath::normal_quantile(beta) / denom;
  const double raw = root * root;
  return {static_cast<int>(std::floor(raw)) + 1, statmath::kCltValidityFloor};
}

}  // namespace covertsim::detector
