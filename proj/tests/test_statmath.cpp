#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "covertsim/statmath.hpp"
#include "doctest.h"

using namespace covertsim;
using statmath::normal_cdf;
using statmath::normal_quantile;

namespace {

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Test-side oracle: erf via the cancellation-free scaled power series
// (all terms positive), independent of the library's erfc-based path.
double erf_series(double x) {
  if (x < 0.0) return -erf_series(-x);
  double term = x;
  double sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= 2.0 * x * x / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return 2.0 / std::sqrt(M_PI) * std::exp(-x * x) * sum;
}

double phi_series(double x) {
  return 0.5 * (1.0 + erf_series(x / std::sqrt(2.0)));
}

// Bisection of the series CDF: the independent route to quantile values.
double quantile_by_bisection(double q) {
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phi_series(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Exact binomial CDF for Bin(t, 1/2) via Pascal's triangle; exact in
// double for the t values used here.
double binomial_cdf_exact(int t, int k) {
  if (k < 0) return 0.0;
  std::vector<double> coeff(t + 1, 0.0);
  coeff[0] = 1.0;
  for (int row = 1; row <= t; ++row) {
    for (int j = row; j >= 1; --j) coeff[j] += coeff[j - 1];
  }
  double sum = 0.0;
  for (int j = 0; j <= std::min(k, t); ++j) sum += coeff[j];
  return sum * std::pow(0.5, t);
}

int reject_threshold_oracle(int t, double beta) {
  int b = 0;
  for (int k = 1; k <= t; ++k) {
    if (binomial_cdf_exact(t, k - 1) <= beta) b = k;
  }
  return b;
}

}  // namespace

TEST_CASE("normal_quantile: reference values") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(near(normal_quantile(0.05), -1.6448536, 1e-6));
  CHECK(near(normal_quantile(0.975), 1.9599640, 1e-6));
  // independent bisection on the series CDF
  CHECK(near(normal_quantile(0.05), quantile_by_bisection(0.05), 1e-8));
  CHECK(near(normal_quantile(0.975), quantile_by_bisection(0.975), 1e-8));
  CHECK(near(normal_quantile(0.01), quantile_by_bisection(0.01), 1e-8));
}

TEST_CASE("normal_quantile: domain errors") {
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(-0.3), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.7), std::invalid_argument);
}

TEST_CASE("normal_quantile: antisymmetry") {
  for (double q : {1e-4, 0.01, 0.05, 0.2, 0.35, 0.49, 0.5}) {
    CHECK(std::fabs(normal_quantile(q) + normal_quantile(1.0 - q)) <= 1e-12);
  }
  // In the far tail the rounding of 1-q itself costs ~1e-9 after scaling
  // by the quantile slope; no tighter bound is attainable.
  CHECK(std::fabs(normal_quantile(1e-8) + normal_quantile(1.0 - 1e-8)) <=
        1e-7);
}

TEST_CASE("normal_quantile inverts the CDF on (-6,6)") {
  for (double x = -6.0; x <= 6.0; x += 0.125) {
    const double q = phi_series(x);
    CHECK(near(normal_quantile(q), x, 1e-7));
  }
}

TEST_CASE("normal_cdf matches the series oracle") {
  for (double x = -8.0; x <= 8.0; x += 0.25) {
    CHECK(near(normal_cdf(x), phi_series(x), 1e-12));
  }
}

TEST_CASE("binomial_reject_threshold: worked examples") {
  // CDF(1) = 11/1024 <= 0.05 < CDF(2) = 56/1024
  CHECK(statmath::binomial_reject_threshold(10, 0.05) == 2);
  // CDF(1) = 5/16 <= 0.5 < CDF(2) = 11/16
  CHECK(statmath::binomial_reject_threshold(4, 0.5) == 2);
  // CDF(0) = 1/8 > 0.05: never reject
  CHECK(statmath::binomial_reject_threshold(3, 0.05) == 0);
  CHECK_THROWS_AS(statmath::binomial_reject_threshold(0, 0.05),
                  std::invalid_argument);
}

TEST_CASE("binomial_reject_threshold agrees with the exact oracle") {
  for (int t = 1; t <= 40; ++t) {
    for (double beta : {0.001, 0.01, 0.05, 0.1, 0.3, 0.5, 0.9}) {
      CHECK(statmath::binomial_reject_threshold(t, beta) ==
            reject_threshold_oracle(t, beta));
    }
  }
}

TEST_CASE("binomial_reject_threshold is monotone in beta and t") {
  const std::vector<double> betas{0.001, 0.005, 0.01, 0.05, 0.1, 0.2, 0.4,
                                  0.6, 0.8};
  for (int t = 1; t <= 40; ++t) {
    int prev = -1;
    for (double beta : betas) {
      const int b = statmath::binomial_reject_threshold(t, beta);
      CHECK(b >= prev);
      prev = b;
    }
  }
  for (double beta : betas) {
    int prev = -1;
    for (int t = 1; t <= 40; ++t) {
      const int b = statmath::binomial_reject_threshold(t, beta);
      CHECK(b >= prev);
      prev = b;
    }
  }
}

TEST_CASE("clt_reject_threshold: worked examples") {
  CHECK(statmath::clt_reject_threshold(100, 0.5) == doctest::Approx(50.0));
  CHECK(near(statmath::clt_reject_threshold(100, 0.05), 41.7757, 1e-3));
  CHECK(near(statmath::clt_reject_threshold(25, 0.05), 8.3879, 1e-3));
}

TEST_CASE("f_cdf: reference values") {
  CHECK(near(statmath::f_cdf(50, 1.0), 0.5, 1e-8));
  // F(2,2) has the closed form x/(1+x)
  CHECK(near(statmath::f_cdf(2, 3.0), 0.75, 1e-10));
  for (double x : {0.1, 0.5, 1.0, 2.0, 7.0}) {
    CHECK(near(statmath::f_cdf(2, x), x / (1.0 + x), 1e-10));
  }
  CHECK(statmath::f_cdf(7, 0.0) == 0.0);
  CHECK(statmath::f_cdf(123, 0.0) == 0.0);
  CHECK_THROWS_AS(statmath::f_cdf(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(statmath::f_cdf(3, -0.5), std::invalid_argument);
}

TEST_CASE("f_cdf: monotone in x and symmetric under inversion") {
  for (int m : {1, 2, 5, 20, 100}) {
    double prev = -1.0;
    for (double x = 0.0; x <= 5.0; x += 0.05) {
      const double c = statmath::f_cdf(m, x);
      CHECK(c >= prev);
      prev = c;
    }
    for (double x : {0.05, 0.3, 0.9, 1.0, 1.7, 4.0, 25.0}) {
      CHECK(near(statmath::f_cdf(m, x) + statmath::f_cdf(m, 1.0 / x), 1.0,
                 1e-8));
    }
  }
}

TEST_CASE("chi-square ratio matches the F(m,m) mean") {
  // E[F(m,m)] = m/(m-2) for m > 4
  for (int m : {6, 10}) {
    rng::RandomStream stream(2024, m);
    const int draws = 1000000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
      sum += statmath::chi_square_sample(m, stream) /
             statmath::chi_square_sample(m, stream);
    }
    const double mean = sum / draws;
    const double expected = static_cast<double>(m) / (m - 2);
    CHECK(std::fabs(mean - expected) / expected < 0.01);
  }
}

TEST_CASE("chi_square_sample moments") {
  rng::RandomStream stream(7, 0);
  const int draws = 200000;
  const int m = 8;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double v = statmath::chi_square_sample(m, stream);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  CHECK(mean == doctest::Approx(m).epsilon(0.02));
  CHECK(var == doctest::Approx(2.0 * m).epsilon(0.05));
}

TEST_CASE("Probability validates its range") {
  CHECK_THROWS_AS(statmath::Probability(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(statmath::Probability(1.01), std::invalid_argument);
  CHECK(statmath::Probability(0.0).value() == 0.0);
  CHECK(statmath::Probability(1.0).value() == 1.0);
}
