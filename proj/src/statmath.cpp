#include "covertsim/statmath.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace covertsim::statmath {

namespace {

// Acklam's rational approximation of the inverse normal CDF, accurate to
// ~1.15e-9 on its own; one Halley step below pushes it to machine level.
double acklam_initial(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Handles q in (0, 0.5]; the public entry mirrors the upper half.
double quantile_lower_half(double q) {
  double x = acklam_initial(q);
  // One Halley refinement against Phi computed from erfc (stable in the
  // lower tail).
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - q;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cont_frac(double a, double b, double x) {
  const int max_iter = 400;
  const double eps = 3.0e-16;
  const double fpmin = 1.0e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument(
        "normal_quantile: q must lie strictly inside (0,1), got " +
        std::to_string(q));
  }
  if (q == 0.5) return 0.0;
  if (q > 0.5) return -quantile_lower_half(1.0 - q);
  return quantile_lower_half(q);
}

int binomial_reject_threshold(int t, Probability beta) {
  if (t < 1) {
    throw std::invalid_argument("binomial_reject_threshold: t must be >= 1");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument(
        "binomial_reject_threshold: beta must lie strictly inside (0,1)");
  }
  int threshold = 0;
  if (t <= 52) {
    // Pascal-triangle summation: every coefficient and partial sum stays
    // below 2^53, so the CDF values k/2^t are exact and dyadic ties
    // (e.g. beta = 0.5) resolve correctly.
    std::vector<double> coeff(t + 1, 0.0);
    coeff[0] = 1.0;
    for (int row = 1; row <= t; ++row) {
      for (int j = row; j >= 1; --j) coeff[j] += coeff[j - 1];
    }
    const double scale = std::ldexp(1.0, -t);
    double sum = 0.0;
    for (int k = 0; k < t; ++k) {
      sum += coeff[k];
      if (sum * scale <= beta) {
        threshold = k + 1;
      } else {
        break;
      }
    }
    return threshold;
  }
  // Direct summation in log space for large t.
  const double lg_t1 = std::lgamma(t + 1.0);
  const double log_half_pow = -t * std::log(2.0);
  double cdf = 0.0;
  for (int k = 0; k < t; ++k) {
    cdf += std::exp(lg_t1 - std::lgamma(k + 1.0) - std::lgamma(t - k + 1.0) +
                    log_half_pow);
    if (cdf <= beta) {
      threshold = k + 1;
    } else {
      break;
    }
  }
  return threshold;
}

double clt_reject_threshold(int t, Probability beta) {
  if (t < 1) {
    throw std::invalid_argument("clt_reject_threshold: t must be >= 1");
  }
  return 0.5 * (t + std::sqrt(static_cast<double>(t)) *
                        normal_quantile(beta));
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete_beta: a and b must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("incomplete_beta: x must lie in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cont_frac(a, b, x) / a;
  }
  return 1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b;
}

double f_cdf(int m, double x) {
  if (m < 1) {
    throw std::invalid_argument("f_cdf: m must be >= 1");
  }
  if (!(x >= 0.0)) {
    throw std::invalid_argument("f_cdf: x must be non-negative");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  // F(m,m) at x maps to I_y(m/2, m/2) with y = x/(1+x).
  return incomplete_beta(0.5 * m, 0.5 * m, x / (1.0 + x));
}

double chi_square_sample(int m, rng::RandomStream& stream) {
  if (m < 1) {
    throw std::invalid_argument("chi_square_sample: m must be >= 1");
  }
  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    const double z = stream.normal();
    acc += z * z;
  }
  return acc;
}

}  // namespace covertsim::statmath
