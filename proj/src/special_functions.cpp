#include "pdw/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pdw/quadrature.hpp"

namespace pdw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesConditionLimit = 1e4;

void check_bessel_args(double nu, double x) {
  if (!(nu >= 0.0)) throw std::invalid_argument("bessel_j: order must be >= 0");
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_j: argument must be >= 0");
}

// Σ_k t_k with t_0 = 1 and t_{k+1} = t_k (-q) / ((k+1)(k+ν+1)), q = x²/4.
double normalized_series(double nu, double q, double* abs_sum) {
  double term = 1.0, sum = 1.0, mag = 1.0;
  for (int k = 0; k < 500; ++k) {
    term *= -q / ((k + 1.0) * (k + nu + 1.0));
    sum += term;
    mag += std::abs(term);
    if (std::abs(term) < 1e-18 * std::abs(sum) && k + 1 > std::sqrt(q)) break;
  }
  if (abs_sum) *abs_sum = mag;
  return sum;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("unit_ball_volume: dimension must be >= 1");
  return std::exp(0.5 * n * std::log(kPi) - log_gamma(0.5 * n + 1.0));
}

double bessel_j_series(double nu, double x, double* abs_sum) {
  check_bessel_args(nu, x);
  if (x == 0.0) {
    if (abs_sum) *abs_sum = nu == 0.0 ? 1.0 : 0.0;
    return nu == 0.0 ? 1.0 : 0.0;
  }
  const double prefactor = std::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0));
  double mag = 0.0;
  const double sum = normalized_series(nu, 0.25 * x * x, &mag);
  if (abs_sum) *abs_sum = mag * prefactor;
  return prefactor * sum;
}

double bessel_j_hankel(double nu, double x) {
  check_bessel_args(nu, x);
  if (x <= 0.0) throw std::invalid_argument("bessel_j_hankel: argument must be positive");
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag == 0.0) break;  // terminating expansion (half-integer order)
    if (mag > last) break;  // asymptotic series started to diverge
    last = mag;
    // a_k / x^k enters P for even k and Q for odd k with alternating signs
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (mag < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_j_integral(double nu, double x) {
  check_bessel_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  auto oscillatory = [nu, x](double t) { return std::cos(nu * t - x * std::sin(t)); };
  const auto first = integrate_adaptive<double>(oscillatory, 0.0, kPi, 1e-14, 1e-16, 4000);
  double value = first.value / kPi;
  const double s = std::sin(nu * kPi);
  if (std::abs(s) > 1e-15) {
    auto decaying = [nu, x](double t) { return std::exp(-x * std::sinh(t) - nu * t); };
    double t_max = std::asinh(45.0 / x);
    if (nu > 0.0) t_max = std::min(t_max, 45.0 / nu);
    const auto second = integrate_adaptive<double>(decaying, 0.0, t_max, 1e-14, 1e-17, 4000);
    value -= s / kPi * second.value;
  }
  return value;
}

double bessel_j(double nu, double x) {
  check_bessel_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x >= std::max(25.0, nu * nu)) return bessel_j_hankel(nu, x);
  double mag = 0.0;
  const double series = bessel_j_series(nu, x, &mag);
  if (mag <= kSeriesConditionLimit * std::abs(series)) return series;
  return bessel_j_integral(nu, x);
}

double normalized_bessel(double nu, double z) {
  if (!(nu >= 0.0)) throw std::invalid_argument("normalized_bessel: order must be >= 0");
  z = std::abs(z);
  if (z == 0.0) return 1.0;
  double mag = 0.0;
  const double series = normalized_series(nu, 0.25 * z * z, &mag);
  if (mag <= kSeriesConditionLimit * std::abs(series)) return series;
  return std::exp(log_gamma(nu + 1.0) + nu * std::log(2.0 / z)) * bessel_j(nu, z);
}

BesselZero bessel_first_zero(double nu) {
  if (!(nu >= 0.0)) throw std::invalid_argument("bessel_first_zero: order must be >= 0");
  if (nu > 100.0) {
    const double c = std::cbrt(nu);
    const double value = nu + 1.8557571 * c + 1.033150 / c - 0.00397 / nu - 0.0908 / (c * c * nu) +
                         0.043 / (c * nu * nu);
    return {value, true};
  }
  double lo, hi;
  if (nu < 1.0) {
    lo = 2.0;
    hi = 4.0;
  } else {
    const double c = std::cbrt(nu);
    lo = nu;  // j_{ν,1} > ν
    hi = nu + 1.8557571 * c + 1.033150 / c + 1.0;
    for (int step = 0; bessel_j(nu, hi) >= 0.0; ++step) {
      if (step > 40) throw std::runtime_error("bessel_first_zero: bracket failure");
      hi += 0.25;
    }
  }
  if (!(bessel_j(nu, lo) > 0.0 && bessel_j(nu, hi) < 0.0)) {
    throw std::runtime_error("bessel_first_zero: bracket failure");
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (bessel_j(nu, mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return {0.5 * (lo + hi), false};
}

}  // namespace pdw
