// Special functions for the radial (Delsarte) machinery: Bessel functions of
// the first kind and their first zeros, generalized Laguerre polynomials,
// ball volumes and the normalized Bessel function Γ(ν+1)(2/z)^ν J_ν(z).

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

namespace pdw {

/// J_ν(x) for real order 0 <= ν <= 100 and x >= 0.
///
/// Three regimes: the power series when it is well conditioned (the sum of
/// absolute term values stays within 1e4 of the result), the Hankel
/// large-argument expansion for x >= max(25, ν²), and the Bessel-Schläfli
/// integral representation in between.
double bessel_j(double nu, double x);

/// Individual regimes, exposed for seam checks.
double bessel_j_series(double nu, double x, double* abs_sum = nullptr);
double bessel_j_hankel(double nu, double x);
double bessel_j_integral(double nu, double x);

/// Λ_ν(z) = Γ(ν+1) (2/z)^ν J_ν(z), with Λ_ν(0) = 1.  The Fourier transform of
/// the indicator of the ball of radius R in R^n, divided by its volume, is
/// Λ_{n/2}(2πR|ξ|).
double normalized_bessel(double nu, double z);

struct BesselZero {
  double value = 0.0;
  /// True when the value comes from the uniform large-order expansion
  /// (ν > 100); its absolute error is then below about 1e-6.
  bool asymptotic = false;
};

/// First positive zero j_{ν,1} of J_ν, bracketed and bisected to 1e-12.
BesselZero bessel_first_zero(double nu);

/// Volume of the unit ball in R^n, π^{n/2}/Γ(n/2+1).
double unit_ball_volume(int n);

/// log Γ(x) for x > 0.
double log_gamma(double x);

/// L_k^{(α)}(z) by the three-term recurrence.
template <typename Scalar>
Scalar laguerre(int k, Scalar alpha, Scalar z) {
  if (k < 0) throw std::invalid_argument("laguerre: degree must be >= 0");
  Scalar prev = 1;
  if (k == 0) return prev;
  Scalar cur = 1 + alpha - z;
  for (int j = 1; j < k; ++j) {
    const Scalar next = ((2 * j + 1 + alpha - z) * cur - (j + alpha) * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// (L_0^{(α)}(z), ..., L_K^{(α)}(z)).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> laguerre_all(int max_degree, Scalar alpha, Scalar z) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(max_degree + 1);
  out(0) = 1;
  if (max_degree >= 1) out(1) = 1 + alpha - z;
  for (int j = 1; j < max_degree; ++j) {
    out(j + 1) = ((2 * j + 1 + alpha - z) * out(j) - (j + alpha) * out(j - 1)) / (j + 1);
  }
  return out;
}

}  // namespace pdw
