#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdw/quadrature.hpp"
#include "pdw/special_functions.hpp"

using namespace pdw;
using doctest::Approx;

TEST_CASE("gauss-legendre is exact for polynomials of degree 2n-1") {
  for (int order : {1, 2, 5, 16}) {
    auto rule = gauss_legendre<double>(order);
    CHECK(rule.weights.sum() == Approx(2.0).epsilon(1e-14));
    for (int p = 0; p <= 2 * order - 1; ++p) {
      double q = 0;
      for (int i = 0; i < order; ++i) q += rule.weights(i) * std::pow(rule.nodes(i), p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(q == Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("adaptive kronrod integrates smooth and peaked functions") {
  auto r = integrate_adaptive<double>([](double x) { return std::exp(-x * x); }, -5.0, 5.0);
  CHECK(r.converged);
  CHECK(r.value == Approx(std::sqrt(std::numbers::pi) * std::erf(5.0)).epsilon(1e-12));
  auto s = integrate_adaptive<double>([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  CHECK(s.value == Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("bessel_j agrees with the standard library across regimes") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 4.5, 12.0, 50.0, 100.0}) {
    for (double x : {0.0, 1e-3, 0.5, 3.0, 10.0, 24.9, 25.1, 40.0, 90.0, 108.8, 150.0, 400.0}) {
      const double ref = std::cyl_bessel_j(nu, x);
      CAPTURE(nu);
      CAPTURE(x);
      CHECK(std::abs(bessel_j(nu, x) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("bessel_j is continuous across regime seams") {
  for (double nu : {0.0, 1.0, 3.5}) {
    const double a = bessel_j(nu, 25.0 - 1e-12), b = bessel_j(nu, 25.0 + 1e-12);
    CHECK(std::abs(a - b) < 1e-10);
  }
  CHECK(std::abs(bessel_j_series(1.0, 6.0) - bessel_j_integral(1.0, 6.0)) < 1e-10);
  CHECK(std::abs(bessel_j_hankel(0.5, 30.0) - bessel_j_integral(0.5, 30.0)) < 1e-10);
}

TEST_CASE("normalized bessel") {
  CHECK(normalized_bessel(1.5, 0.0) == 1.0);
  // Λ_{1/2}(z) = sin z / z
  for (double z : {0.1, 1.0, 7.0}) CHECK(normalized_bessel(0.5, z) == Approx(std::sin(z) / z).epsilon(1e-12));
}

TEST_CASE("first bessel zeros") {
  CHECK(bessel_first_zero(0.5).value == Approx(std::numbers::pi).epsilon(1e-11));
  CHECK(bessel_first_zero(1.0).value == Approx(3.831705970207512).epsilon(1e-11));
  CHECK(bessel_first_zero(1.5).value == Approx(4.493409457909064).epsilon(1e-11));
  CHECK(bessel_first_zero(100.0).value == Approx(108.83616589840977).epsilon(1e-10));
  CHECK_FALSE(bessel_first_zero(100.0).asymptotic);
  for (double nu : {0.0, 2.5, 7.0, 33.0}) CHECK(std::abs(std::cyl_bessel_j(nu, bessel_first_zero(nu).value)) < 1e-10);
}

TEST_CASE("ball volumes and laguerre") {
  CHECK(unit_ball_volume(1) == Approx(2.0));
  CHECK(unit_ball_volume(2) == Approx(std::numbers::pi));
  CHECK(unit_ball_volume(3) == Approx(4.0 * std::numbers::pi / 3.0));
  for (unsigned alpha : {0u, 1u, 3u})
    for (int k : {0, 1, 3, 10})
      for (double z : {0.0, 0.7, 5.0})
        CHECK(laguerre<double>(k, alpha, z) == Approx(std::assoc_laguerre(k, alpha, z)).epsilon(1e-11));
  // half-integer order from the explicit low-degree forms
  const double a = 0.5, z = 1.3;
  CHECK(laguerre<double>(1, a, z) == Approx(1 + a - z));
  CHECK(laguerre<double>(2, a, z) == Approx((z * z - 2 * (a + 2) * z + (a + 1) * (a + 2)) / 2));
  auto all = laguerre_all<double>(6, 0.0, 2.0);
  for (int k = 0; k <= 6; ++k) CHECK(all(k) == Approx(std::laguerre(k, 2.0)).epsilon(1e-12));
}
