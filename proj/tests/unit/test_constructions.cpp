#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pdw/constructions.hpp"
#include "pdw/harmonic.hpp"
#include "pdw/quadrature.hpp"

using namespace pdw;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Area of the intersection of two disks of radius R at distance d, over πR².
double disk_overlap(double R, double d) {
  if (d >= 2 * R) return 0.0;
  return (2 * R * R * std::acos(d / (2 * R)) - d / 2 * std::sqrt(4 * R * R - d * d)) / (kPi * R * R);
}

// Volume of the intersection of two balls of radius R at distance d, over (4/3)πR³.
double ball_overlap(double R, double d) {
  if (d >= 2 * R) return 0.0;
  return kPi * (4 * R + d) * std::pow(2 * R - d, 2) / 12.0 / (4.0 / 3.0 * kPi * R * R * R);
}

}  // namespace

TEST_CASE("convolution root of an interval") {
  const double delta = 0.3;
  ConvRoot h(Domain::cube(1, delta));
  CHECK(h.kind() == ConvRootKind::interval_triangle);
  CHECK(h({0.0}) == Approx(1.0));
  CHECK(h({delta / 2}) == Approx(0.5));
  CHECK(h({delta}) == Approx(0.0));
  CHECK(h.fourier({0.0}) == Approx(delta));
  // cosine transform of the triangle by quadrature
  for (double xi : {0.7, 2.3, 5.1}) {
    auto integrand = [&](double x) { return 2 * h({x}) * std::cos(2 * kPi * xi * x); };
    const double direct = integrate_adaptive(integrand, 0.0, delta, 1e-13).value;
    CHECK(h.fourier({xi}) == Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("convolution roots of balls") {
  ConvRoot disk(Domain::ball(2, 0.4));
  CHECK(disk.fourier({0.0, 0.0}) == Approx(kPi * 0.2 * 0.2));
  CHECK(disk.normalization() == Approx(kPi * 0.04));
  for (double r : {0.0, 0.05, 0.17, 0.3, 0.39}) CHECK(disk.radial(r) == Approx(disk_overlap(0.2, r)).epsilon(1e-10));
  ConvRoot ball(Domain::ball(3, 0.5));
  for (double r : {0.0, 0.1, 0.25, 0.45}) CHECK(ball.radial(r) == Approx(ball_overlap(0.25, r)).epsilon(1e-10));
  CHECK(ball({0.1, 0.2, 0.0}) == Approx(ball_overlap(0.25, std::hypot(0.1, 0.2))).epsilon(1e-10));
  // cube products factor
  ConvRoot square(Domain::cube(2, 0.2));
  CHECK(square({0.1, 0.05}) == Approx(0.5 * 0.75));
  CHECK_THROWS_AS(ConvRoot(Domain::product({Domain::cube(1, 0.1), Domain::ball(2, 0.1)})), std::invalid_argument);
}

TEST_CASE("mollifier transform") {
  CHECK(mollifier_hat(1, 0.0) == Approx(1.0));
  CHECK(mollifier_hat(3, 0.0) == Approx(1.0));
  for (double x : {0.3, 1.0, 2.7}) {
    // n = 1: Λ_{1/2}(z) = sin z / z
    CHECK(mollifier_hat(1, x) == Approx(std::pow(std::sin(kPi * x) / (kPi * x), 2)).epsilon(1e-12));
    // n = 2: Λ_1(z) = 2 J_1(z) / z
    CHECK(mollifier_hat(2, x) == Approx(std::pow(2 * std::cyl_bessel_j(1.0, kPi * x) / (kPi * x), 2)).epsilon(1e-10));
  }
}

TEST_CASE("periodized mollifier") {
  for (int n : {1, 2}) {
    auto t = periodize(0.1, n, 40);
    const std::vector<int> zero(n, 0);
    CHECK(t.poly[zero].real() == Approx(1.0));
    for (auto c : t.poly.coefficients()) CHECK(c.real() >= 0.0);
    CHECK(t.poly.positive_definite());
  }
  // outside the support the truncated sum is bounded by the discarded mass
  auto t = periodize(0.1, 1, 200);
  for (double x : {0.1, 0.2, 0.35, 0.5}) CHECK(std::abs(evaluate(t.poly, {x}).real()) <= t.tail_l1);
  CHECK_THROWS_AS(periodize(0.1, 1, 10, 1e-12), std::invalid_argument);
}

TEST_CASE("lattice indicator equals the character sum") {
  for (int q = 2; q <= 5; ++q) {
    for (int a = -7; a <= 7; ++a) {
      const int one[1] = {a};
      CHECK(lattice_character_sum(q, one) == Approx(lattice_indicator(q, one) ? 1.0 : 0.0).epsilon(1e-12));
      for (int b = -7; b <= 7; ++b) {
        const int two[2] = {a, b};
        const double s = lattice_character_sum(q, two);
        CHECK(std::abs(s - (lattice_indicator(q, two) ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("lattice comb coefficients") {
  auto comb = lattice_comb(3, 1, 0.05, 60);
  CHECK(comb.poly()[{0}].real() == Approx(1.0));
  CHECK(std::abs(comb.poly()[{1}]) == 0.0);
  CHECK(std::abs(comb.poly()[{2}]) == 0.0);
  CHECK(comb.poly()[{3}].real() == Approx(mollifier_hat(1, 3 * 0.05)));
  CHECK_THROWS_AS(lattice_comb(3, 1, 0.2, 0), std::invalid_argument);
  CHECK(comb_default_cutoff(3, 1, 0.03) % 3 == 0);
  CHECK(comb_default_cutoff(3, 1, 0.03) >= 20.0 / 0.03);
}

TEST_CASE("lattice comb reproduces |D| q^n") {
  auto comb = lattice_comb(2, 2, 0.18);
  const double ratio = rayleigh_quotient(comb.poly(), Domain::cube(2, 0.2));
  CHECK(ratio == Approx(0.64).epsilon(1e-6));
  auto disk = lattice_comb(2, 2, 0.18);
  CHECK(rayleigh_quotient(disk.poly(), Domain::ball(2, 0.2)) == Approx(kPi * 0.04 * 4).epsilon(1e-6));
}

TEST_CASE("mollification") {
  auto one = TrigPolynomial::constant(1, 1.0);
  auto m = mollify(one, 0.1);
  CHECK(m.poly[{0}].real() == Approx(m.b));
  CHECK(m.b == Approx(1.0 / std::sqrt(mollifier_norm_sq(0.1, 1))).epsilon(1e-6));

  auto f = random_pd_poly(5, 1, 6, 1.0);
  const double norm = std::sqrt(norm_sq_torus(f));
  auto fe = mollify(f, 0.05);
  double sup = 0.0;
  for (int i = 0; i < 512; ++i) sup = std::max(sup, std::abs(evaluate(fe.poly, {i / 512.0 - 0.5})));
  CHECK(sup <= norm + 1e-9);

  // ‖f_ε‖²/b² → ‖f‖² as ε → 0
  double previous = INFINITY;
  for (double eps : {0.1, 0.03, 0.01, 0.003}) {
    auto g = mollify(f, eps);
    const double gap = std::abs(norm_sq_torus(g.poly) / (g.b * g.b) - norm * norm);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-3 * norm * norm);
  CHECK_THROWS_AS(mollify(f.with_marks({true, false}), 0.1), std::invalid_argument);
}
