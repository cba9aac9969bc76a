#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "pdw/errors.hpp"
#include "pdw/harmonic.hpp"
#include "pdw/special_functions.hpp"

using namespace pdw;
using doctest::Approx;

namespace {

TrigPolynomial one_plus_cos() {
  TrigPolynomial::Builder b(1);
  b.add({0}, 1.0);
  b.add({1}, 0.5);
  b.add({-1}, 0.5);
  return std::move(b).build({true, true});
}

// ∫_{ρB^n} e(λ·x) dx
double ball_kernel(int n, double rho, double lam) {
  if (lam == 0) return unit_ball_volume(n) * std::pow(rho, n);
  return std::pow(rho / lam, n / 2.0) * std::cyl_bessel_j(n / 2.0, 2 * std::numbers::pi * rho * lam);
}

double ball_norm_by_pairs(const TrigPolynomial& f, double rho) {
  double q = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      double l2 = 0;
      for (int k = 0; k < f.dim(); ++k) l2 += std::pow(f.frequency(i)[k] - f.frequency(j)[k], 2);
      q += (f.coefficient(i) * std::conj(f.coefficient(j))).real() * ball_kernel(f.dim(), rho, std::sqrt(l2));
    }
  return q;
}

}  // namespace

TEST_CASE("evaluation and parseval") {
  auto f = one_plus_cos();
  CHECK(std::abs(evaluate(f, {0.5})) < 1e-15);
  CHECK(evaluate(f, {0.0}).real() == Approx(2.0));
  CHECK(norm_sq_torus(f) == Approx(1.5));
}

TEST_CASE("marks are validated") {
  TrigPolynomial::Builder b(1);
  b.add({1}, Complex(1.0, 0.0));
  CHECK_THROWS_AS(std::move(b).build({true, false}), std::invalid_argument);
  TrigPolynomial::Builder c(1);
  c.add({0}, -1.0);
  CHECK_THROWS_AS(std::move(c).build({true, true}), std::invalid_argument);
}

TEST_CASE("cube closed form") {
  auto f = one_plus_cos();
  const double q = norm_sq_domain(f, Domain::cube(1, 0.25));
  CHECK(q == Approx(0.75 + 2.0 / std::numbers::pi).epsilon(1e-13));
  // quadrature agrees with the closed form
  CHECK(norm_sq_domain_quadrature(f, Domain::cube(1, 0.25)).value == Approx(q).epsilon(1e-13));
}

TEST_CASE("box dense and pair paths agree") {
  auto f = random_pd_poly(7, 3, 4, 1.0);
  const double h[3] = {0.1, 0.2, 0.3};
  auto g = random_pd_poly(8, 3, 1, 0.0);
  for (const auto* p : {&f, &g}) {
    const double direct = norm_sq_box(*p, h);
    const double quad = norm_sq_domain_quadrature(
        *p, Domain::product({Domain::cube(1, 0.1), Domain::cube(1, 0.2), Domain::cube(1, 0.3)})).value;
    CHECK(direct == Approx(quad).epsilon(1e-9));
  }
}

TEST_CASE("disk of a constant") {
  auto one = TrigPolynomial::constant(2, 1.0);
  CHECK(norm_sq_domain(one, Domain::ball(2, 0.4)) == Approx(0.16 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("ball quadrature matches the radial bessel formula") {
  for (int n : {2, 3}) {
    auto f = random_pd_poly(11 + n, n, 3, 1.5);
    const double rho = 0.35;
    const double quad = norm_sq_domain(f, Domain::ball(n, rho));
    CHECK(quad == Approx(ball_norm_by_pairs(f, rho)).epsilon(1e-8));
  }
}

TEST_CASE("products mixing balls and intervals") {
  auto f = random_pd_poly(21, 3, 2, 1.0);
  auto D = Domain::product({Domain::ball(2, 0.3), Domain::cube(1, 0.2)});
  double q = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      auto a = f.frequency(i), b = f.frequency(j);
      const double l = std::hypot(a[0] - b[0], a[1] - b[1]);
      const int t = a[2] - b[2];
      const double s = t == 0 ? 0.4 : std::sin(2 * std::numbers::pi * t * 0.2) / (std::numbers::pi * t);
      q += (f.coefficient(i) * std::conj(f.coefficient(j))).real() * ball_kernel(2, 0.3, l) * s;
    }
  CHECK(norm_sq_domain(f, D) == Approx(q).epsilon(1e-8));
}

TEST_CASE("rayleigh quotient") {
  auto f = one_plus_cos();
  CHECK(rayleigh_quotient(f, Domain::cube(1, 0.25)) == Approx(1.5 * 0.5 / (0.75 + 2.0 / std::numbers::pi)));
  CHECK_THROWS_AS(rayleigh_quotient(TrigPolynomial(1), Domain::cube(1, 0.25)), NumericalDegeneracy);
  CHECK_THROWS_AS(norm_sq_domain(f, Domain::cube(1, 0.6)), std::invalid_argument);
}

TEST_CASE("multiply, power and text round trip") {
  auto f = one_plus_cos();
  auto f2 = power(f, 2);
  CHECK(f2[{2}].real() == Approx(0.25));
  CHECK(f2[{0}].real() == Approx(1.5));
  CHECK(f2.positive_definite());
  auto g = random_pd_poly(3, 2, 3, 1.0);
  std::istringstream in(to_text(g));
  auto h = read_text(in);
  REQUIRE(h.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(h.coefficient(i) == g.coefficient(i));
}

TEST_CASE("long box axes go through the circulant path") {
  // 1 + 700 frequencies on one axis, then a 2-d case with one long axis
  TrigPolynomial::Builder b1(1);
  for (int k = -350; k <= 350; ++k) b1.add({k}, 1.0 / (1.0 + std::abs(k)));
  auto f = std::move(b1).build({true, true});
  TrigPolynomial::Builder b2(2);
  for (int k = -300; k <= 300; k += 2)
    for (int j = -1; j <= 1; ++j) b2.add({k, j}, std::exp(-0.01 * std::abs(k)) / (1.0 + j * j));
  auto g = std::move(b2).build({true, true});
  for (const auto* p : {&f, &g}) {
    std::vector<double> h(p->dim(), 0.23);
    double q = 0;
    for (std::size_t i = 0; i < p->size(); ++i)
      for (std::size_t j = 0; j < p->size(); ++j) {
        double kern = 1;
        for (int k = 0; k < p->dim(); ++k) {
          const int l = p->frequency(i)[k] - p->frequency(j)[k];
          kern *= l == 0 ? 2 * h[k] : std::sin(2 * std::numbers::pi * l * h[k]) / (std::numbers::pi * l);
        }
        q += kern * (p->coefficient(i) * std::conj(p->coefficient(j))).real();
      }
    CHECK(norm_sq_box(*p, h) == Approx(q).epsilon(1e-11));
  }
}
