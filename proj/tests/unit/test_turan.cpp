#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdw/turan.hpp"

using namespace pdw;
using doctest::Approx;

TEST_CASE("exact and trivial Turán bounds") {
  CHECK(turan_exact_1d(3) == Approx(1.0 / 3));
  CHECK(turan_trivial_upper(0.3) == Approx(0.6));
  std::string method;
  CHECK(turan_upper(0.25, &method) == Approx(0.25));
  CHECK(method == "exact");
  CHECK(turan_upper(0.3, &method) == Approx(0.6));
  CHECK(method == "trivial");
  CHECK_THROWS_AS(turan_lp_lower(0.0), std::invalid_argument);
  CHECK_THROWS_AS(turan_lp_lower(0.6), std::invalid_argument);
}

TEST_CASE("piecewise-linear profile transform") {
  // the single hat g = (1 - |x|/δ)_+ has ĝ_ν = δ sinc²(πνδ)
  PiecewiseLinearProfile g{0.2, 4, {1.0, 0.75, 0.5, 0.25, 0.0}};
  CHECK(g.mean() == Approx(0.2));
  for (double nu : {1.0, 2.0, 3.5}) {
    const double s = std::sin(std::numbers::pi * nu * 0.2) / (std::numbers::pi * nu * 0.2);
    CHECK(g.fourier(nu) == Approx(0.2 * s * s));
  }
  CHECK(g(0.1) == Approx(0.5));
  CHECK(g(-0.15) == Approx(0.25));
  CHECK(g(0.3) == 0.0);
}

TEST_CASE("LP reaches 1/q when 1/δ is an integer") {
  for (int q : {2, 3, 4, 5, 9}) {
    const auto est = turan_lp_lower(1.0 / q);
    CHECK(est.certified);
    CHECK(est.lower == Approx(1.0 / q).epsilon(1e-6));
    CHECK(est.lower <= est.upper + 1e-12);
    CHECK(est.min_residual >= -kTuranResidualTol);
  }
}

TEST_CASE("LP witness properties at non-integer 1/δ") {
  for (double delta : {0.3, 0.4, 0.22}) {
    const auto est = turan_lp_lower(delta);
    CHECK(est.certified);
    CHECK(est.lower >= delta);  // the hat of width δ is feasible
    CHECK(est.lower <= 2 * delta);
    CHECK(est.witness.values.front() == Approx(1.0));
    CHECK(est.witness.values.back() == 0.0);
    for (int nu = 1; nu <= est.checked_freq; ++nu) CHECK(est.witness.fourier(nu) >= -kTuranResidualTol);
  }
  // 1/√5 at δ = 0.4
  CHECK(turan_lp_lower(0.4).lower == Approx(1.0 / std::sqrt(5.0)).epsilon(1e-6));
}

TEST_CASE("grid refinement does not lose value") {
  const double coarse = turan_lp_lower(0.3, 30, 256).lower;
  const double fine = turan_lp_lower(0.3, 60, 256).lower;
  CHECK(fine >= coarse - 1e-9);
}

TEST_CASE("products and the bound chain") {
  const auto cube = turan_cube(1.0 / 3, 2);
  CHECK(cube.lower == Approx(1.0 / 9).epsilon(1e-6));
  CHECK(turan_cube(0.25, 3).lower == Approx(1.0 / 64).epsilon(1e-6));
  CHECK(turan_spatial_lower(Domain::cube(2, 0.3)) == Approx(0.09));
  const auto chain = turan_chain_check(0.3, 2);
  CHECK(chain.spatial <= chain.lp);
  CHECK(chain.lp <= chain.trivial);
  CHECK(chain.trivial == Approx(0.36));
}

TEST_CASE("default grid aligns with 1/δ") {
  for (double delta : {0.3, 0.4, 0.35, 0.27}) {
    const int m = turan_default_grid(delta);
    const double ratio = m / delta;
    CHECK(std::abs(ratio - std::round(ratio)) < 1e-6);
  }
  CHECK(turan_default_freq(0.03) == 2 * turan_default_freq(0.3));
}
