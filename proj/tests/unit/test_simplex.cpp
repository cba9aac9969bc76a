#include <doctest.h>

#include <random>

#include "pdw/simplex.hpp"

using namespace pdw;
using doctest::Approx;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("textbook maximization") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
  LinearProgram<double> lp(2);
  lp.objective = vec({3, 5});
  lp.add_row(vec({1, 0}), RowSense::le, 4);
  lp.add_row(vec({0, 2}), RowSense::le, 12);
  lp.add_row(vec({3, 2}), RowSense::le, 18);
  for (auto method : {SimplexMethod::primal, SimplexMethod::dual}) {
    const auto r = solve_lp(lp, {.method = method});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == Approx(36));
    CHECK(r.x(0) == Approx(2));
    CHECK(r.x(1) == Approx(6));
  }
}

TEST_CASE("equality rows and free variables") {
  // min x + y with x - y = 1, x + y >= 3, x free -> (2, 1)
  LinearProgram<double> lp(2);
  lp.objective = vec({-1, -1});
  lp.free = {true, false};
  lp.add_row(vec({1, -1}), RowSense::eq, 1);
  lp.add_row(vec({1, 1}), RowSense::ge, 3);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == Approx(-3));
  CHECK(r.x(0) - r.x(1) == Approx(1));

  // a free variable that goes negative
  LinearProgram<double> neg(1);
  neg.objective = vec({-1});
  neg.free = {true};
  neg.add_row(vec({1}), RowSense::ge, -5);
  const auto s = solve_lp(neg);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.x(0) == Approx(-5));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram<double> bad(2);
  bad.objective = vec({1, 1});
  bad.add_row(vec({1, 1}), RowSense::le, 1);
  bad.add_row(vec({1, 1}), RowSense::ge, 2);
  CHECK(solve_lp(bad).status == LpStatus::infeasible);

  LinearProgram<double> open(2);
  open.objective = vec({1, 0});
  open.add_row(vec({-1, 1}), RowSense::le, 1);
  CHECK(solve_lp(open).status == LpStatus::unbounded);
}

TEST_CASE("primal and dual routes agree on random programs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 5;
    const int m = 4 * n;
    LinearProgram<double> lp(n);
    lp.free.assign(n, true);
    for (int j = 0; j < n; ++j) lp.objective(j) = u(rng);
    // random rows around a box keep the feasible set bounded and nonempty
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(j) = 1;
      lp.add_row(e, RowSense::le, 2);
      lp.add_row(e, RowSense::ge, -2);
    }
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd a(n);
      for (int j = 0; j < n; ++j) a(j) = u(rng);
      lp.add_row(a, RowSense::le, 1.0 + 0.5 * (u(rng) + 1));
    }
    const auto p = solve_lp(lp, {.method = SimplexMethod::primal});
    const auto d = solve_lp(lp, {.method = SimplexMethod::dual});
    REQUIRE(p.status == LpStatus::optimal);
    REQUIRE(d.status == LpStatus::optimal);
    CHECK(p.objective == Approx(d.objective).epsilon(1e-9));
    // feasibility of the dual-route point
    for (int i = 0; i < lp.num_rows(); ++i) {
      const double lhs = lp.rows[i].dot(d.x);
      if (lp.senses[i] == RowSense::le) CHECK(lhs <= lp.rhs[i] + 1e-8);
      if (lp.senses[i] == RowSense::ge) CHECK(lhs >= lp.rhs[i] - 1e-8);
    }
  }
}
