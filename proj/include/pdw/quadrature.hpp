// One-dimensional quadrature rules used throughout the library.
//
// Gauss-Legendre nodes are generated by Newton iteration on the three-term
// recurrence; the adaptive integrator is a global Gauss-Kronrod (7, 15)
// scheme with a subdivision cap.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace pdw {

template <typename Scalar>
struct GaussLegendreRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;    // on [-1, 1]
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

namespace detail {

// Returns (P_n(x), P_{n-1}(x)).
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_pair(int n, Scalar x) {
  Scalar prev = 1, cur = x;
  if (n == 0) return {Scalar(1), Scalar(0)};
  for (int k = 2; k <= n; ++k) {
    const Scalar next = ((2 * k - 1) * x * cur - (k - 1) * prev) / k;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace detail

/// Gauss-Legendre rule with `order` points on [-1, 1].
template <typename Scalar = double>
GaussLegendreRule<Scalar> gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussLegendreRule<Scalar> rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int i = 0; i < (order + 1) / 2; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(order) + Scalar(0.5)));
    Scalar derivative = 1;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, pm1] = detail::legendre_pair(order, x);
      derivative = order * (x * p - pm1) / (x * x - 1);
      const Scalar step = p / derivative;
      x -= step;
      if (std::abs(step) <= 4 * std::numeric_limits<Scalar>::epsilon()) break;
    }
    const auto [p, pm1] = detail::legendre_pair(order, x);
    derivative = order * (x * p - pm1) / (x * x - 1);
    const Scalar w = 2 / ((1 - x * x) * derivative * derivative);
    rule.nodes(i) = -x;
    rule.nodes(order - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(order - 1 - i) = w;
  }
  if (order % 2 == 1) rule.nodes(order / 2) = 0;
  return rule;
}

/// Composite Gauss-Legendre sum over `panels` equal panels of [a, b].
template <typename Scalar, typename F>
auto composite_gauss_legendre(F&& f, Scalar a, Scalar b, int panels,
                              const GaussLegendreRule<Scalar>& rule) {
  using Result = decltype(f(a));
  Result total{};
  const Scalar width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const Scalar lo = a + p * width;
    const Scalar mid = lo + width / 2;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      total += (width / 2) * rule.weights(i) * f(mid + (width / 2) * rule.nodes(i));
    }
  }
  return total;
}

template <typename Scalar>
struct IntegrationResult {
  Scalar value{};
  Scalar error{};
  int intervals = 0;
  bool converged = false;
};

namespace detail {

// QUADPACK qk15 abscissae and weights.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Scalar, typename F>
std::pair<Scalar, Scalar> kronrod15(F& f, Scalar a, Scalar b) {
  const Scalar center = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  const Scalar fc = f(center);
  Scalar kronrod = fc * Scalar(kKronrodWeights[7]);
  Scalar gauss = fc * Scalar(kGaussWeights[3]);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kKronrodNodes[j]);
    const Scalar sum = f(center - dx) + f(center + dx);
    kronrod += Scalar(kKronrodWeights[j]) * sum;
    if (j % 2 == 1) gauss += Scalar(kGaussWeights[j / 2]) * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7, 15) integration of a real integrand.
/// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|)
/// or after `max_intervals` subdivisions (then `converged` is false).
template <typename Scalar = double, typename F>
IntegrationResult<Scalar> integrate_adaptive(F&& f, Scalar a, Scalar b, Scalar rel_tol = Scalar(1e-10),
                                             Scalar abs_tol = Scalar(1e-14), int max_intervals = 2000) {
  struct Piece {
    Scalar a, b, value, error;
    bool operator<(const Piece& other) const { return error < other.error; }
  };
  IntegrationResult<Scalar> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Piece> pieces;
  auto [v0, e0] = detail::kronrod15<Scalar>(f, a, b);
  pieces.push({a, b, v0, e0});
  Scalar value = v0, error = e0;
  int count = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (count >= max_intervals) {
      out.value = value;
      out.error = error;
      out.intervals = count;
      return out;
    }
    Piece worst = pieces.top();
    pieces.pop();
    const Scalar mid = (worst.a + worst.b) / 2;
    auto [vl, el] = detail::kronrod15<Scalar>(f, worst.a, mid);
    auto [vr, er] = detail::kronrod15<Scalar>(f, mid, worst.b);
    value += vl + vr - worst.value;
    error += el + er - worst.error;
    pieces.push({worst.a, mid, vl, el});
    pieces.push({mid, worst.b, vr, er});
    ++count;
  }
  // re-sum to shed accumulated round-off from the running updates
  Scalar resummed = 0, reerr = 0;
  while (!pieces.empty()) {
    resummed += pieces.top().value;
    reerr += pieces.top().error;
    pieces.pop();
  }
  out.value = resummed;
  out.error = reerr;
  out.intervals = count;
  out.converged = true;
  return out;
}

}  // namespace pdw
