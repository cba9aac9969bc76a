#include "pdw/delsarte.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdw/errors.hpp"
#include "pdw/simplex.hpp"
#include "pdw/special_functions.hpp"

namespace pdw {

namespace {

constexpr double kPi = std::numbers::pi;

// Spatial and Fourier constraints run up to (1 + 3/√π) r, six Gaussian widths
// past r = 2 in the base scale.
double radius_factor() { return 1.0 + 3.0 / std::sqrt(kPi); }

// Σ_i |coefficient of z^i in L_k^{(α)}|·z^i.
double laguerre_abs_poly(int k, double alpha, double z) {
  double sum = 0.0;
  const double lg_top = std::lgamma(k + alpha + 1.0);
  for (int i = 0; i <= k; ++i) {
    const double log_coeff = lg_top - std::lgamma(k - i + 1.0) - std::lgamma(alpha + i + 1.0) - std::lgamma(i + 1.0);
    sum += std::exp(log_coeff + (z > 0 ? i * std::log(z) : (i == 0 ? 0.0 : -INFINITY)));
  }
  return sum;
}

double envelope(const RadialSchwartzFunction& f, double u) {
  const double alpha = f.dim / 2.0 - 1.0;
  const double z = 2.0 * kPi * u * u;
  double sum = 0.0;
  for (int k = 0; k < f.coefficients.size(); ++k) sum += std::abs(f.coefficients(k)) * laguerre_abs_poly(k, alpha, z);
  return sum * std::exp(-kPi * u * u);
}

// sup of the envelope over [u0, ∞): every term z^i e^{-z/2} decreases once
// z >= 2K, so sampling up to that point suffices.
double envelope_sup(const RadialSchwartzFunction& f, double u0) {
  const int K = static_cast<int>(f.coefficients.size()) - 1;
  const double u1 = std::max(u0, std::sqrt(std::max(K, 0) / kPi));
  double best = envelope(f, u1);
  constexpr int samples = 400;
  for (int i = 0; i < samples && u1 > u0; ++i) best = std::max(best, envelope(f, u0 + (u1 - u0) * i / samples));
  return best;
}


// Golden-section search for a local minimum of f on [a, b].
template <typename F>
double refine_min(F&& f, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

// Local minima of f sampled at x_0 < ... < x_{m-1}, each refined between its
// neighbours.
template <typename F>
std::vector<double> local_minima(F&& f, double lo, double hi, int m) {
  std::vector<double> values(m);
  auto at = [&](int i) { return lo + (hi - lo) * i / (m - 1); };
  for (int i = 0; i < m; ++i) values[i] = f(at(i));
  std::vector<double> out;
  for (int i = 0; i < m; ++i) {
    const bool left = i == 0 || values[i] <= values[i - 1];
    const bool right = i + 1 == m || values[i] <= values[i + 1];
    if (left && right) out.push_back(refine_min(f, at(std::max(i - 1, 0)), at(std::min(i + 1, m - 1))));
  }
  return out;
}

}  // namespace

Eigen::VectorXd gaussian_laguerre_basis(int dim, int max_degree, double u) {
  const double z = 2.0 * kPi * u * u;
  return laguerre_all<double>(max_degree, dim / 2.0 - 1.0, z) * std::exp(-kPi * u * u);
}

double RadialSchwartzFunction::operator()(double r) const {
  const int K = static_cast<int>(coefficients.size()) - 1;
  return coefficients.dot(gaussian_laguerre_basis(dim, K, r / scale));
}

double RadialSchwartzFunction::fourier(double rho) const {
  const int K = static_cast<int>(coefficients.size()) - 1;
  const Eigen::VectorXd b = gaussian_laguerre_basis(dim, K, scale * rho);
  double sum = 0.0;
  for (int k = 0; k <= K; ++k) sum += (k % 2 ? -1.0 : 1.0) * coefficients(k) * b(k);
  return std::pow(scale, dim) * sum;
}

double RadialSchwartzFunction::tail_bound(double r) const { return envelope_sup(*this, r / scale); }

double RadialSchwartzFunction::fourier_tail_bound(double r) const {
  return std::pow(scale, dim) * envelope_sup(*this, scale * r);
}

DelsarteBound delsarte_lp(int dim, double radius, int basis_size, int grid_size) {
  if (dim < 1) throw std::invalid_argument("delsarte_lp: dimension must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("delsarte_lp: radius must be positive");
  if (basis_size < 2) throw std::invalid_argument("delsarte_lp: basis size must be >= 2");
  if (grid_size < 8) throw std::invalid_argument("delsarte_lp: grid size must be >= 8");

  const int K = basis_size;
  const double alpha = dim / 2.0 - 1.0;
  const double u_max = 2.0 * radius_factor();

  // base problem at r = 2 (s = 1); variables c_0..c_K
  Eigen::VectorXd at_zero = laguerre_all<double>(K, alpha, 0.0);
  Eigen::VectorXd sign(K + 1);
  for (int k = 0; k <= K; ++k) sign(k) = k % 2 ? -1.0 : 1.0;

  LinearProgram<double> lp(K + 1);
  lp.free.assign(K + 1, true);
  lp.objective = -at_zero;
  lp.add_row(sign.cwiseProduct(at_zero), RowSense::eq, 1.0);
  auto add_normalized = [&lp](Eigen::VectorXd row, RowSense sense) {
    const double scale = row.cwiseAbs().maxCoeff();
    if (scale == 0.0) return;
    lp.add_row(row / scale, sense, 0.0);
  };
  for (int i = 1; i < grid_size; ++i) {
    const double v = u_max * i / (grid_size - 1);
    add_normalized(sign.cwiseProduct(gaussian_laguerre_basis(dim, K, v)), RowSense::ge);
  }
  for (int j = 0; j < grid_size; ++j) {
    const double u = 2.0 + (u_max - 2.0) * j / (grid_size - 1);
    add_normalized(gaussian_laguerre_basis(dim, K, u), RowSense::le);
  }
  DelsarteBound out;
  out.dim = dim;
  out.radius = radius;
  out.basis_size = K;
  out.grid_size = grid_size;
  const double s = radius / 2.0;
  out.r_max = radius * radius_factor();
  out.witness.dim = dim;
  out.witness.scale = s;

  // Audit on a 10x finer grid with every local extreme refined; extremes that
  // violate a sign constraint join the LP and it is solved again, a bounded
  // number of times.
  const int audit = 10 * grid_size;
  constexpr int kMaxRounds = 30;
  auto audit_points = [&](const RadialSchwartzFunction& f, std::vector<double>* fourier, std::vector<double>* spatial) {
    *fourier = local_minima([&](double u) { return f.fourier(u); }, 0.0, u_max, audit);
    *spatial = local_minima([&](double u) { return -f(u); }, 2.0, u_max, audit);
  };
  for (int round = 0;; ++round) {
    const auto solution = solve_lp(lp);
    if (solution.status == LpStatus::unbounded) {
      throw SolverDefect("delsarte_lp: LP unbounded; the normalization row is missing or degenerate");
    }
    if (solution.status != LpStatus::optimal) {
      throw SolverDefect("delsarte_lp: LP returned " + to_string(solution.status));
    }
    RadialSchwartzFunction base{dim, 1.0, solution.x};
    std::vector<double> fourier_points, spatial_points;
    audit_points(base, &fourier_points, &spatial_points);
    const double h0 = base(0.0);
    int added = 0;
    for (double u : fourier_points) {
      if (u > 0.0 && base.fourier(u) < -1e-12) {
        add_normalized(sign.cwiseProduct(gaussian_laguerre_basis(dim, K, u)), RowSense::ge);
        ++added;
      }
    }
    for (double u : spatial_points) {
      if (base(u) > 1e-12 * h0) {
        add_normalized(gaussian_laguerre_basis(dim, K, u), RowSense::le);
        ++added;
      }
    }
    out.witness.coefficients = solution.x / std::pow(s, dim);
    out.cut_points += added;
    if (added == 0 || round == kMaxRounds) break;
  }
  out.value = out.witness(0.0);

  // residuals at the refined audit extremes and past r_max, in the original scale
  RadialSchwartzFunction base{dim, 1.0, out.witness.coefficients * std::pow(s, dim)};
  std::vector<double> fourier_points, spatial_points;
  audit_points(base, &fourier_points, &spatial_points);
  out.fourier_min = INFINITY;
  out.spatial_max = -INFINITY;
  for (double u : fourier_points) out.fourier_min = std::min(out.fourier_min, out.witness.fourier(u / s));
  for (double u : spatial_points) out.spatial_max = std::max(out.spatial_max, out.witness(u * s));
  out.fourier_min = std::min(out.fourier_min, -out.witness.fourier_tail_bound(out.r_max));
  out.spatial_max = std::max(out.spatial_max, out.witness.tail_bound(out.r_max));
  out.certified = out.fourier_min >= -kDelsarteResidualTol && out.spatial_max <= kDelsarteResidualTol * out.value;
  return out;
}

double levenshtein_log2(int dim) {
  if (dim < 1) throw std::invalid_argument("levenshtein_center_density: dimension must be >= 1");
  const double j = bessel_first_zero(dim / 2.0).value;
  const double ln = dim * std::log(j / 4.0) - 2.0 * log_gamma(dim / 2.0 + 1.0);
  return ln / std::numbers::ln2;
}

double levenshtein_center_density(int dim) { return std::exp2(levenshtein_log2(dim)); }

double kl_center_density(int dim) {
  if (dim < 1) throw std::invalid_argument("kl_center_density: dimension must be >= 1");
  return std::exp2(-kKlExponent * dim);
}

BallUpperBound wiener_upper_ball(int dim, double delta, int basis_size, int grid_size) {
  if (!(delta > 0.0) || !(delta < 0.5)) throw std::invalid_argument("wiener_upper_ball: delta must be in (0, 0.5)");
  if (dim < 1 || dim > kDelsarteMaxDim) {
    throw std::invalid_argument("wiener_upper_ball: dimension must be in [1, " + std::to_string(kDelsarteMaxDim) + "]");
  }
  BallUpperBound out;
  const double two_n = std::pow(2.0, dim);
  out.hlawka = two_n;
  out.lp = delsarte_lp(dim, 2.0, basis_size, grid_size);
  out.lp_certified = out.lp.certified;
  out.lp_value = two_n * unit_ball_volume(dim) * out.lp.value;
  out.kl_envelope = two_n * kl_center_density(dim);
  out.value = out.lp_certified ? std::min(out.hlawka, out.lp_value) : out.hlawka;
  return out;
}

}  // namespace pdw
