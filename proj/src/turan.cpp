#include "pdw/turan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pdw/errors.hpp"
#include "pdw/simplex.hpp"

namespace pdw {

namespace {

constexpr double kPi = std::numbers::pi;

void check_delta(double delta) {
  if (!(delta > 0.0) || delta > 0.5) throw std::invalid_argument("delta must be in (0, 0.5]");
}

bool reciprocal_is_integer(double delta, int* q) {
  const double r = 1.0 / delta;
  const double k = std::round(r);
  if (std::abs(r - k) <= 1e-12 * r) {
    if (q) *q = static_cast<int>(k);
    return true;
  }
  return false;
}

}  // namespace

double PiecewiseLinearProfile::fourier(double nu) const {
  const double h = delta / grid_size;
  const double z = kPi * nu * h;
  const double sinc = z == 0.0 ? 1.0 : std::sin(z) / z;
  double s = 1.0;
  for (int j = 1; j < grid_size; ++j) s += 2.0 * values[j] * std::cos(2.0 * kPi * nu * j * h);
  return h * sinc * sinc * s;
}

double PiecewiseLinearProfile::operator()(double x) const {
  const double t = std::abs(x) / delta * grid_size;
  if (t >= grid_size) return 0.0;
  const int j = static_cast<int>(t);
  const double w = t - j;
  return (1.0 - w) * values[j] + w * values[j + 1];
}

double turan_exact_1d(int q) {
  if (q < 2) throw std::invalid_argument("turan_exact_1d: q must be >= 2");
  return 1.0 / q;
}

double turan_trivial_upper(double delta) {
  check_delta(delta);
  return 2.0 * delta;
}

double turan_upper(double delta, std::string* method) {
  check_delta(delta);
  int q = 0;
  if (reciprocal_is_integer(delta, &q)) {
    if (method) *method = "exact";
    return turan_exact_1d(q);
  }
  if (method) *method = "trivial";
  return turan_trivial_upper(delta);
}

int turan_default_grid(double delta) {
  const int base = delta < 0.05 ? 128 : 64;
  // prefer a grid whose step h = δ/M divides 1, so that the nodes contain every
  // point kδ mod 1 that lands on the grid
  for (int offset = 0; offset < base / 4; ++offset) {
    for (int m : {base + offset, base - offset}) {
      const double periods = m / delta;
      if (std::abs(periods - std::round(periods)) < 1e-9 * periods) return m;
    }
  }
  return base;
}
int turan_default_freq(double delta) { return delta < 0.05 ? 512 : 256; }

TuranEstimate turan_lp_lower(double delta, int grid_size, int freq_bound) {
  check_delta(delta);
  if (grid_size == 0) grid_size = turan_default_grid(delta);
  if (freq_bound == 0) freq_bound = turan_default_freq(delta);
  if (grid_size < 4) throw std::invalid_argument("turan_lp_lower: grid size must be >= 4");
  if (freq_bound < grid_size) throw std::invalid_argument("turan_lp_lower: frequency bound must be >= grid size");

  const int M = grid_size;
  const int vars = M - 1;  // g_1 .. g_{M-1}
  const double h = delta / M;
  const int audit = 10 * freq_bound;

  LinearProgram<double> lp(vars);
  lp.objective.setOnes();
  lp.free.assign(vars, true);
  Eigen::VectorXd row(vars);
  // |g| <= g(0) holds for every positive definite g; keeps the LP bounded
  for (int j = 0; j < vars; ++j) {
    row.setZero();
    row(j) = 1.0;
    lp.add_row(row, RowSense::le, 1.0);
    lp.add_row(row, RowSense::ge, -1.0);
  }
  // the row for ν depends only on νh mod 1 up to reflection; repeats are dropped
  std::vector<double> phases;
  auto add_frequency = [&](int nu) {
    if (std::abs(std::sin(kPi * nu * h)) < 1e-12) return false;  // ĝ_ν vanishes identically
    double phase = nu * h - std::floor(nu * h);
    phase = std::min(phase, 1.0 - phase);
    if (std::any_of(phases.begin(), phases.end(), [&](double p) { return std::abs(p - phase) < 1e-12; })) return false;
    phases.push_back(phase);
    for (int j = 1; j <= vars; ++j) row(j - 1) = -2.0 * std::cos(2.0 * kPi * nu * j * h);
    lp.add_row(row, RowSense::le, 1.0);
    return true;
  };
  for (int nu = 1; nu <= freq_bound; ++nu) add_frequency(nu);

  TuranEstimate est;
  est.delta = delta;
  est.grid_size = M;
  est.freq_bound = freq_bound;
  est.checked_freq = audit;
  est.witness.delta = delta;
  est.witness.grid_size = M;
  est.witness.values.assign(M + 1, 0.0);
  est.witness.values[0] = 1.0;

  // Audit failures between N and 10N are added as constraints and the LP is
  // solved again, a bounded number of times.
  constexpr int kMaxRounds = 40;
  constexpr std::size_t kCutsPerRound = 128;
  for (int round = 0;; ++round) {
    const auto solution = solve_lp(lp);
    if (solution.status != LpStatus::optimal) {
      throw SolverDefect("turan_lp_lower: LP returned " + to_string(solution.status) + " at delta " +
                         std::to_string(delta));
    }
    for (int j = 1; j <= vars; ++j) est.witness.values[j] = solution.x(j - 1);
    std::vector<std::pair<double, int>> violated;
    est.min_residual = std::numeric_limits<double>::infinity();
    for (int nu = 1; nu <= audit; ++nu) {
      const double r = est.witness.fourier(nu);
      est.min_residual = std::min(est.min_residual, r);
      if (r < -kTuranResidualTol) violated.emplace_back(r, nu);
    }
    if (violated.empty() || round == kMaxRounds) break;
    std::sort(violated.begin(), violated.end());
    std::size_t added = 0;
    for (const auto& [r, nu] : violated) {
      if (added == kCutsPerRound) break;
      if (add_frequency(nu)) ++added;
    }
    est.cut_freqs += static_cast<int>(added);
    if (added == 0) break;
  }
  est.lower = est.witness.mean();
  est.certified = est.min_residual >= -kTuranResidualTol;
  est.upper = turan_upper(delta, &est.upper_method);
  return est;
}

TuranEstimate turan_cube(double delta, int dim, int grid_size, int freq_bound) {
  if (dim < 1) throw std::invalid_argument("turan_cube: dimension must be >= 1");
  TuranEstimate est = turan_lp_lower(delta, grid_size, freq_bound);
  est.dim = dim;
  est.lower = std::pow(est.lower, dim);
  est.upper = std::pow(est.upper, dim);
  return est;
}

double turan_spatial_lower(const Domain& domain) { return domain.volume() / std::pow(2.0, domain.dim()); }

TuranChain turan_chain_check(double delta, int dim, int grid_size, int freq_bound) {
  TuranChain chain;
  chain.spatial = turan_spatial_lower(Domain::cube(dim, delta));
  chain.lp = turan_cube(delta, dim, grid_size, freq_bound).lower;
  chain.trivial = std::pow(turan_trivial_upper(delta), dim);
  constexpr double slack = 1e-9;
  if (chain.spatial > chain.lp + slack || chain.lp > chain.trivial + slack) {
    throw SolverDefect("turan_chain_check: bounds out of order at delta " + std::to_string(delta));
  }
  return chain;
}

}  // namespace pdw
