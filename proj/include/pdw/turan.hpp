// Two-sided estimates of the periodic Turán constant a_T([-δ, δ]): the
// largest mean value ĝ₀ of a positive definite g on T with supp g ⊂ [-δ, δ]
// and g(0) = 1.

#pragma once

#include <string>
#include <vector>

#include "pdw/domain.hpp"

namespace pdw {

/// Even piecewise-linear profile on the nodes t_j = jδ/M, j = 0..M, with
/// g(0) = 1 and g(δ) = 0.
struct PiecewiseLinearProfile {
  double delta = 0.0;
  int grid_size = 0;
  std::vector<double> values;  // g_0 .. g_M

  /// ĝ_ν = h sinc²(πνh) [1 + 2 Σ_{j=1}^{M-1} g_j cos(2πν t_j)],  h = δ/M.
  double fourier(double nu) const;
  double mean() const { return fourier(0.0); }
  double operator()(double x) const;
};

struct TuranEstimate {
  double delta = 0.0;
  int dim = 1;
  double lower = 0.0;
  double upper = 0.0;
  std::string upper_method;  // "exact" or "trivial"
  /// Largest ν at which nonnegativity of ĝ_ν was audited.
  int checked_freq = 0;
  /// min_{1 <= ν <= checked_freq} ĝ_ν of the witness.
  double min_residual = 0.0;
  int grid_size = 0;
  int freq_bound = 0;
  /// Frequencies in (N, checked_freq] added as constraints after failing the audit.
  int cut_freqs = 0;
  bool certified = false;
  PiecewiseLinearProfile witness;
};

/// Residual threshold below which an LP witness is flagged uncertified.
inline constexpr double kTuranResidualTol = 1e-9;

/// a_T([-1/q, 1/q]) = 1/q.
double turan_exact_1d(int q);

/// 2δ, from ĝ₀ = ∫g <= |D| g(0).
double turan_trivial_upper(double delta);

/// Best available upper bound: the exact value when 1/δ is an integer,
/// else the trivial one.  Sets `method` when non-null.
double turan_upper(double delta, std::string* method = nullptr);

/// Grid and frequency defaults: M near 64 with M/δ an integer when one exists
/// within 64 ± 15 (else 64), N = 256; both doubled below δ = 0.05.
int turan_default_grid(double delta);
int turan_default_freq(double delta);

/// LP over even piecewise-linear profiles with ĝ_ν >= 0 imposed for
/// 1 <= ν <= N and audited up to 10N; audit failures are fed back as
/// constraints and the LP re-solved.  δ ∈ (0, 1/2], M >= 4, N >= M;
/// M = 0 or N = 0 selects the defaults.
TuranEstimate turan_lp_lower(double delta, int grid_size = 0, int freq_bound = 0);

/// a_{T^n}([-δ,δ]^n) = a_T([-δ,δ])^n applied to both endpoints.
TuranEstimate turan_cube(double delta, int dim, int grid_size = 0, int freq_bound = 0);

/// |½D| = 2^{-n}|D|, a lower bound for a_{R^n}(D) and a_{T^n}(D).
double turan_spatial_lower(const Domain& domain);

struct TuranChain {
  double spatial = 0.0;  // |½D|
  double lp = 0.0;       // LP lower witness for a_{T^n}(D)
  double trivial = 0.0;  // |D|
};

/// Bound chain |½D| <= a_T lower witness <= |D| for D = δI^n.  Throws
/// SolverDefect on an ordering violation beyond 1e-9.
TuranChain turan_chain_check(double delta, int dim, int grid_size = 0, int freq_bound = 0);

}  // namespace pdw
