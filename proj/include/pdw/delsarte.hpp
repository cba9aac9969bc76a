// Delsarte linear-programming bound A_{R^n}(rB^n) over radial Gaussian-Laguerre
// functions, and the sphere-packing constants it is compared against.

#pragma once

#include <vector>

#include <Eigen/Core>

namespace pdw {

/// h(x) = Σ_k c_k b_k(|x|/s) with b_k(u) = L_k^{(n/2-1)}(2πu²) e^{-πu²}.
/// Since b̂_k = (-1)^k b_k, ĥ(ξ) = s^n Σ_k (-1)^k c_k b_k(s|ξ|).
struct RadialSchwartzFunction {
  int dim = 1;
  double scale = 1.0;
  Eigen::VectorXd coefficients;

  double operator()(double r) const;
  double fourier(double rho) const;
  /// Upper bound for |h| on |x| >= r (resp. |ĥ| on |ξ| >= r) from the
  /// absolute-coefficient Laguerre envelope; valid for r/s >= sqrt(K/π).
  double tail_bound(double r) const;
  double fourier_tail_bound(double r) const;
};

/// b_k(u) for k = 0..K at one radius.
Eigen::VectorXd gaussian_laguerre_basis(int dim, int max_degree, double u);

struct DelsarteBound {
  int dim = 1;
  double radius = 0.0;
  /// h(0) of the LP witness, an estimate of A_{R^n}(rB^n) from above.
  double value = 0.0;
  int basis_size = 0;
  int grid_size = 0;
  /// Constraint radii run over [0, r_max] (Fourier) and [r, r_max] (spatial).
  double r_max = 0.0;
  /// min ĥ at the refined audit minima and beyond r_max (envelope).
  double fourier_min = 0.0;
  /// max h on [r, ∞) at the refined audit maxima and from the envelope.
  double spatial_max = 0.0;
  /// Audit points that failed and were added as constraints.
  int cut_points = 0;
  bool certified = false;
  RadialSchwartzFunction witness;
};

inline constexpr double kDelsarteResidualTol = 1e-6;

/// Defaults for delsarte_lp.
inline constexpr int kDelsarteBasisSize = 24;
inline constexpr int kDelsarteGridSize = 400;
inline constexpr int kDelsarteMaxDim = 8;

/// minimize h(0) over c_0..c_K subject to ĥ(0) = 1, ĥ >= 0 on G radii in
/// [0, R_max] and h <= 0 on G radii in [r, R_max], R_max = r(1 + 3/√π).
/// Works in the variable |x|/s with s = r/2, so the value scales exactly as
/// r^{-n}.  Audits the local extremes found on a 10x finer grid (refined by
/// golden-section search) plus the envelope tail; failing points are added as
/// constraints and the LP re-solved.
DelsarteBound delsarte_lp(int dim, double radius, int basis_size = kDelsarteBasisSize,
                          int grid_size = kDelsarteGridSize);

/// C_L(n) = (j_{n/2,1}/4)^n / Γ(n/2+1)², evaluated in log space.
double levenshtein_center_density(int dim);
/// log₂ C_L(n).
double levenshtein_log2(int dim);

/// 2^{-0.5990 n}, the leading-order Kabatiansky-Levenshtein envelope.
double kl_center_density(int dim);
inline constexpr double kKlExponent = 0.5990;

struct BallUpperBound {
  double value = 0.0;        // min(2^n, 2^n |B^n| A-estimate)
  double hlawka = 0.0;       // 2^n
  double lp_value = 0.0;     // 2^n |B^n| delsarte_lp(n, 2).value
  double kl_envelope = 0.0;  // 2^n C_KL, reported for context
  bool lp_certified = false;
  DelsarteBound lp;
};

/// Upper bound for W_n(δB^n) through |δB^n| A(δB^n) = 2^n |B^n| A(2B^n).
/// δ ∈ (0, 1/2) is validated but does not enter the value.
BallUpperBound wiener_upper_ball(int dim, double delta, int basis_size = kDelsarteBasisSize,
                                 int grid_size = kDelsarteGridSize);

}  // namespace pdw
