// Two-sided estimates for the Wiener constant
//
//   W_n(D) = sup { ∫_{T^n}|f|² / (|D|^{-1} ∫_D |f|²) : f positive definite },
//
// together with θ(δ), the cube sandwich, the L^p variant, Hlawka checks and
// the real-line comparison.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdw/domain.hpp"
#include "pdw/turan.hpp"
#include "pdw/trig_polynomial.hpp"

namespace pdw {

struct DomainDescriptor {
  std::string shape;
  double delta = 0.0;  // half-width / radius; cube half-width for products
  int dim = 1;
  std::string text;

  static DomainDescriptor of(const Domain& domain);
};

struct BoundSide {
  double value = 0.0;
  /// lower: "constant-one", "lattice-comb", "cube-formula";
  /// upper: "hlawka", "turan", "delsarte".
  std::string method;
  std::map<std::string, double> params;
};

struct BoundReport {
  DomainDescriptor domain;
  BoundSide lower;
  BoundSide upper;
  std::map<std::string, double> residuals;
  bool certified = true;
};

/// Throws SolverDefect unless 1 - 1e-9 <= lower <= upper <= 2^n + 1e-9.
void check_sandwich(const BoundReport& report);

// ---- lower bounds ------------------------------------------------------------

/// Relative agreement demanded between the comb's numeric Rayleigh quotient
/// and |D|q^n.
inline constexpr double kLatticeAgreementTol = 1e-6;

struct LatticeLowerBound {
  double value = 0.0;    // |D| q^n
  double numeric = 0.0;  // rayleigh_quotient of the truncated comb
  double rel_error = 0.0;
  int q = 0;
  double epsilon = 0.0;
  int freq_cutoff = 0;
  std::size_t terms = 0;
};

/// 0.9 min{inradius(D), 1/q - δ} with δ the cube half-width of D.
double default_comb_epsilon(const Domain& domain, int q);

/// Largest q >= 2 with D ⊂ δI^n, δ < 1/q.
int default_lattice_q(const Domain& domain);

/// |D|q^n, checked against the numeric Rayleigh quotient of the lattice comb.
/// Requires δ < 1/q and 0 < ε < min{inradius, 1/q - δ}; ε = 0 and
/// freq_cutoff = 0 pick the defaults.  Throws SolverDefect when the two
/// disagree by more than kLatticeAgreementTol.
LatticeLowerBound wiener_lower_lattice(const Domain& domain, int q, double epsilon = 0.0, int freq_cutoff = 0);

// ---- upper bounds ------------------------------------------------------------

struct UpperOptions {
  int turan_grid = 0;  // 0: solver defaults
  int turan_freq = 0;
  int delsarte_basis = 0;
  int delsarte_grid = 0;
};

/// min of 2^n (Hlawka), |D| / a_T(δ)^n from the Turán LP witness (cubes,
/// only when certified) and |D| A(D) from the Delsarte LP (balls with
/// n <= 8, only when certified).  Ties go to the specialised method.
BoundSide wiener_upper(const Domain& domain, const UpperOptions& options = {});

/// Sandwich for W_n(D): lower = max(1, lattice comb at q), upper from
/// wiener_upper.  q = 0 selects default_lattice_q.
BoundReport wiener_bounds(const Domain& domain, int q = 0, double epsilon = 0.0,
                          const UpperOptions& options = {});

// ---- θ and cubes -------------------------------------------------------------

struct ThetaEstimate {
  double delta = 0.0;
  double value = 0.0;
  bool certified = false;
  TuranEstimate turan;
};

/// θ(δ) = 1 - δ/a_T([-δ,δ]) from the Turán LP witness; δ ∈ (0, 1/2].
ThetaEstimate theta(double delta, int grid_size = 0, int freq_bound = 0);

/// [2^n (δ_probe q)^n, 2^n] for D = (1/q)I^n; the gap is 2^n (1 - (δ_probe q)^n).
BoundReport cube_wiener_sandwich(int q, int dim, double probe);

// ---- L^p ---------------------------------------------------------------------

/// ∫_{T^n} f^p / (|D|^{-1} ∫_D f^p) for real f and even p, via g = f^{p/2}.
double p_rayleigh_quotient(const TrigPolynomial& f, const Domain& domain, int p);

/// Lower |D|q^n and the p = 2 upper bound for W_{n,p}(D).  The comb's p-ratio
/// is evaluated for p and 2 and reported as residuals; a relative miss above
/// kLatticeAgreementTol clears `certified`.
BoundReport wiener_p_bounds(int dim, int p, const Domain& domain, int q);

// ---- Hlawka ------------------------------------------------------------------

struct HlawkaCheck {
  double torus = 0.0;  // ∫_T |f|²
  double bound = 0.0;  // |½D|^{-1} ∫_D |f|²
  double ratio = 0.0;  // Rayleigh quotient; at most 2^n
  bool pass = false;
};

/// ∫_T |f|² <= |½D|^{-1} ∫_D |f|² with 1e-9 relative slack; f must be marked
/// positive definite.
HlawkaCheck hlawka_verify(const TrigPolynomial& f, const Domain& domain);

struct SuiteResult {
  int samples = 0;
  int failures = 0;
  double worst = 0.0;  // largest ratio (hlawka) or relative error (parseval)
  std::optional<TrigPolynomial> first_failure;
};

/// Hlawka's inequality on `samples` seeded random positive definite
/// polynomials; sample i uses seed hash(seed, i) and degree 1 + i mod 8 (n = 1),
/// 1 + i mod 4 (n = 2), 1 + i mod 2 otherwise.
SuiteResult hlawka_suite(std::uint64_t seed, int samples, int dim, double delta, int threads = 1);

/// Parseval: Σ|f̂|² against the mean of |f|² on a grid fine enough to be exact.
SuiteResult parseval_suite(std::uint64_t seed, int samples, int dim, int threads = 1);

// ---- real line ---------------------------------------------------------------

struct RealLineRatio {
  double radius = 0.0;
  int dim = 1;
  double full = 0.0;   // ∫_{R^n} f²
  double local = 0.0;  // ∫_{[-1/2,1/2]^n} f²
  double mass = 0.0;   // ∫_{R^n} f = |B_r|
  double ratio = 0.0;  // full / local
};

/// f = |B_r|^{-1} χ_{B_r} * χ_{B_r}; closed forms for n = 1, quadrature for n = 2.
RealLineRatio realline_counterexample(double radius, int dim = 1);

/// Σ_i w_i (1 - |x|/a_i)_+ with w_i >= 0: a mixture of interval convolution roots.
struct TriangleMixture {
  std::vector<double> weights;
  std::vector<double> halfwidths;

  double operator()(double x) const;
  double support() const;
};

TriangleMixture random_triangle_mixture(std::uint64_t seed, int max_terms = 4);

struct RealLineCheck {
  double lhs = 0.0;  // ∫_R f²
  double rhs = 0.0;  // δ^{-1} Σ_{|k| <= K} ∫_{D+k} f²
  int cells = 0;
  bool pass = false;
};

/// ∫_R f² <= δ^{-1} ∫_{D+Z} f² for D = [-δ, δ], δ ∈ (0, 1/2).  Throws
/// std::invalid_argument when the cells |k| <= K_cells miss part of supp f.
RealLineCheck realline_inequality_check(const TriangleMixture& f, double delta, int cells);

}  // namespace pdw
