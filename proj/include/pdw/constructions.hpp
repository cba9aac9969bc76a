// Explicit extremal and auxiliary functions: convolution roots, periodized
// mollifiers, mollifications and the lattice comb.

#pragma once

#include <initializer_list>
#include <optional>
#include <span>

#include "pdw/domain.hpp"
#include "pdw/trig_polynomial.hpp"

namespace pdw {

enum class ConvRootKind { interval_triangle, cube_product_triangle, ball_radial };

/// h*(x) = b⁻¹ (χ_K * χ_K)(x) with K = ½D and b = |K|, so h*(0) = 1 and
/// ĥ*(ξ) = b⁻¹ χ̂_K(ξ)².
class ConvRoot {
 public:
  explicit ConvRoot(Domain domain);

  const Domain& domain() const { return domain_; }
  ConvRootKind kind() const { return kind_; }
  /// |½D|, which is also ĥ*(0).
  double normalization() const { return b_; }

  double operator()(std::span<const double> x) const;
  double fourier(std::span<const double> xi) const;
  double operator()(std::initializer_list<double> x) const { return (*this)(std::span<const double>(x.begin(), x.size())); }
  double fourier(std::initializer_list<double> xi) const {
    return fourier(std::span<const double>(xi.begin(), xi.size()));
  }

  /// Radial profile for balls: h*(x) as a function of |x|.
  double radial(double r) const;
  /// Radial Fourier profile for balls.
  double radial_fourier(double rho) const;

 private:
  Domain domain_;
  ConvRootKind kind_;
  double b_;
};

/// φ̂(ξ) = Λ_{n/2}(π|ξ|)², the transform of the normalized radius-one ball root.
double mollifier_hat(int dim, double radius);

/// Truncated torus function together with the discarded Fourier mass.
struct Truncation {
  TrigPolynomial poly;
  int freq_cutoff = 0;
  /// Σ_{|ν|_∞ > N} φ̂(εν) over the retained frequency set's complement.
  /// An upper bound for n = 1; an envelope estimate for n >= 2.
  double tail_l1 = 0.0;
  /// (Σ_{|ν|_∞ > N} φ̂(εν)²)^{1/2} / ‖ψ_ε‖_2, envelope estimate.
  double tail_l2_rel = 0.0;
};

/// ψ_ε truncated to |ν|_∞ <= N.  With freq_cutoff = 0 the smallest N (found
/// by doubling) with tail_l2_rel < tail_tol is used.  When both a cutoff and
/// a tolerance are given, throws std::invalid_argument if the cutoff misses
/// the tolerance.
Truncation periodize(double epsilon, int dim, int freq_cutoff = 0, std::optional<double> tail_tol = std::nullopt);

/// Frequency cutoff chosen by the doubling search for a relative L² tail.
int default_freq_cutoff(double epsilon, int dim, double tail_tol = 1e-8);

/// Envelope estimates used by periodize.
double mollifier_tail_l1(double epsilon, int dim, int freq_cutoff);
double mollifier_tail_l2(double epsilon, int dim, int freq_cutoff);

/// s_ν = 1 when q divides every component of ν.
bool lattice_indicator(int q, std::span<const int> nu);
/// The same quantity as the direct average q^{-n} Σ_{γ ∈ Z_q^n} e(γ·ν/q).
double lattice_character_sum(int q, std::span<const int> nu);

struct LatticeComb {
  int q = 2;
  int dim = 1;
  double epsilon = 0.0;
  Truncation truncation;
  const TrigPolynomial& poly() const { return truncation.poly; }
};

/// Default comb cutoff: the smallest multiple of q at or above 20/ε, shrunk to
/// the 2e7 term budget.  εN = 20 puts the Rayleigh quotient within about 1e-8
/// relative of |D|q^n for n <= 3.
inline constexpr double kCombCutoffScale = 20.0;
int comb_default_cutoff(int q, int dim, double epsilon);

/// f = |Γ|⁻¹ Σ_{γ∈Γ} ψ_ε(· − γ) with Γ = (1/q)Z^n / Z^n, so f̂_ν = φ̂(εν)
/// when q | ν and 0 otherwise.  Requires 0 < ε < 1/(2q).
LatticeComb lattice_comb(int q, int dim, double epsilon, int freq_cutoff = 0);

struct Mollified {
  TrigPolynomial poly;
  /// b = ‖ψ_ε‖_2⁻¹.
  double b = 0.0;
};

/// f_ε = b (f * ψ_ε); requires f positive definite.
Mollified mollify(const TrigPolynomial& f, double epsilon);

/// ‖ψ_ε‖²_{L²(T^n)} = Σ_ν φ̂(εν)², summed to a large cutoff plus the envelope tail.
double mollifier_norm_sq(double epsilon, int dim);

}  // namespace pdw
