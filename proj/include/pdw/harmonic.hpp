// L² norms of trigonometric polynomials over domains of the torus and the
// Rayleigh quotient ∫_{T^n}|f|² / (|D|^{-1} ∫_D |f|²).

#pragma once

#include <span>

#include "pdw/domain.hpp"
#include "pdw/quadrature.hpp"
#include "pdw/trig_polynomial.hpp"

namespace pdw {

struct QuadratureOptions {
  /// Relative tolerance per outer axis (successive panel doublings).
  double rel_tol = 1e-9;
  /// Hard cap on Gauss-Legendre panels per axis.
  int max_panels = 8192;
  /// Gauss-Legendre points per panel.
  int panel_order = 16;
};

/// ∫_D |f|² dx.  Boxes use the closed form
///   Σ_{ν,μ} f̂_ν conj(f̂_μ) Π_i sin(2π λ_i δ_i)/(π λ_i),  λ = ν - μ,
/// (2δ_i when λ_i = 0); other domains go through norm_sq_domain_quadrature.
/// Throws std::invalid_argument when D does not fit in [-1/2, 1/2)^n.
double norm_sq_domain(const TrigPolynomial& f, const Domain& domain, const QuadratureOptions& options = {});

/// Closed form for a box with the given per-axis half-widths.
double norm_sq_box(const TrigPolynomial& f, std::span<const double> halfwidths);

/// Iterated adaptive Gauss-Legendre quadrature over any supported domain.
/// Ball blocks are parametrized by x = ρ sin u so the integrand stays smooth
/// up to the boundary; the innermost axis is integrated in closed form.
IntegrationResult<double> norm_sq_domain_quadrature(const TrigPolynomial& f, const Domain& domain,
                                                    const QuadratureOptions& options = {});

/// ∫_{T^n}|f|² / (|D|^{-1}∫_D|f|²).  Any value is a lower bound witness for
/// the Wiener constant W_n(D) when f is positive definite.  Throws
/// NumericalDegeneracy when ∫_D|f|² vanishes.
double rayleigh_quotient(const TrigPolynomial& f, const Domain& domain, const QuadratureOptions& options = {});

}  // namespace pdw
