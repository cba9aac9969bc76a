// Trigonometric polynomials on the torus T^n = R^n / Z^n,
//
//   f(x) = Σ_ν f̂_ν e(ν·x),   e(t) = exp(2πit),
//
// stored as a sparse map from frequency vectors to complex amplitudes.  The
// map is kept as two flat arrays sorted lexicographically by frequency; zero
// amplitudes are never stored.

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pdw {

using Complex = std::complex<double>;

struct PolynomialMarks {
  /// f̂_{-ν} = conj(f̂_ν) for every stored ν.
  bool real_valued = false;
  /// Every stored coefficient is real and >= 0.
  bool positive_definite = false;
};

class TrigPolynomial {
 public:
  /// Accumulates (frequency, amplitude) pairs; duplicates are summed.
  class Builder {
   public:
    explicit Builder(int dim);
    void add(std::span<const int> frequency, Complex value);
    void add(std::initializer_list<int> frequency, Complex value) {
      add(std::span<const int>(frequency.begin(), frequency.size()), value);
    }
    void reserve(std::size_t terms);
    /// Sorts, merges and validates the marks.  Throws std::invalid_argument
    /// when a requested mark does not hold.
    TrigPolynomial build(PolynomialMarks marks = {}) &&;

   private:
    int dim_;
    std::vector<int> freqs_;
    std::vector<Complex> values_;
  };

  explicit TrigPolynomial(int dim = 1);

  /// The constant function `value`.
  static TrigPolynomial constant(int dim, double value);

  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const PolynomialMarks& marks() const { return marks_; }
  bool real_valued() const { return marks_.real_valued; }
  bool positive_definite() const { return marks_.positive_definite; }

  std::span<const int> frequency(std::size_t i) const {
    return {freqs_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  Complex coefficient(std::size_t i) const { return values_[i]; }
  std::span<const Complex> coefficients() const { return values_; }
  std::span<const int> frequencies() const { return freqs_; }

  /// f̂_ν, zero when ν is not stored.
  Complex operator[](std::span<const int> nu) const;
  Complex operator[](std::initializer_list<int> nu) const {
    return (*this)[std::span<const int>(nu.begin(), nu.size())];
  }

  /// Largest |ν_i| over stored frequencies and axes.
  int max_abs_frequency() const;

  /// Returns a copy with new marks; validates them.
  TrigPolynomial with_marks(PolynomialMarks marks) const;

 private:
  friend class Builder;
  int dim_;
  std::vector<int> freqs_;
  std::vector<Complex> values_;
  PolynomialMarks marks_;
};

/// Σ_ν f̂_ν e(ν·x); the imaginary part is dropped for real-valued f.
Complex evaluate(const TrigPolynomial& f, std::span<const double> x);
inline Complex evaluate(const TrigPolynomial& f, std::initializer_list<double> x) {
  return evaluate(f, std::span<const double>(x.begin(), x.size()));
}

/// ∫_{T^n} |f|² = Σ |f̂_ν|² (Parseval).
double norm_sq_torus(const TrigPolynomial& f);

/// Coefficient convolution (f̂g)_ν = Σ_μ f̂_{ν-μ} ĝ_μ.  Marks are kept when both
/// inputs carry them.
TrigPolynomial multiply(const TrigPolynomial& f, const TrigPolynomial& g);

/// f^k for k >= 1 by repeated squaring.
TrigPolynomial power(const TrigPolynomial& f, int k);

/// Deterministic random positive definite, real-valued polynomial with
/// f̂_ν = u_ν (1+|ν|)^{-decay}, |ν|_∞ <= degree, u_ν ~ U[0,1] drawn on the
/// canonical half-space (first nonzero component positive) and mirrored.
TrigPolynomial random_pd_poly(std::uint64_t seed, int dim, int degree, double decay);

/// Canonical text form: one line "ν_1 ... ν_n  re im" per stored coefficient,
/// in lexicographic frequency order.
void write_text(std::ostream& os, const TrigPolynomial& f);
std::string to_text(const TrigPolynomial& f);
/// Parses the canonical text form; the dimension is inferred from the first
/// line (an empty input needs `dim_hint`).
TrigPolynomial read_text(std::istream& is, int dim_hint = 0, PolynomialMarks marks = {});

}  // namespace pdw
