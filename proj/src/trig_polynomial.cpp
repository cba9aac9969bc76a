#include "pdw/trig_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pdw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSymmetryTolerance = 1e-12;

bool lex_less(std::span<const int> a, std::span<const int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_dim(const TrigPolynomial& f, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(f.dim()) != n) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

TrigPolynomial::Builder::Builder(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("TrigPolynomial: dimension must be >= 1");
}

void TrigPolynomial::Builder::add(std::span<const int> frequency, Complex value) {
  if (static_cast<int>(frequency.size()) != dim_) {
    throw std::invalid_argument("TrigPolynomial::Builder::add: dimension mismatch");
  }
  freqs_.insert(freqs_.end(), frequency.begin(), frequency.end());
  values_.push_back(value);
}

void TrigPolynomial::Builder::reserve(std::size_t terms) {
  freqs_.reserve(terms * dim_);
  values_.reserve(terms);
}

TrigPolynomial TrigPolynomial::Builder::build(PolynomialMarks marks) && {
  const std::size_t n = values_.size();
  const auto d = static_cast<std::size_t>(dim_);
  auto key = [&](std::size_t i) { return std::span<const int>(freqs_.data() + i * d, d); };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(key(a), key(b)); });

  TrigPolynomial out(dim_);
  out.freqs_.reserve(n * d);
  out.values_.reserve(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    Complex sum = 0.0;
    while (j < n && std::equal(key(order[i]).begin(), key(order[i]).end(), key(order[j]).begin())) {
      sum += values_[order[j]];
      ++j;
    }
    if (sum != Complex(0.0)) {
      auto k = key(order[i]);
      out.freqs_.insert(out.freqs_.end(), k.begin(), k.end());
      out.values_.push_back(sum);
    }
    i = j;
  }
  return out.with_marks(marks);
}

TrigPolynomial::TrigPolynomial(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("TrigPolynomial: dimension must be >= 1");
}

TrigPolynomial TrigPolynomial::constant(int dim, double value) {
  Builder b(dim);
  std::vector<int> zero(dim, 0);
  b.add(zero, value);
  return std::move(b).build({true, value >= 0.0});
}

Complex TrigPolynomial::operator[](std::span<const int> nu) const {
  if (static_cast<int>(nu.size()) != dim_) throw std::invalid_argument("TrigPolynomial[]: dimension mismatch");
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less(frequency(mid), nu)) lo = mid + 1;
    else hi = mid;
  }
  if (lo < size() && std::equal(nu.begin(), nu.end(), frequency(lo).begin())) return values_[lo];
  return 0.0;
}

int TrigPolynomial::max_abs_frequency() const {
  int m = 0;
  for (int v : freqs_) m = std::max(m, std::abs(v));
  return m;
}

TrigPolynomial TrigPolynomial::with_marks(PolynomialMarks marks) const {
  TrigPolynomial out = *this;
  out.marks_ = marks;
  if (marks.positive_definite) {
    for (const auto& c : out.values_) {
      if (c.imag() != 0.0 || c.real() < 0.0) {
        throw std::invalid_argument("TrigPolynomial: positive definite mark requires real coefficients >= 0");
      }
    }
  }
  if (marks.real_valued) {
    double scale = 0.0;
    for (const auto& c : out.values_) scale = std::max(scale, std::abs(c));
    std::vector<int> neg(dim_);
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto nu = out.frequency(i);
      std::transform(nu.begin(), nu.end(), neg.begin(), [](int v) { return -v; });
      const Complex mirror = (*this)[neg];
      if (std::abs(mirror - std::conj(values_[i])) > kSymmetryTolerance * scale) {
        throw std::invalid_argument("TrigPolynomial: real-valued mark requires Hermitian symmetric coefficients");
      }
    }
    // symmetrize exactly: the lexicographically larger member of each pair
    // copies the conjugate of the smaller one
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto nu = out.frequency(i);
      std::transform(nu.begin(), nu.end(), neg.begin(), [](int v) { return -v; });
      if (std::equal(nu.begin(), nu.end(), neg.begin())) {
        out.values_[i] = out.values_[i].real();
      } else if (lex_less(neg, nu)) {
        out.values_[i] = std::conj((*this)[neg]);
      }
    }
  }
  return out;
}

Complex evaluate(const TrigPolynomial& f, std::span<const double> x) {
  check_dim(f, x.size(), "evaluate");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto nu = f.frequency(i);
    double phase = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) phase += nu[k] * x[k];
    // reduce before scaling to keep the argument of sin/cos small
    phase -= std::round(phase);
    sum += f.coefficient(i) * std::polar(1.0, kTwoPi * phase);
  }
  if (f.real_valued()) return {sum.real(), 0.0};
  return sum;
}

double norm_sq_torus(const TrigPolynomial& f) {
  double s = 0.0;
  for (const auto& c : f.coefficients()) s += std::norm(c);
  return s;
}

TrigPolynomial multiply(const TrigPolynomial& f, const TrigPolynomial& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("multiply: dimension mismatch");
  const int n = f.dim();
  PolynomialMarks marks{f.real_valued() && g.real_valued(), f.positive_definite() && g.positive_definite()};
  if (f.empty() || g.empty()) return TrigPolynomial(n).with_marks(marks);

  // output box and mixed-radix strides
  std::vector<long long> lo(n, 0), extent(n, 0), stride(n, 1);
  for (int k = 0; k < n; ++k) {
    int fmin = f.frequency(0)[k], fmax = fmin, gmin = g.frequency(0)[k], gmax = gmin;
    for (std::size_t i = 0; i < f.size(); ++i) {
      fmin = std::min(fmin, f.frequency(i)[k]);
      fmax = std::max(fmax, f.frequency(i)[k]);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      gmin = std::min(gmin, g.frequency(i)[k]);
      gmax = std::max(gmax, g.frequency(i)[k]);
    }
    lo[k] = static_cast<long long>(fmin) + gmin;
    extent[k] = static_cast<long long>(fmax) + gmax - lo[k] + 1;
  }
  long double volume = 1.0L;
  for (int k = n - 1; k >= 0; --k) {
    if (k < n - 1) stride[k] = stride[k + 1] * extent[k + 1];
    volume *= extent[k];
  }
  auto encode = [&](std::span<const int> a, std::span<const int> b) {
    long long idx = 0;
    for (int k = 0; k < n; ++k) idx += (a[k] + b[k] - lo[k]) * stride[k];
    return idx;
  };

  std::vector<int> freq(n);
  TrigPolynomial::Builder builder(n);
  auto emit = [&](long long idx, Complex value) {
    for (int k = 0; k < n; ++k) {
      freq[k] = static_cast<int>(idx / stride[k] + lo[k]);
      idx %= stride[k];
    }
    builder.add(freq, value);
  };

  constexpr long double kDenseLimit = 4e6L;
  if (volume <= kDenseLimit) {
    std::vector<Complex> dense(static_cast<std::size_t>(volume), Complex(0.0));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        dense[encode(f.frequency(i), g.frequency(j))] += f.coefficient(i) * g.coefficient(j);
    for (std::size_t idx = 0; idx < dense.size(); ++idx)
      if (dense[idx] != Complex(0.0)) emit(static_cast<long long>(idx), dense[idx]);
  } else {
    std::unordered_map<long long, Complex> sparse;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        sparse[encode(f.frequency(i), g.frequency(j))] += f.coefficient(i) * g.coefficient(j);
    for (const auto& [idx, value] : sparse) emit(idx, value);
  }
  return std::move(builder).build(marks);
}

TrigPolynomial power(const TrigPolynomial& f, int k) {
  if (k < 1) throw std::invalid_argument("power: exponent must be >= 1");
  if (k == 1) return f;
  TrigPolynomial half = power(f, k / 2);
  TrigPolynomial sq = multiply(half, half);
  return k % 2 ? multiply(sq, f) : sq;
}

TrigPolynomial random_pd_poly(std::uint64_t seed, int dim, int degree, double decay) {
  if (dim < 1) throw std::invalid_argument("random_pd_poly: dimension must be >= 1");
  if (degree < 0) throw std::invalid_argument("random_pd_poly: degree must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  TrigPolynomial::Builder builder(dim);
  std::vector<int> nu(dim, -degree), neg(dim);
  while (true) {
    auto first_nonzero = std::find_if(nu.begin(), nu.end(), [](int v) { return v != 0; });
    const bool is_zero = first_nonzero == nu.end();
    if (is_zero || *first_nonzero > 0) {
      double norm2 = 0.0;
      for (int v : nu) norm2 += double(v) * v;
      const double value = uniform(rng) * std::pow(1.0 + std::sqrt(norm2), -decay);
      builder.add(nu, value);
      if (!is_zero) {
        std::transform(nu.begin(), nu.end(), neg.begin(), [](int v) { return -v; });
        builder.add(neg, value);
      }
    }
    int k = dim - 1;
    while (k >= 0 && nu[k] == degree) nu[k--] = -degree;
    if (k < 0) break;
    ++nu[k];
  }
  return std::move(builder).build({true, true});
}

void write_text(std::ostream& os, const TrigPolynomial& f) {
  const auto old_precision = os.precision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto nu = f.frequency(i);
    for (std::size_t k = 0; k < nu.size(); ++k) os << (k ? " " : "") << nu[k];
    os << "  " << f.coefficient(i).real() << ' ' << f.coefficient(i).imag() << '\n';
  }
  os.precision(old_precision);
}

std::string to_text(const TrigPolynomial& f) {
  std::ostringstream os;
  write_text(os, f);
  return os.str();
}

TrigPolynomial read_text(std::istream& is, int dim_hint, PolynomialMarks marks) {
  std::string line;
  int dim = dim_hint;
  std::vector<std::pair<std::vector<int>, Complex>> terms;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.size() < 3) throw std::invalid_argument("read_text: malformed line '" + line + "'");
    const int line_dim = static_cast<int>(tokens.size()) - 2;
    if (dim == 0) dim = line_dim;
    if (line_dim != dim) throw std::invalid_argument("read_text: inconsistent dimension in '" + line + "'");
    std::vector<int> nu(dim);
    for (int k = 0; k < dim; ++k) nu[k] = std::stoi(tokens[k]);
    terms.emplace_back(std::move(nu), Complex(std::stod(tokens[dim]), std::stod(tokens[dim + 1])));
  }
  if (dim == 0) throw std::invalid_argument("read_text: empty input without a dimension hint");
  TrigPolynomial::Builder builder(dim);
  for (const auto& [nu, c] : terms) builder.add(nu, c);
  return std::move(builder).build(marks);
}

}  // namespace pdw
