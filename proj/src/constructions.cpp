#include "pdw/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdw/quadrature.hpp"
#include "pdw/special_functions.hpp"

namespace pdw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxTerms = 2e7;

// φ̂(εν) looked up by |ν|², filled lazily.  In one dimension there are fewer
// terms than squared radii, so nothing is stored.
class RadialCache {
 public:
  RadialCache(int dim, double epsilon, long long max_r2)
      : dim_(dim), epsilon_(epsilon), values_(dim == 1 ? 0 : static_cast<std::size_t>(max_r2) + 1, -1.0) {}
  double operator()(long long r2) {
    if (values_.empty()) return mollifier_hat(dim_, epsilon_ * std::sqrt(static_cast<double>(r2)));
    double& v = values_[static_cast<std::size_t>(r2)];
    if (v < 0.0) v = mollifier_hat(dim_, epsilon_ * std::sqrt(static_cast<double>(r2)));
    return v;
  }

 private:
  int dim_;
  double epsilon_;
  std::vector<double> values_;
};

// Λ_{n/2}(z)² <= C_n z^{-(n+1)}, exact envelope for n = 1.
double envelope_constant(int n) {
  const double g = std::exp(log_gamma(n / 2.0 + 1.0));
  return g * g * std::pow(2.0, n) * 2.0 / kPi;
}

// Σ over the lattice stride·Z^n outside the sphere of radius R of the envelope.
double tail_l1_at(double epsilon, int n, double radius, int stride) {
  const double r = std::max(radius, 1.0);
  return n * unit_ball_volume(n) * envelope_constant(n) * std::pow(kPi * epsilon, -(n + 1)) / r /
         std::pow(stride, n);
}

double tail_l2_sq_at(double epsilon, int n, double radius, int stride) {
  const double r = std::max(radius, 1.0);
  const double c = envelope_constant(n);
  return n * unit_ball_volume(n) * c * c * std::pow(kPi * epsilon, -2 * (n + 1)) * std::pow(r, -(n + 2)) /
         (n + 2) / std::pow(stride, n);
}

double effective_radius(int n, int cutoff) {
  return n == 1 ? cutoff : cutoff - std::sqrt(static_cast<double>(n)) / 2.0;
}

void check_epsilon(double epsilon, double upper, const std::string& what) {
  if (!(epsilon > 0.0) || !(epsilon < upper)) {
    throw std::invalid_argument(what + ": epsilon must lie in (0, " + std::to_string(upper) + ")");
  }
}

double terms_for(int n, int cutoff, int stride) {
  return std::pow(2.0 * (cutoff / stride) + 1.0, n);
}

// Enumerates m ∈ Z^n with |m|_∞ <= M, calling visit(m) in lexicographic order.
template <typename Visit>
void for_each_box_point(int n, int bound, Visit&& visit) {
  std::vector<int> m(n, -bound);
  while (true) {
    visit(m);
    int k = n - 1;
    while (k >= 0 && m[k] == bound) m[k--] = -bound;
    if (k < 0) break;
    ++m[k];
  }
}

// Builds Σ_{|m|_∞ <= M} φ̂(ε·stride·m) e(stride·m·x), returning Σ φ̂².
TrigPolynomial build_radial(int n, double epsilon, int bound, int stride, double* sum_sq) {
  RadialCache cache(n, epsilon, static_cast<long long>(n) * bound * bound * stride * stride);
  TrigPolynomial::Builder builder(n);
  builder.reserve(static_cast<std::size_t>(std::pow(2.0 * bound + 1.0, n)));
  std::vector<int> nu(n);
  double sq = 0.0;
  for_each_box_point(n, bound, [&](const std::vector<int>& m) {
    long long r2 = 0;
    for (int k = 0; k < n; ++k) {
      nu[k] = stride * m[k];
      r2 += static_cast<long long>(nu[k]) * nu[k];
    }
    const double v = cache(r2);
    sq += v * v;
    builder.add(nu, v);
  });
  if (sum_sq) *sum_sq = sq;
  return std::move(builder).build({true, true});
}

}  // namespace

// ---- convolution roots ----------------------------------------------------

ConvRoot::ConvRoot(Domain domain) : domain_(std::move(domain)) {
  switch (domain_.shape()) {
    case Shape::cube:
      kind_ = domain_.dim() == 1 ? ConvRootKind::interval_triangle : ConvRootKind::cube_product_triangle;
      break;
    case Shape::ball:
      kind_ = domain_.dim() == 1 ? ConvRootKind::interval_triangle : ConvRootKind::ball_radial;
      break;
    default:
      throw std::invalid_argument("conv_root: unsupported shape " + to_string(domain_.shape()));
  }
  b_ = domain_.volume() / std::pow(2.0, domain_.dim());
}

double ConvRoot::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != domain_.dim()) throw std::invalid_argument("ConvRoot: dimension mismatch");
  const double delta = domain_.delta();
  if (kind_ == ConvRootKind::ball_radial) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return radial(std::sqrt(r2));
  }
  double value = 1.0;
  for (double v : x) value *= std::max(0.0, 1.0 - std::abs(v) / delta);
  return value;
}

double ConvRoot::radial(double r) const {
  const double delta = domain_.delta();
  const int n = domain_.dim();
  if (r >= delta) return 0.0;
  if (n == 1 || kind_ != ConvRootKind::ball_radial) return 1.0 - r / delta;
  if (r == 0.0) return 1.0;
  // overlap of two balls of radius δ/2 at distance r, as a fraction of one
  const double upper = std::acos(r / delta);
  auto cap = integrate_adaptive<double>([n](double t) { return std::pow(std::sin(t), n); }, 0.0, upper, 1e-10, 1e-300);
  return 2.0 * unit_ball_volume(n - 1) / unit_ball_volume(n) * cap.value;
}

double ConvRoot::radial_fourier(double rho) const {
  const double delta = domain_.delta();
  const int n = domain_.dim();
  const double lam = normalized_bessel(n / 2.0, kPi * delta * rho);
  return b_ * lam * lam;
}

double ConvRoot::fourier(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != domain_.dim()) throw std::invalid_argument("ConvRoot: dimension mismatch");
  const double delta = domain_.delta();
  if (kind_ == ConvRootKind::ball_radial) {
    double r2 = 0.0;
    for (double v : xi) r2 += v * v;
    return radial_fourier(std::sqrt(r2));
  }
  double value = 1.0;
  for (double v : xi) {
    const double z = kPi * delta * v;
    const double s = z == 0.0 ? 1.0 : std::sin(z) / z;
    value *= delta * s * s;
  }
  return value;
}

// ---- periodized mollifier -------------------------------------------------

double mollifier_hat(int dim, double radius) {
  const double z = kPi * std::abs(radius);
  double lam;
  if (dim == 1) {
    lam = z == 0.0 ? 1.0 : std::sin(z) / z;
  } else if (dim == 3 && z > 0.5) {
    lam = 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
  } else {
    lam = normalized_bessel(dim / 2.0, z);
  }
  return lam * lam;
}

double mollifier_tail_l1(double epsilon, int dim, int freq_cutoff) {
  return tail_l1_at(epsilon, dim, effective_radius(dim, freq_cutoff), 1);
}

double mollifier_tail_l2(double epsilon, int dim, int freq_cutoff) {
  return std::sqrt(tail_l2_sq_at(epsilon, dim, effective_radius(dim, freq_cutoff), 1));
}

double mollifier_norm_sq(double epsilon, int dim) {
  if (dim < 1) throw std::invalid_argument("mollifier_norm_sq: dimension must be >= 1");
  // largest box that fits the term budget, at most 64/ε
  int bound = static_cast<int>(std::ceil(64.0 / epsilon));
  while (std::pow(2.0 * bound + 1.0, dim) > 4e6 && bound > 1) bound = bound * 3 / 4;
  RadialCache cache(dim, epsilon, static_cast<long long>(dim) * bound * bound);
  double sum = 0.0;
  for_each_box_point(dim, bound, [&](const std::vector<int>& m) {
    long long r2 = 0;
    for (int v : m) r2 += static_cast<long long>(v) * v;
    const double v = cache(r2);
    sum += v * v;
  });
  return sum + tail_l2_sq_at(epsilon, dim, effective_radius(dim, bound), 1);
}

namespace {

int cutoff_search(double epsilon, int dim, double tail_tol, int stride) {
  if (!(tail_tol > 0.0)) throw std::invalid_argument("periodize: tail tolerance must be positive");
  // ‖ψ_ε‖² over stride·Z^n is about stride^{-n} ε^{-n} ‖φ‖²; the sum below
  // underestimates it, which only makes the search conservative.
  const double norm_sq = mollifier_norm_sq(epsilon, dim) / std::pow(stride, dim);
  int cutoff = std::max(4, static_cast<int>(std::ceil(1.0 / epsilon)));
  cutoff = (cutoff + stride - 1) / stride * stride;
  while (true) {
    if (terms_for(dim, cutoff, stride) > kMaxTerms) {
      throw std::invalid_argument("periodize: frequency cutoff too small for tail tolerance " +
                                  std::to_string(tail_tol) + " within the term budget");
    }
    const double tail = std::sqrt(tail_l2_sq_at(epsilon, dim, effective_radius(dim, cutoff), stride));
    if (tail < tail_tol * std::sqrt(norm_sq)) return cutoff;
    cutoff *= 2;
  }
}

}  // namespace

int default_freq_cutoff(double epsilon, int dim, double tail_tol) {
  check_epsilon(epsilon, 0.5, "periodize");
  return cutoff_search(epsilon, dim, tail_tol, 1);
}

Truncation periodize(double epsilon, int dim, int freq_cutoff, std::optional<double> tail_tol) {
  check_epsilon(epsilon, 0.5, "periodize");
  if (dim < 1) throw std::invalid_argument("periodize: dimension must be >= 1");
  if (freq_cutoff < 0) throw std::invalid_argument("periodize: frequency cutoff must be >= 0");
  if (freq_cutoff == 0) freq_cutoff = default_freq_cutoff(epsilon, dim, tail_tol.value_or(1e-8));
  if (terms_for(dim, freq_cutoff, 1) > kMaxTerms) throw std::invalid_argument("periodize: too many terms");

  Truncation out;
  out.freq_cutoff = freq_cutoff;
  double sum_sq = 0.0;
  out.poly = build_radial(dim, epsilon, freq_cutoff, 1, &sum_sq);
  const double radius = effective_radius(dim, freq_cutoff);
  out.tail_l1 = tail_l1_at(epsilon, dim, radius, 1);
  out.tail_l2_rel = std::sqrt(tail_l2_sq_at(epsilon, dim, radius, 1) / sum_sq);
  if (tail_tol && out.tail_l2_rel >= *tail_tol) {
    throw std::invalid_argument("periodize: frequency cutoff " + std::to_string(freq_cutoff) +
                                " too small for tail tolerance " + std::to_string(*tail_tol));
  }
  return out;
}

// ---- lattice comb -----------------------------------------------------------

bool lattice_indicator(int q, std::span<const int> nu) {
  if (q < 1) throw std::invalid_argument("lattice_indicator: q must be >= 1");
  return std::all_of(nu.begin(), nu.end(), [q](int v) { return v % q == 0; });
}

double lattice_character_sum(int q, std::span<const int> nu) {
  if (q < 1) throw std::invalid_argument("lattice_character_sum: q must be >= 1");
  const int n = static_cast<int>(nu.size());
  Complex sum(0.0);
  long long count = 0;
  std::vector<int> gamma(n, 0);
  while (true) {
    long long dot = 0;
    for (int k = 0; k < n; ++k) dot += static_cast<long long>(gamma[k]) * nu[k];
    const double phase = static_cast<double>(((dot % q) + q) % q) / q;
    sum += std::polar(1.0, 2.0 * kPi * phase);
    ++count;
    int k = n - 1;
    while (k >= 0 && gamma[k] == q - 1) gamma[k--] = 0;
    if (k < 0) break;
    ++gamma[k];
  }
  return sum.real() / static_cast<double>(count);
}

int comb_default_cutoff(int q, int dim, double epsilon) {
  if (q < 2) throw std::invalid_argument("lattice_comb: q must be >= 2");
  if (dim < 1) throw std::invalid_argument("lattice_comb: dimension must be >= 1");
  check_epsilon(epsilon, 1.0 / (2.0 * q), "lattice_comb");
  const double wanted = std::ceil(kCombCutoffScale / epsilon / q);
  int bound = static_cast<int>(std::min(wanted, 1e9));
  while (terms_for(dim, bound, 1) > kMaxTerms) bound = bound * 3 / 4;
  return bound * q;
}

LatticeComb lattice_comb(int q, int dim, double epsilon, int freq_cutoff) {
  if (q < 2) throw std::invalid_argument("lattice_comb: q must be >= 2");
  if (dim < 1) throw std::invalid_argument("lattice_comb: dimension must be >= 1");
  check_epsilon(epsilon, 1.0 / (2.0 * q), "lattice_comb");
  if (freq_cutoff < 0) throw std::invalid_argument("lattice_comb: frequency cutoff must be >= 0");
  if (freq_cutoff == 0) freq_cutoff = comb_default_cutoff(q, dim, epsilon);
  if (terms_for(dim, freq_cutoff, q) > kMaxTerms) throw std::invalid_argument("lattice_comb: too many terms");

  LatticeComb comb;
  comb.q = q;
  comb.dim = dim;
  comb.epsilon = epsilon;
  const int bound = freq_cutoff / q;
  double sum_sq = 0.0;
  comb.truncation.poly = build_radial(dim, epsilon, bound, q, &sum_sq);
  comb.truncation.freq_cutoff = freq_cutoff;
  const double radius = dim == 1 ? q * bound : q * bound - q * std::sqrt(static_cast<double>(dim)) / 2.0;
  comb.truncation.tail_l1 = tail_l1_at(epsilon, dim, radius, q);
  comb.truncation.tail_l2_rel = std::sqrt(tail_l2_sq_at(epsilon, dim, radius, q) / sum_sq);
  return comb;
}

// ---- mollification ----------------------------------------------------------

Mollified mollify(const TrigPolynomial& f, double epsilon) {
  if (!f.positive_definite()) throw std::invalid_argument("mollify: f must be marked positive definite");
  check_epsilon(epsilon, 0.5, "mollify");
  const int n = f.dim();
  Mollified out;
  out.b = 1.0 / std::sqrt(mollifier_norm_sq(epsilon, n));
  TrigPolynomial::Builder builder(n);
  builder.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto nu = f.frequency(i);
    double r2 = 0.0;
    for (int v : nu) r2 += static_cast<double>(v) * v;
    builder.add(nu, out.b * f.coefficient(i) * mollifier_hat(n, epsilon * std::sqrt(r2)));
  }
  out.poly = std::move(builder).build(f.marks());
  return out;
}

}  // namespace pdw
