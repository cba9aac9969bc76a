#include "pdw/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "pdw/errors.hpp"

namespace pdw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDenseVolumeLimit = 2e7;
constexpr double kPairWorkLimit = 1e12;
// axes longer than this apply their Toeplitz kernel by circulant embedding
constexpr int kFftAxisLength = 256;

// ∫_{-a}^{a} e(λx) dx
double box_kernel(long long lambda, double a) {
  if (lambda == 0) return 2.0 * a;
  return std::sin(2.0 * kPi * static_cast<double>(lambda) * a) / (kPi * static_cast<double>(lambda));
}

struct AxisGrid {
  int lo = 0;
  int step = 1;
  int count = 1;
};

std::vector<AxisGrid> strided_grid(const TrigPolynomial& f) {
  const int n = f.dim();
  std::vector<AxisGrid> grid(n);
  for (int k = 0; k < n; ++k) {
    int lo = f.frequency(0)[k], hi = lo;
    for (std::size_t i = 0; i < f.size(); ++i) {
      lo = std::min(lo, f.frequency(i)[k]);
      hi = std::max(hi, f.frequency(i)[k]);
    }
    int g = 0;
    for (std::size_t i = 0; i < f.size(); ++i) g = std::gcd(g, f.frequency(i)[k] - lo);
    grid[k].lo = lo;
    grid[k].step = g == 0 ? 1 : g;
    grid[k].count = (hi - lo) / grid[k].step + 1;
  }
  return grid;
}

// c^H (K_1 ⊗ ... ⊗ K_n) c with the coefficients laid out on a dense strided box.
double box_dense(const TrigPolynomial& f, std::span<const double> halfwidths, const std::vector<AxisGrid>& grid) {
  const int n = f.dim();
  std::vector<std::size_t> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * grid[k + 1].count;
  const std::size_t volume = stride[0] * grid[0].count;

  std::vector<Complex> coeffs(volume, Complex(0.0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t idx = 0;
    auto nu = f.frequency(i);
    for (int k = 0; k < n; ++k) idx += static_cast<std::size_t>((nu[k] - grid[k].lo) / grid[k].step) * stride[k];
    coeffs[idx] = f.coefficient(i);
  }
  std::vector<Complex> work = coeffs;

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  for (int k = 0; k < n; ++k) {
    const int m = grid[k].count;
    const std::size_t post = stride[k];
    const std::size_t pre = volume / (post * m);
    if (m > kFftAxisLength) {
      std::size_t size = 1;
      while (size < 2 * static_cast<std::size_t>(m)) size *= 2;
      std::vector<Complex> symbol(size, Complex(0.0)), spectrum;
      for (int d = 0; d < m; ++d) {
        symbol[d] = box_kernel(static_cast<long long>(d) * grid[k].step, halfwidths[k]);
        if (d > 0) symbol[size - d] = symbol[d];
      }
      Eigen::FFT<double> fft;
      fft.fwd(spectrum, symbol);
      std::vector<Complex> line(size), freq, back;
      for (std::size_t p = 0; p < pre; ++p) {
        for (std::size_t r = 0; r < post; ++r) {
          Complex* base = work.data() + p * m * post + r;
          std::fill(line.begin(), line.end(), Complex(0.0));
          for (int a = 0; a < m; ++a) line[a] = base[a * post];
          fft.fwd(freq, line);
          for (std::size_t i = 0; i < size; ++i) freq[i] *= spectrum[i];
          fft.inv(back, freq);
          for (int a = 0; a < m; ++a) base[a * post] = back[a];
        }
      }
      continue;
    }
    Eigen::MatrixXd kernel(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        kernel(a, b) = box_kernel(static_cast<long long>(a - b) * grid[k].step, halfwidths[k]);
    RowMajor tmp(m, 2 * post);
    double* data = reinterpret_cast<double*>(work.data());
    for (std::size_t p = 0; p < pre; ++p) {
      Eigen::Map<RowMajor> block(data + 2 * p * m * post, m, 2 * static_cast<Eigen::Index>(post));
      tmp.noalias() = kernel * block;
      block = tmp;
    }
  }
  double q = 0.0;
  for (std::size_t i = 0; i < volume; ++i) q += coeffs[i].real() * work[i].real() + coeffs[i].imag() * work[i].imag();
  return q;
}

double box_pairs(const TrigPolynomial& f, std::span<const double> halfwidths) {
  const int n = f.dim();
  const auto grid = strided_grid(f);
  // per-axis kernel tables indexed by λ + span
  std::vector<std::vector<double>> tables(n);
  std::vector<int> spans(n);
  for (int k = 0; k < n; ++k) {
    spans[k] = (grid[k].count - 1) * grid[k].step;
    tables[k].resize(2 * spans[k] + 1);
    for (int l = -spans[k]; l <= spans[k]; ++l) tables[k][l + spans[k]] = box_kernel(l, halfwidths[k]);
  }
  double q = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto nu = f.frequency(i);
    const Complex ci = f.coefficient(i);
    for (std::size_t j = 0; j < f.size(); ++j) {
      auto mu = f.frequency(j);
      double kern = 1.0;
      for (int k = 0; k < n; ++k) kern *= tables[k][nu[k] - mu[k] + spans[k]];
      const Complex cj = f.coefficient(j);
      q += kern * (ci.real() * cj.real() + ci.imag() * cj.imag());
    }
  }
  return q;
}

// ---- iterated quadrature -------------------------------------------------

struct SliceLevel {
  int dim = 0;
  std::vector<int> keys;        // count × dim, sorted
  std::vector<int> first;       // first coordinate of each key
  std::vector<int> tail_index;  // position of the key's tail in the next level
  int bandwidth = 0;            // max |first|
  std::size_t count() const { return first.empty() ? keys.size() / dim : first.size(); }
};

std::vector<SliceLevel> build_slice_plan(const TrigPolynomial& f) {
  const int n = f.dim();
  std::vector<SliceLevel> levels(n);
  levels[0].dim = n;
  levels[0].keys.assign(f.frequencies().begin(), f.frequencies().end());
  for (int l = 0; l + 1 < n; ++l) {
    auto& cur = levels[l];
    auto& next = levels[l + 1];
    next.dim = cur.dim - 1;
    const std::size_t count = cur.keys.size() / cur.dim;
    const auto d = static_cast<std::size_t>(cur.dim);
    auto tail = [&](std::size_t j) { return std::span<const int>(cur.keys.data() + j * d + 1, d - 1); };
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      auto ta = tail(a), tb = tail(b);
      return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
    });
    cur.first.resize(count);
    cur.tail_index.resize(count);
    int unique = -1;
    for (std::size_t r = 0; r < count; ++r) {
      const std::size_t j = order[r];
      if (r == 0 || !std::equal(tail(j).begin(), tail(j).end(), tail(order[r - 1]).begin())) {
        ++unique;
        next.keys.insert(next.keys.end(), tail(j).begin(), tail(j).end());
      }
      cur.tail_index[j] = unique;
      cur.first[j] = cur.keys[j * d];
      cur.bandwidth = std::max(cur.bandwidth, std::abs(cur.first[j]));
    }
  }
  return levels;
}

enum class AxisKind { cube, ball_inner, ball_last };

struct AxisSpec {
  AxisKind kind = AxisKind::cube;
  double size = 0.0;  // half-width or block radius
  bool block_start = false;
};

std::vector<AxisSpec> axis_specs(const Domain& domain) {
  std::vector<AxisSpec> axes;
  for (const auto& factor : domain.factors()) {
    for (int k = 0; k < factor.dim(); ++k) {
      AxisSpec a;
      a.size = factor.delta();
      a.block_start = k == 0;
      if (factor.shape() == Shape::cube || factor.dim() == 1) a.kind = AxisKind::cube;
      else a.kind = k + 1 < factor.dim() ? AxisKind::ball_inner : AxisKind::ball_last;
      axes.push_back(a);
    }
  }
  return axes;
}

class IteratedIntegrator {
 public:
  IteratedIntegrator(const TrigPolynomial& f, const Domain& domain, const QuadratureOptions& options)
      : plan_(build_slice_plan(f)), axes_(axis_specs(domain)), options_(options),
        rule_(gauss_legendre<double>(options.panel_order)) {
    buffers_.resize(plan_.size());
    for (std::size_t l = 0; l < plan_.size(); ++l) buffers_[l].resize(plan_[l].keys.size() / plan_[l].dim);
    buffers_[0].assign(f.coefficients().begin(), f.coefficients().end());
  }

  IntegrationResult<double> run() {
    IntegrationResult<double> out;
    double error = 0.0;
    int panels = 0;
    out.value = level(0, axes_[0].size, &error, &panels);
    out.error = error;
    out.intervals = panels;
    out.converged = converged_;
    return out;
  }

 private:
  double interval_closed_form(std::span<const Complex> values, double a) const {
    const auto& keys = plan_.back().keys;
    const std::size_t m = values.size();
    if (m == 0) return 0.0;
    const int span = keys.back() - keys.front();
    table_.resize(span + 1);
    for (int d = 0; d <= span; ++d) table_[d] = box_kernel(d, a);
    double q = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      q += std::norm(values[j]) * table_[0];
      double cross = 0.0;
      for (std::size_t l = j + 1; l < m; ++l) {
        cross += (values[j].real() * values[l].real() + values[j].imag() * values[l].imag()) *
                 table_[keys[l] - keys[j]];
      }
      q += 2.0 * cross;
    }
    return q;
  }

  // Integrates over coordinates l..n-1 given the current ball radius `rho`.
  double level(std::size_t l, double rho, double* error_out, int* panels_out) {
    const AxisSpec& axis = axes_[l];
    if (axis.block_start) rho = axis.size;
    if (l + 1 == plan_.size()) {
      return interval_closed_form(buffers_[l], axis.kind == AxisKind::cube ? axis.size : rho);
    }
    const SliceLevel& sl = plan_[l];
    double lo, hi, length;
    if (axis.kind == AxisKind::cube) {
      lo = -axis.size;
      hi = axis.size;
      length = 2.0 * axis.size;
    } else if (axis.kind == AxisKind::ball_inner) {
      lo = -kPi / 2;
      hi = kPi / 2;
      length = 2.0 * rho;
    } else {
      lo = -rho;
      hi = rho;
      length = 2.0 * rho;
    }
    auto integrand = [&](double t) {
      double x = t, weight = 1.0, next_rho = rho;
      if (axis.kind == AxisKind::ball_inner) {
        x = rho * std::sin(t);
        weight = rho * std::cos(t);
        next_rho = rho * std::cos(t);
      }
      auto& next = buffers_[l + 1];
      std::fill(next.begin(), next.end(), Complex(0.0));
      const auto& cur = buffers_[l];
      for (std::size_t j = 0; j < cur.size(); ++j) {
        double phase = sl.first[j] * x;
        phase -= std::round(phase);
        next[sl.tail_index[j]] += cur[j] * std::polar(1.0, 2.0 * kPi * phase);
      }
      return weight * level(l + 1, next_rho, nullptr, nullptr);
    };

    const double oscillations = 2.0 * sl.bandwidth * length;
    int panels = std::max(2, static_cast<int>(std::ceil(oscillations / 4.0)));
    panels = std::min(panels, options_.max_panels);
    double previous = composite_gauss_legendre(integrand, lo, hi, panels, rule_);
    while (true) {
      if (2 * panels > options_.max_panels) {
        converged_ = false;
        if (error_out) *error_out = std::abs(previous);
        if (panels_out) *panels_out = panels;
        return previous;
      }
      panels *= 2;
      const double current = composite_gauss_legendre(integrand, lo, hi, panels, rule_);
      const double diff = std::abs(current - previous);
      if (diff <= options_.rel_tol * std::abs(current) || diff == 0.0) {
        if (error_out) *error_out = diff;
        if (panels_out) *panels_out = panels;
        return current;
      }
      previous = current;
    }
  }

  std::vector<SliceLevel> plan_;
  std::vector<AxisSpec> axes_;
  QuadratureOptions options_;
  GaussLegendreRule<double> rule_;
  std::vector<std::vector<Complex>> buffers_;
  mutable std::vector<double> table_;
  bool converged_ = true;
};

void check_cell(const Domain& domain) {
  if (!domain.fits_in_cell()) {
    throw std::invalid_argument("domain " + domain.describe() + " exceeds the fundamental cell [-1/2, 1/2)^n");
  }
}

}  // namespace

double norm_sq_box(const TrigPolynomial& f, std::span<const double> halfwidths) {
  if (static_cast<int>(halfwidths.size()) != f.dim()) throw std::invalid_argument("norm_sq_box: dimension mismatch");
  if (f.empty()) return 0.0;
  const auto grid = strided_grid(f);
  double volume = 1.0, axis_work = 0.0;
  for (const auto& g : grid) {
    volume *= g.count;
    axis_work += g.count > kFftAxisLength ? 8.0 * std::log2(2.0 * g.count) : g.count;
  }
  const double pair_work = static_cast<double>(f.size()) * static_cast<double>(f.size()) * f.dim();
  if (volume <= kDenseVolumeLimit && volume * axis_work < pair_work) return box_dense(f, halfwidths, grid);
  if (pair_work > kPairWorkLimit) throw std::invalid_argument("norm_sq_box: polynomial too large for the closed form");
  return box_pairs(f, halfwidths);
}

IntegrationResult<double> norm_sq_domain_quadrature(const TrigPolynomial& f, const Domain& domain,
                                                    const QuadratureOptions& options) {
  if (f.dim() != domain.dim()) throw std::invalid_argument("norm_sq_domain: dimension mismatch");
  check_cell(domain);
  if (f.empty()) return {0.0, 0.0, 0, true};
  IteratedIntegrator integrator(f, domain, options);
  return integrator.run();
}

double norm_sq_domain(const TrigPolynomial& f, const Domain& domain, const QuadratureOptions& options) {
  if (f.dim() != domain.dim()) throw std::invalid_argument("norm_sq_domain: dimension mismatch");
  check_cell(domain);
  if (domain.is_box()) {
    const auto halfwidths = domain.box_halfwidths();
    return norm_sq_box(f, halfwidths);
  }
  return norm_sq_domain_quadrature(f, domain, options).value;
}

double rayleigh_quotient(const TrigPolynomial& f, const Domain& domain, const QuadratureOptions& options) {
  const double torus = norm_sq_torus(f);
  const double local = norm_sq_domain(f, domain, options);
  if (!(local > 1e-300) || local < 1e-14 * torus) {
    throw NumericalDegeneracy("rayleigh_quotient: f vanishes on " + domain.describe());
  }
  return torus * domain.volume() / local;
}

}  // namespace pdw
