#include "pdw/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "pdw/constructions.hpp"
#include "pdw/delsarte.hpp"
#include "pdw/errors.hpp"
#include "pdw/harmonic.hpp"
#include "pdw/quadrature.hpp"

namespace pdw {

namespace {

constexpr double kPi = std::numbers::pi;
// p-ratio checks square the comb, so its size is capped
constexpr double kPCheckTerms = 2e4;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, int i) { return splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(i)); }

int sample_degree(int dim, int i) {
  if (dim == 1) return 1 + i % 8;
  if (dim == 2) return 1 + i % 4;
  return 1 + i % 2;
}

// Runs body(i) for i in [0, count) on up to `threads` workers; each index is
// written by exactly one worker.
template <typename Body>
void parallel_for(int count, int threads, Body&& body) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

template <typename Check>
SuiteResult run_suite(int samples, int threads, Check&& check) {
  std::vector<double> score(samples);
  std::vector<char> ok(samples);
  parallel_for(samples, threads, [&](int i) {
    auto [value, pass] = check(i, nullptr);
    score[i] = value;
    ok[i] = pass;
  });
  SuiteResult out;
  out.samples = samples;
  for (int i = 0; i < samples; ++i) {
    out.worst = std::max(out.worst, score[i]);
    if (ok[i]) continue;
    if (out.failures++ == 0) {
      TrigPolynomial f;
      check(i, &f);
      out.first_failure = std::move(f);
    }
  }
  return out;
}

void check_lattice_domain(const Domain& domain, int q, const char* what) {
  if (q < 2) throw std::invalid_argument(std::string(what) + ": q must be >= 2");
  if (!(domain.cube_halfwidth() < 1.0 / q)) {
    throw std::invalid_argument(std::string(what) + ": domain must lie in δI^n with δ < 1/q");
  }
}

}  // namespace

DomainDescriptor DomainDescriptor::of(const Domain& domain) {
  DomainDescriptor d;
  d.shape = to_string(domain.shape());
  d.delta = domain.shape() == Shape::product ? domain.cube_halfwidth() : domain.delta();
  d.dim = domain.dim();
  d.text = domain.describe();
  return d;
}

void check_sandwich(const BoundReport& report) {
  const double top = std::pow(2.0, report.domain.dim) + 1e-9;
  const double lo = report.lower.value, hi = report.upper.value;
  if (!(lo >= 1.0 - 1e-9) || !(lo <= hi + 1e-9) || !(hi <= top)) {
    throw SolverDefect("bound report out of order for " + report.domain.text + ": lower " + std::to_string(lo) +
                       ", upper " + std::to_string(hi));
  }
}

double default_comb_epsilon(const Domain& domain, int q) {
  check_lattice_domain(domain, q, "default_comb_epsilon");
  return 0.9 * std::min(domain.inradius(), 1.0 / q - domain.cube_halfwidth());
}

int default_lattice_q(const Domain& domain) {
  const double delta = domain.cube_halfwidth();
  if (!(delta < 0.5)) throw std::invalid_argument("default_lattice_q: domain must lie in δI^n with δ < 1/2");
  int q = static_cast<int>(std::floor(1.0 / delta));
  while (q > 2 && !(delta < 1.0 / q)) --q;
  return std::max(q, 2);
}

LatticeLowerBound wiener_lower_lattice(const Domain& domain, int q, double epsilon, int freq_cutoff) {
  check_lattice_domain(domain, q, "wiener_lower_lattice");
  const double eps_max = std::min(domain.inradius(), 1.0 / q - domain.cube_halfwidth());
  if (epsilon == 0.0) epsilon = default_comb_epsilon(domain, q);
  if (!(epsilon > 0.0) || !(epsilon < eps_max)) {
    throw std::invalid_argument("wiener_lower_lattice: epsilon must lie in (0, " + std::to_string(eps_max) + ")");
  }
  const auto comb = lattice_comb(q, domain.dim(), epsilon, freq_cutoff);
  LatticeLowerBound out;
  out.q = q;
  out.epsilon = epsilon;
  out.freq_cutoff = comb.truncation.freq_cutoff;
  out.terms = comb.poly().size();
  out.value = domain.volume() * std::pow(q, domain.dim());
  out.numeric = rayleigh_quotient(comb.poly(), domain);
  out.rel_error = std::abs(out.numeric / out.value - 1.0);
  if (out.rel_error > kLatticeAgreementTol) {
    throw SolverDefect("wiener_lower_lattice: comb ratio " + std::to_string(out.numeric) + " disagrees with |D|q^n = " +
                       std::to_string(out.value));
  }
  return out;
}

BoundSide wiener_upper(const Domain& domain, const UpperOptions& options) {
  const int n = domain.dim();
  BoundSide best;
  best.value = std::pow(2.0, n);
  best.method = "hlawka";
  auto offer = [&](double value, const char* method, std::map<std::string, double> params) {
    if (value <= best.value + 1e-9) {
      best.value = std::min(best.value, value);
      best.method = method;
      best.params = std::move(params);
    }
  };
  const bool interval = n == 1 && domain.shape() != Shape::product;
  if ((domain.shape() == Shape::cube || interval) && domain.delta() <= 0.5) {
    const auto est = turan_cube(domain.delta(), n, options.turan_grid, options.turan_freq);
    if (est.certified) {
      offer(domain.volume() / est.lower, "turan",
            {{"a_lower", est.lower}, {"grid_size", est.grid_size}, {"freq_bound", est.freq_bound},
             {"min_residual", est.min_residual}});
    }
  }
  if (domain.shape() == Shape::ball && n <= kDelsarteMaxDim && domain.delta() < 0.5) {
    const int basis = options.delsarte_basis ? options.delsarte_basis : kDelsarteBasisSize;
    const int grid = options.delsarte_grid ? options.delsarte_grid : kDelsarteGridSize;
    const auto ball = wiener_upper_ball(n, domain.delta(), basis, grid);
    if (ball.lp_certified) {
      offer(ball.lp_value, "delsarte",
            {{"lp_value", ball.lp.value}, {"basis_size", basis}, {"grid_size", grid},
             {"fourier_min", ball.lp.fourier_min}, {"spatial_max", ball.lp.spatial_max}});
    }
  }
  return best;
}

BoundReport wiener_bounds(const Domain& domain, int q, double epsilon, const UpperOptions& options) {
  BoundReport report;
  report.domain = DomainDescriptor::of(domain);
  if (q == 0) q = default_lattice_q(domain);
  const auto comb = wiener_lower_lattice(domain, q, epsilon);
  if (comb.value > 1.0) {
    report.lower = {comb.value, "lattice-comb",
                    {{"q", comb.q}, {"epsilon", comb.epsilon}, {"freq_cutoff", comb.freq_cutoff}}};
  } else {
    report.lower = {1.0, "constant-one", {}};
  }
  report.residuals["comb_numeric"] = comb.numeric;
  report.residuals["comb_rel_error"] = comb.rel_error;
  report.upper = wiener_upper(domain, options);
  for (const auto& [key, value] : report.upper.params) {
    if (key == "min_residual" || key == "fourier_min" || key == "spatial_max") report.residuals[key] = value;
  }
  check_sandwich(report);
  return report;
}

ThetaEstimate theta(double delta, int grid_size, int freq_bound) {
  if (!(delta > 0.0) || delta > 0.5) throw std::invalid_argument("theta: delta must be in (0, 0.5]");
  ThetaEstimate out;
  out.delta = delta;
  out.turan = turan_lp_lower(delta, grid_size, freq_bound);
  out.value = 1.0 - delta / out.turan.lower;
  out.certified = out.turan.certified;
  return out;
}

BoundReport cube_wiener_sandwich(int q, int dim, double probe) {
  if (q < 3) throw std::invalid_argument("cube_wiener_sandwich: q must be >= 3");
  if (dim < 1) throw std::invalid_argument("cube_wiener_sandwich: dimension must be >= 1");
  if (!(probe > 0.0) || !(probe < 1.0 / q)) {
    throw std::invalid_argument("cube_wiener_sandwich: probe must lie in (0, 1/q)");
  }
  BoundReport report;
  report.domain = DomainDescriptor::of(Domain::cube(dim, 1.0 / q));
  const double top = std::pow(2.0, dim);
  report.lower = {top * std::pow(probe * q, dim), "cube-formula", {{"q", q}, {"probe", probe}}};
  report.upper = {top, "hlawka", {}};
  report.residuals["gap"] = top * (1.0 - std::pow(probe * q, dim));
  check_sandwich(report);
  return report;
}

double p_rayleigh_quotient(const TrigPolynomial& f, const Domain& domain, int p) {
  if (p < 2 || p % 2) throw std::invalid_argument("p_rayleigh_quotient: p must be an even integer >= 2");
  if (!f.real_valued()) throw std::invalid_argument("p_rayleigh_quotient: f must be marked real valued");
  return rayleigh_quotient(p == 2 ? f : power(f, p / 2), domain);
}

BoundReport wiener_p_bounds(int dim, int p, const Domain& domain, int q) {
  if (p < 2 || p % 2) throw std::invalid_argument("wiener_p_bounds: p must be an even integer >= 2");
  if (domain.dim() != dim) throw std::invalid_argument("wiener_p_bounds: dimension mismatch");
  check_lattice_domain(domain, q, "wiener_p_bounds");
  BoundReport report;
  report.domain = DomainDescriptor::of(domain);
  const double closed = domain.volume() * std::pow(q, dim);
  report.lower = {closed, "lattice-comb", {{"q", q}, {"p", p}}};
  report.upper = wiener_upper(domain);

  const double epsilon = default_comb_epsilon(domain, q);
  int cutoff = comb_default_cutoff(q, dim, epsilon);
  if (p > 2) {
    const int bound = static_cast<int>((std::pow(kPCheckTerms, 1.0 / dim) - 1.0) / 2.0);
    cutoff = std::min(cutoff, std::max(bound, 1) * q);
  }
  const auto comb = lattice_comb(q, dim, epsilon, cutoff);
  const double ratio_p = p_rayleigh_quotient(comb.poly(), domain, p);
  const double ratio_2 = p_rayleigh_quotient(comb.poly(), domain, 2);
  report.lower.params["epsilon"] = epsilon;
  report.lower.params["freq_cutoff"] = cutoff;
  report.residuals["p_ratio"] = ratio_p;
  report.residuals["p_ratio_rel_error"] = std::abs(ratio_p / closed - 1.0);
  report.residuals["p2_ratio_rel_error"] = std::abs(ratio_2 / closed - 1.0);
  report.certified = report.residuals["p_ratio_rel_error"] <= kLatticeAgreementTol &&
                     report.residuals["p2_ratio_rel_error"] <= kLatticeAgreementTol;
  if (report.lower.value < 1.0) report.lower = {1.0, "constant-one", {}};
  check_sandwich(report);
  return report;
}

HlawkaCheck hlawka_verify(const TrigPolynomial& f, const Domain& domain) {
  if (!f.positive_definite()) throw std::invalid_argument("hlawka_verify: f must be marked positive definite");
  HlawkaCheck out;
  out.torus = norm_sq_torus(f);
  const double local = norm_sq_domain(f, domain);
  const double half = domain.volume() / std::pow(2.0, domain.dim());
  out.bound = local / half;
  out.ratio = local > 0.0 ? out.torus * domain.volume() / local : INFINITY;
  out.pass = out.torus <= out.bound * (1.0 + 1e-9);
  return out;
}

SuiteResult hlawka_suite(std::uint64_t seed, int samples, int dim, double delta, int threads) {
  if (samples < 0) throw std::invalid_argument("hlawka_suite: samples must be >= 0");
  const Domain domain = Domain::cube(dim, delta);
  return run_suite(samples, threads, [&](int i, TrigPolynomial* keep) {
    auto f = random_pd_poly(sample_seed(seed, i), dim, sample_degree(dim, i), 1.0);
    const auto check = hlawka_verify(f, domain);
    if (keep) *keep = std::move(f);
    return std::pair{check.ratio, check.pass};
  });
}

SuiteResult parseval_suite(std::uint64_t seed, int samples, int dim, int threads) {
  if (samples < 0) throw std::invalid_argument("parseval_suite: samples must be >= 0");
  if (dim < 1 || dim > 3) throw std::invalid_argument("parseval_suite: dimension must be in [1, 3]");
  return run_suite(samples, threads, [&](int i, TrigPolynomial* keep) {
    auto f = random_pd_poly(sample_seed(seed, i), dim, sample_degree(dim, i), 1.0);
    // |f|² has frequencies up to 2·degree, so M = 2·degree + 1 points per axis
    // average every nonconstant character to zero
    const int m = 2 * f.max_abs_frequency() + 1;
    std::vector<int> idx(dim, 0);
    std::vector<double> x(dim);
    double mean = 0.0;
    long long points = 0;
    while (true) {
      for (int k = 0; k < dim; ++k) x[k] = static_cast<double>(idx[k]) / m;
      mean += std::norm(evaluate(f, x));
      ++points;
      int k = dim - 1;
      while (k >= 0 && idx[k] == m - 1) idx[k--] = 0;
      if (k < 0) break;
      ++idx[k];
    }
    mean /= static_cast<double>(points);
    const double parseval = norm_sq_torus(f);
    const double err = std::abs(mean - parseval) / parseval;
    if (keep) *keep = std::move(f);
    return std::pair{err, err <= 1e-10};
  });
}

RealLineRatio realline_counterexample(double radius, int dim) {
  if (!(radius > 0.0)) throw std::invalid_argument("realline_counterexample: radius must be positive");
  if (dim != 1 && dim != 2) throw std::invalid_argument("realline_counterexample: dimension must be 1 or 2");
  RealLineRatio out;
  out.radius = radius;
  out.dim = dim;
  const double w = 2.0 * radius;  // support radius of f
  if (dim == 1) {
    // f = (1 - |x|/w)_+
    out.full = 2.0 * w / 3.0;
    const double t = std::min(0.5, w);
    out.local = 2.0 * w / 3.0 * (1.0 - std::pow(1.0 - t / w, 3));
    out.mass = w;
  } else {
    const ConvRoot root(Domain::ball(2, w));
    auto sq = [&](double r) { const double v = root.radial(r); return v * v; };
    out.full = 2.0 * kPi * integrate_adaptive([&](double r) { return sq(r) * r; }, 0.0, w, 1e-12).value;
    out.mass = 2.0 * kPi * integrate_adaptive([&](double r) { return root.radial(r) * r; }, 0.0, w, 1e-12).value;
    auto inner = [&](double x) {
      const double edge = x < w ? std::sqrt(w * w - x * x) : 0.0;
      const double top = std::min(0.5, edge);
      if (top <= 0.0) return 0.0;
      return integrate_adaptive([&](double y) { return sq(std::hypot(x, y)); }, 0.0, top, 1e-12).value;
    };
    out.local = 4.0 * integrate_adaptive(inner, 0.0, std::min(0.5, w), 1e-11).value;
  }
  out.ratio = out.full / out.local;
  return out;
}

double TriangleMixture::operator()(double x) const {
  double v = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) v += weights[i] * std::max(0.0, 1.0 - std::abs(x) / halfwidths[i]);
  return v;
}

double TriangleMixture::support() const {
  return halfwidths.empty() ? 0.0 : *std::max_element(halfwidths.begin(), halfwidths.end());
}

TriangleMixture random_triangle_mixture(std::uint64_t seed, int max_terms) {
  if (max_terms < 1) throw std::invalid_argument("random_triangle_mixture: max_terms must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, max_terms);
  std::uniform_real_distribution<double> weight(0.1, 1.0), width(0.05, 3.0);
  TriangleMixture f;
  const int terms = count(rng);
  for (int i = 0; i < terms; ++i) {
    f.weights.push_back(weight(rng));
    f.halfwidths.push_back(width(rng));
  }
  return f;
}

namespace {

// ∫_lo^hi f² exactly: f² is quadratic between breakpoints, so a 3-point
// Gauss-Legendre rule per piece is exact.
double integrate_sq(const TriangleMixture& f, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (double a : f.halfwidths) {
    for (double c : {-a, 0.0, a}) {
      if (c > lo && c < hi) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  static const auto rule = gauss_legendre<double>(3);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += composite_gauss_legendre([&](double x) { const double v = f(x); return v * v; }, cuts[i], cuts[i + 1], 1, rule);
  }
  return sum;
}

}  // namespace

RealLineCheck realline_inequality_check(const TriangleMixture& f, double delta, int cells) {
  if (!(delta > 0.0) || !(delta < 0.5)) throw std::invalid_argument("realline_inequality_check: delta must be in (0, 0.5)");
  if (f.weights.size() != f.halfwidths.size() || f.weights.empty()) {
    throw std::invalid_argument("realline_inequality_check: malformed test function");
  }
  for (std::size_t i = 0; i < f.weights.size(); ++i) {
    if (!(f.weights[i] >= 0.0) || !(f.halfwidths[i] > 0.0)) {
      throw std::invalid_argument("realline_inequality_check: weights must be >= 0 and half-widths > 0");
    }
  }
  const double s = f.support();
  const int needed = static_cast<int>(std::ceil(s + delta)) - 1;
  if (cells < needed) {
    throw std::invalid_argument("realline_inequality_check: K_cells = " + std::to_string(cells) +
                                " misses supp f; need at least " + std::to_string(needed));
  }
  RealLineCheck out;
  out.cells = cells;
  out.lhs = integrate_sq(f, -s, s);
  double local = 0.0;
  for (int k = -cells; k <= cells; ++k) local += integrate_sq(f, k - delta, k + delta);
  out.rhs = local / delta;
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

}  // namespace pdw
