// pdw: command-line front end for the Turán, Delsarte and Wiener solvers.
//
// Exit codes: 0 success, 1 invalid parameters, 2 result not certified (or an
// internal consistency check failed), 3 property violation in `verify`.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdw/constructions.hpp"
#include "pdw/delsarte.hpp"
#include "pdw/errors.hpp"
#include "pdw/report.hpp"
#include "pdw/special_functions.hpp"
#include "pdw/turan.hpp"
#include "pdw/wiener.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUncertified = 2;
constexpr int kViolation = 3;

struct Output {
  std::string format = "text";
  std::string path;
  std::string dump;
  std::string write_config;
};

int worker_count() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("PDW_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return threads;
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, os);
  } else if (j.is_number_float()) {
    os << prefix << ": " << pdw::format_double(j.get<double>()) << "\n";
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void write(const Output& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out.path);
  if (!file) throw std::invalid_argument("cannot open output file " + out.path);
  file << text;
}

// One writer: the whole document is assembled before anything is printed.
void emit(const Output& out, json doc, const std::vector<std::string>& rows) {
  doc["timestamp"] = pdw::utc_timestamp();
  std::ostringstream text;
  if (out.format == "json") {
    text << doc.dump(2) << "\n";
  } else if (out.format == "csv") {
    text << pdw::csv_header() << "\n";
    for (const auto& row : rows) text << row << "\n";
  } else {
    flatten(doc, "", text);
  }
  write(out, text.str());
}

void dump_text(const std::string& path, const std::string& body) {
  if (path.empty()) return;
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open dump file " + path);
  file << body;
}

pdw::Domain make_domain(const std::string& shape, int dim, double delta) {
  if (shape == "cube") return pdw::Domain::cube(dim, delta);
  if (shape == "ball") return pdw::Domain::ball(dim, delta);
  throw std::invalid_argument("domain must be cube or ball, got " + shape);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turán, Delsarte and Wiener constant estimates for positive definite functions"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML/INI file (flags take precedence)");
  Output out;
  app.add_option("--format", out.format, "report format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_option("--output", out.path, "write the report to a file instead of stdout");
  app.add_option("--dump-function", out.dump, "write the witness function in its canonical text form");
  app.add_option("--write-config", out.write_config, "write the options given on this run to a config file")->configurable(false);

  // Subcommands are configurable so that a written config file replays the
  // whole run, subcommand included.
  // turan
  auto* turan = app.add_subcommand("turan", "LP lower bound for the periodic Turán constant of [-δ, δ]^n");
  double t_delta = 0.0;
  int t_dim = 1, t_grid = 0, t_freq = 0;
  turan->add_option("--delta", t_delta, "half-width δ in (0, 1/2]")->required();
  turan->add_option("--dim", t_dim, "dimension n")->capture_default_str();
  turan->add_option("--grid", t_grid, "profile grid size M (0: default)")->capture_default_str();
  turan->add_option("--freq", t_freq, "frequency bound N (0: default)")->capture_default_str();

  // delsarte
  auto* delsarte = app.add_subcommand("delsarte", "Delsarte LP bound for the ball of radius r");
  int d_dim = 1, d_basis = pdw::kDelsarteBasisSize, d_grid = pdw::kDelsarteGridSize;
  double d_radius = 2.0;
  delsarte->add_option("--dim", d_dim, "dimension n <= 8")->capture_default_str();
  delsarte->add_option("--radius", d_radius, "ball radius r")->capture_default_str();
  delsarte->add_option("--basis", d_basis, "Laguerre basis size K")->capture_default_str();
  delsarte->add_option("--grid", d_grid, "constraint grid size G")->capture_default_str();

  // wiener
  auto* wiener = app.add_subcommand("wiener", "lower/upper sandwich for the Wiener constant W_n(D)");
  std::string w_shape = "cube";
  double w_delta = 0.0, w_epsilon = 0.0;
  int w_dim = 1, w_q = 0, w_p = 2;
  pdw::UpperOptions w_upper;
  wiener->add_option("--domain", w_shape, "cube or ball")->check(CLI::IsMember({"cube", "ball"}))->capture_default_str();
  wiener->add_option("--delta", w_delta, "half-width or radius δ")->required();
  wiener->add_option("--dim", w_dim, "dimension n")->capture_default_str();
  wiener->add_option("--q", w_q, "lattice order q (0: largest with δ < 1/q)")->capture_default_str();
  wiener->add_option("--epsilon", w_epsilon, "comb mollifier radius (0: default)")->capture_default_str();
  wiener->add_option("--p", w_p, "even exponent p for W_{n,p}")->capture_default_str();
  wiener->add_option("--turan-grid", w_upper.turan_grid)->capture_default_str();
  wiener->add_option("--turan-freq", w_upper.turan_freq)->capture_default_str();
  wiener->add_option("--basis", w_upper.delsarte_basis, "Delsarte basis size (0: default)")->capture_default_str();
  wiener->add_option("--grid", w_upper.delsarte_grid, "Delsarte grid size (0: default)")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "property suites");
  verify->require_subcommand(1);
  auto* v_hlawka = verify->add_subcommand("hlawka", "Hlawka's inequality on random positive definite polynomials");
  auto* v_realline = verify->add_subcommand("realline", "the real-line inequality on random triangle mixtures");
  auto* v_parseval = verify->add_subcommand("parseval", "Parseval against exact grid averages");
  int v_samples = 0, v_dim = 1, v_cells = 20;
  double v_delta = 0.25, v_rdelta = 0.3;
  std::uint64_t v_seed = 7;
  v_hlawka->add_option("--samples", v_samples, "number of polynomials (default 10000)");
  v_hlawka->add_option("--dim", v_dim)->capture_default_str();
  v_hlawka->add_option("--delta", v_delta, "cube half-width")->capture_default_str();
  v_hlawka->add_option("--seed", v_seed)->capture_default_str();
  v_realline->add_option("--samples", v_samples, "number of test functions (default 50)");
  v_realline->add_option("--cells", v_cells, "cells |k| <= K")->capture_default_str();
  v_realline->add_option("--delta", v_rdelta, "interval half-width")->capture_default_str();
  v_realline->add_option("--seed", v_seed)->capture_default_str();
  v_parseval->add_option("--samples", v_samples, "number of polynomials (default 100)");
  v_parseval->add_option("--dim", v_dim)->capture_default_str();
  v_parseval->add_option("--seed", v_seed)->capture_default_str();

  // demo-realline
  auto* demo = app.add_subcommand("demo-realline", "growth of the real-line ratio for f = |B_r|^-1 χ_r * χ_r");
  std::vector<double> demo_radii{1.0, 10.0, 100.0};
  int demo_dim = 1;
  demo->add_option("--radii", demo_radii, "radii r")->capture_default_str();
  demo->add_option("--dim", demo_dim, "dimension 1 or 2")->capture_default_str();

  for (auto* sub : {turan, delsarte, wiener, verify, v_hlawka, v_realline, v_parseval, demo}) sub->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (!out.write_config.empty()) {
      std::ofstream file(out.write_config);
      if (!file) throw std::invalid_argument("cannot open config file " + out.write_config);
      file << app.config_to_str(false, true);
    }

    if (turan->parsed()) {
      const auto est = pdw::turan_cube(t_delta, t_dim, t_grid, t_freq);
      json doc = pdw::to_json(est);
      doc["config"] = {{"delta", t_delta}, {"dim", t_dim}, {"grid", t_grid}, {"freq", t_freq}};
      std::ostringstream profile;
      profile.precision(17);
      for (int j = 0; j <= est.witness.grid_size; ++j) {
        profile << j * est.delta / est.witness.grid_size << " " << est.witness.values[j] << "\n";
      }
      dump_text(out.dump, profile.str());
      emit(out, doc, pdw::csv_rows(est));
      return est.certified ? kOk : kUncertified;
    }

    if (delsarte->parsed()) {
      if (d_dim > pdw::kDelsarteMaxDim) {
        throw std::invalid_argument("dimension " + std::to_string(d_dim) + " exceeds the design cap n <= " +
                                    std::to_string(pdw::kDelsarteMaxDim) + " (Laguerre basis conditioning)");
      }
      const auto bound = pdw::delsarte_lp(d_dim, d_radius, d_basis, d_grid);
      json doc = pdw::to_json(bound);
      doc["config"] = {{"dim", d_dim}, {"radius", d_radius}, {"basis", d_basis}, {"grid", d_grid}};
      doc["context"] = {{"levenshtein", pdw::levenshtein_center_density(d_dim)},
                        {"kabatiansky_levenshtein", pdw::kl_center_density(d_dim)},
                        {"ball_volume_times_value",
                         pdw::unit_ball_volume(d_dim) * std::pow(d_radius / 2.0, d_dim) * bound.value}};
      std::ostringstream coeffs;
      coeffs.precision(17);
      for (Eigen::Index k = 0; k < bound.witness.coefficients.size(); ++k) {
        coeffs << k << " " << bound.witness.coefficients(k) << "\n";
      }
      dump_text(out.dump, coeffs.str());
      emit(out, doc, pdw::csv_rows(bound));
      return bound.certified ? kOk : kUncertified;
    }

    if (wiener->parsed()) {
      const auto domain = make_domain(w_shape, w_dim, w_delta);
      const int q = w_q ? w_q : pdw::default_lattice_q(domain);
      const auto report = w_p == 2 ? pdw::wiener_bounds(domain, q, w_epsilon, w_upper)
                                   : pdw::wiener_p_bounds(w_dim, w_p, domain, q);
      json doc = pdw::to_json(report);
      doc["config"] = {{"domain", w_shape}, {"delta", w_delta}, {"dim", w_dim}, {"q", q}, {"epsilon", w_epsilon},
                       {"p", w_p}, {"turan_grid", w_upper.turan_grid}, {"turan_freq", w_upper.turan_freq},
                       {"basis", w_upper.delsarte_basis}, {"grid", w_upper.delsarte_grid}};
      if (!out.dump.empty()) {
        const double eps = w_epsilon ? w_epsilon : pdw::default_comb_epsilon(domain, q);
        dump_text(out.dump, pdw::to_text(pdw::lattice_comb(q, w_dim, eps).poly()));
      }
      emit(out, doc, pdw::csv_rows(report));
      return report.certified ? kOk : kUncertified;
    }

    if (verify->parsed()) {
      const int threads = worker_count();
      json doc{{"schema", pdw::kSchemaVersion}, {"kind", "verify"}};
      bool ok = true;
      std::string offending;
      if (v_hlawka->parsed() || v_parseval->parsed()) {
        const bool hlawka = v_hlawka->parsed();
        const int samples = v_samples ? v_samples : (hlawka ? 10000 : 100);
        const auto suite = hlawka ? pdw::hlawka_suite(v_seed, samples, v_dim, v_delta, threads)
                                  : pdw::parseval_suite(v_seed, samples, v_dim, threads);
        doc["suite"] = hlawka ? "hlawka" : "parseval";
        doc["config"] = {{"samples", samples}, {"dim", v_dim}, {"seed", v_seed}};
        if (hlawka) doc["config"]["delta"] = v_delta;
        doc["failures"] = suite.failures;
        doc[hlawka ? "worst_ratio" : "worst_rel_error"] = suite.worst;
        if (hlawka) doc["hlawka_bound"] = std::pow(2.0, v_dim);
        ok = suite.failures == 0;
        if (suite.first_failure) offending = pdw::to_text(*suite.first_failure);
      } else {
        const int samples = v_samples ? v_samples : 50;
        int failures = 0;
        double worst = INFINITY;
        for (int i = 0; i < samples; ++i) {
          const auto f = pdw::random_triangle_mixture(v_seed + static_cast<std::uint64_t>(i));
          const auto check = pdw::realline_inequality_check(f, v_rdelta, v_cells);
          worst = std::min(worst, check.rhs / check.lhs);
          if (!check.pass && failures++ == 0) {
            std::ostringstream text;
            text.precision(17);
            for (std::size_t k = 0; k < f.weights.size(); ++k) text << f.weights[k] << " " << f.halfwidths[k] << "\n";
            offending = text.str();
          }
        }
        doc["suite"] = "realline";
        doc["config"] = {{"samples", samples}, {"cells", v_cells}, {"delta", v_rdelta}, {"seed", v_seed}};
        doc["failures"] = failures;
        doc["min_rhs_over_lhs"] = worst;
        ok = failures == 0;
      }
      emit(out, doc, {});
      if (!ok) {
        std::cerr << "property violated; first offending function:\n" << offending;
        return kViolation;
      }
      return kOk;
    }

    if (demo->parsed()) {
      json doc{{"schema", pdw::kSchemaVersion}, {"kind", "demo-realline"}, {"config", {{"dim", demo_dim}}}};
      json rows = json::array();
      for (double r : demo_radii) {
        const auto ratio = pdw::realline_counterexample(r, demo_dim);
        rows.push_back({{"radius", r}, {"full", ratio.full}, {"local", ratio.local}, {"mass", ratio.mass},
                        {"ratio", ratio.ratio}});
      }
      doc["config"]["radii"] = demo_radii;
      if (out.format == "text") {
        std::ostringstream text;
        text << "radius  full  local  ratio\n";
        for (const auto& row : rows) {
          text << pdw::format_double(row["radius"]) << "  " << pdw::format_double(row["full"]) << "  "
               << pdw::format_double(row["local"]) << "  " << pdw::format_double(row["ratio"]) << "\n";
        }
        write(out, text.str());
        return kOk;
      }
      doc["rows"] = rows;
      emit(out, doc, {});
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUncertified;
  }
  return kOk;
}
