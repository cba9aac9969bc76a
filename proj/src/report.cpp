#include "pdw/report.hpp"

#include <charconv>
#include <chrono>
#include <ctime>

namespace pdw {

namespace {

std::string csv_row(const std::string& kind, const std::string& shape, double delta, int dim, const std::string& side,
                    const std::string& method, double value, bool certified) {
  return kind + "," + shape + "," + format_double(delta) + "," + std::to_string(dim) + "," + side + "," + method + "," +
         format_double(value) + "," + (certified ? "1" : "0");
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const TuranEstimate& est) {
  return {{"schema", kSchemaVersion},
          {"kind", "turan"},
          {"delta", est.delta},
          {"dim", est.dim},
          {"lower", est.lower},
          {"upper", est.upper},
          {"upper_method", est.upper_method},
          {"checked_freq", est.checked_freq},
          {"min_residual", est.min_residual},
          {"grid_size", est.grid_size},
          {"freq_bound", est.freq_bound},
          {"cut_freqs", est.cut_freqs},
          {"certified", est.certified}};
}

nlohmann::json to_json(const DelsarteBound& bound) {
  return {{"schema", kSchemaVersion},
          {"kind", "delsarte"},
          {"dim", bound.dim},
          {"radius", bound.radius},
          {"value", bound.value},
          {"basis_size", bound.basis_size},
          {"grid_size", bound.grid_size},
          {"r_max", bound.r_max},
          {"cut_points", bound.cut_points},
          {"residuals", {{"fourier_min", bound.fourier_min}, {"spatial_max", bound.spatial_max}}},
          {"certified", bound.certified}};
}

nlohmann::json to_json(const BoundReport& report) {
  auto side = [](const BoundSide& s) {
    return nlohmann::json{{"value", s.value}, {"method", s.method}, {"params", s.params}};
  };
  return {{"schema", kSchemaVersion},
          {"kind", "wiener"},
          {"domain", {{"shape", report.domain.shape}, {"delta", report.domain.delta}, {"dim", report.domain.dim}}},
          {"lower", side(report.lower)},
          {"upper", side(report.upper)},
          {"residuals", report.residuals},
          {"certified", report.certified}};
}

nlohmann::json to_json(const ThetaEstimate& theta) {
  return {{"schema", kSchemaVersion},
          {"kind", "theta"},
          {"delta", theta.delta},
          {"value", theta.value},
          {"certified", theta.certified},
          {"turan", to_json(theta.turan)}};
}

std::string csv_header() { return "kind,shape,delta,dim,side,method,value,certified"; }

std::vector<std::string> csv_rows(const TuranEstimate& est) {
  return {csv_row("turan", "cube", est.delta, est.dim, "lower", "lp", est.lower, est.certified),
          csv_row("turan", "cube", est.delta, est.dim, "upper", est.upper_method, est.upper, true)};
}

std::vector<std::string> csv_rows(const DelsarteBound& bound) {
  return {csv_row("delsarte", "ball", bound.radius, bound.dim, "upper", "lp", bound.value, bound.certified)};
}

std::vector<std::string> csv_rows(const BoundReport& report) {
  const auto& d = report.domain;
  return {csv_row("wiener", d.shape, d.delta, d.dim, "lower", report.lower.method, report.lower.value, report.certified),
          csv_row("wiener", d.shape, d.delta, d.dim, "upper", report.upper.method, report.upper.value, report.certified)};
}

}  // namespace pdw
