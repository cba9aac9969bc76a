// JSON and CSV forms of solver results.  Every JSON document carries
// "schema": "1"; CSV rows follow the fixed column list in FORMAT.md.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pdw/delsarte.hpp"
#include "pdw/turan.hpp"
#include "pdw/wiener.hpp"

namespace pdw {

inline constexpr const char* kSchemaVersion = "1";

nlohmann::json to_json(const TuranEstimate& est);
nlohmann::json to_json(const DelsarteBound& bound);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const ThetaEstimate& theta);

/// kind,shape,delta,dim,side,method,value,certified
std::string csv_header();
std::vector<std::string> csv_rows(const TuranEstimate& est);
std::vector<std::string> csv_rows(const DelsarteBound& bound);
std::vector<std::string> csv_rows(const BoundReport& report);

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace pdw
