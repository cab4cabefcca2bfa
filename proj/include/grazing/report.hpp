#ifndef GRAZING_REPORT_HPP
#define GRAZING_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "grazing/fit.hpp"
#include "grazing/grazing_point.hpp"
#include "grazing/sweep.hpp"

namespace grazing {

inline constexpr const char* kToolVersion = "0.1.0";

/// Full record of one CLI run: system, command, per-epsilon rows, fits and
/// the tolerances in force. Serializes to JSON and reloads losslessly.
struct RunReport {
    std::string tool_version = kToolVersion;
    std::string command;
    std::string system_name;
    std::string system_source;
    ParamMap params;
    double tol_abs = 1e-12, tol_rel = 1e-12;
    std::vector<SweepRow> rows;
    std::vector<ScalingFit> fits;
};

nlohmann::ordered_json to_json(const SweepRow& row);
SweepRow sweep_row_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const ScalingFit& fit);
ScalingFit fit_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const GrazingReport& report);

nlohmann::ordered_json to_json(const RunReport& report);
RunReport run_report_from_json(const nlohmann::ordered_json& j);

/// Fixed-format JSON text (2-space indent); identical inputs give
/// byte-identical output.
std::string report_to_string(const RunReport& report);
RunReport report_from_string(const std::string& text);

}  // namespace grazing

#endif
