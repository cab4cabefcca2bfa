#include "grazing/report.hpp"

namespace grazing {

using nlohmann::ordered_json;

ordered_json to_json(const SweepRow& row) {
    ordered_json j;
    j["eps"] = row.eps;
    j["ok"] = row.ok;
    if (!row.ok) {
        j["error"] = row.error;
        return j;
    }
    j["x1"] = row.x1;
    j["delta_num"] = row.delta_num;
    j["delta_asym"] = row.delta_asym;
    j["v_num"] = row.v_num;
    j["v_asym"] = row.v_asym;
    j["x4_num"] = row.x4_num;
    j["x4_asym"] = row.x4_asym;
    j["gap_zdm"] = row.gap_zdm;
    j["delta0_num"] = row.delta0_num;
    j["delta0_asym"] = row.delta0_asym;
    j["x5_num"] = row.x5_num;
    j["x5_asym"] = row.x5_asym;
    j["gap_pdm"] = row.gap_pdm;
    return j;
}

SweepRow sweep_row_from_json(const ordered_json& j) {
    SweepRow row;
    row.eps = j.at("eps").get<double>();
    row.ok = j.at("ok").get<bool>();
    if (!row.ok) {
        row.error = j.at("error").get<std::string>();
        return row;
    }
    row.x1 = j.at("x1").get<Vec>();
    row.delta_num = j.at("delta_num").get<double>();
    row.delta_asym = j.at("delta_asym").get<double>();
    row.v_num = j.at("v_num").get<double>();
    row.v_asym = j.at("v_asym").get<double>();
    row.x4_num = j.at("x4_num").get<Vec>();
    row.x4_asym = j.at("x4_asym").get<Vec>();
    row.gap_zdm = j.at("gap_zdm").get<double>();
    row.delta0_num = j.at("delta0_num").get<double>();
    row.delta0_asym = j.at("delta0_asym").get<double>();
    row.x5_num = j.at("x5_num").get<Vec>();
    row.x5_asym = j.at("x5_asym").get<Vec>();
    row.gap_pdm = j.at("gap_pdm").get<double>();
    return row;
}

ordered_json to_json(const ScalingFit& fit) {
    ordered_json j;
    j["observable"] = fit.observable;
    j["eps"] = fit.eps;
    j["values"] = fit.values;
    j["slope"] = fit.slope;
    j["log_coefficient"] = fit.log_coefficient;
    j["max_residual"] = fit.max_residual;
    j["window_begin"] = fit.window_begin;
    j["window_end"] = fit.window_end;
    return j;
}

ScalingFit fit_from_json(const ordered_json& j) {
    ScalingFit fit;
    fit.observable = j.at("observable").get<std::string>();
    fit.eps = j.at("eps").get<std::vector<double>>();
    fit.values = j.at("values").get<std::vector<double>>();
    fit.slope = j.at("slope").get<double>();
    fit.log_coefficient = j.at("log_coefficient").get<double>();
    fit.max_residual = j.at("max_residual").get<double>();
    fit.window_begin = j.at("window_begin").get<size_t>();
    fit.window_end = j.at("window_end").get<size_t>();
    return fit;
}

ordered_json to_json(const GrazingReport& report) {
    ordered_json j;
    j["point"] = report.x;
    j["lie_values"] = report.lie_values;
    j["classification"] = report.kind_string();
    j["order"] = report.order;
    j["transversality_ok"] = report.transversality_ok;
    j["zero_tolerance"] = report.zero_tolerance;
    return j;
}

ordered_json to_json(const RunReport& report) {
    ordered_json j;
    j["tool_version"] = report.tool_version;
    j["command"] = report.command;
    j["system_name"] = report.system_name;
    j["system_source"] = report.system_source;
    j["params"] = report.params;
    j["tol_abs"] = report.tol_abs;
    j["tol_rel"] = report.tol_rel;
    j["rows"] = ordered_json::array();
    for (const auto& r : report.rows) j["rows"].push_back(to_json(r));
    j["fits"] = ordered_json::array();
    for (const auto& f : report.fits) j["fits"].push_back(to_json(f));
    return j;
}

RunReport run_report_from_json(const ordered_json& j) {
    RunReport report;
    report.tool_version = j.at("tool_version").get<std::string>();
    report.command = j.at("command").get<std::string>();
    report.system_name = j.at("system_name").get<std::string>();
    report.system_source = j.at("system_source").get<std::string>();
    report.params = j.at("params").get<ParamMap>();
    report.tol_abs = j.at("tol_abs").get<double>();
    report.tol_rel = j.at("tol_rel").get<double>();
    for (const auto& r : j.at("rows")) report.rows.push_back(sweep_row_from_json(r));
    for (const auto& f : j.at("fits")) report.fits.push_back(fit_from_json(f));
    return report;
}

std::string report_to_string(const RunReport& report) {
    return to_json(report).dump(2) + "\n";
}

RunReport report_from_string(const std::string& text) {
    return run_report_from_json(ordered_json::parse(text));
}

}  // namespace grazing
