#include "grazing/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "grazing/errors.hpp"

namespace grazing {

ScalingFit fit_loglog(const std::string& observable, const std::vector<double>& eps,
                      const std::vector<double>& values, size_t window_begin,
                      size_t window_end) {
    if (eps.size() != values.size()) throw FitError("eps and value arrays differ in length");
    window_end = std::min(window_end, eps.size());
    if (window_end < window_begin || window_end - window_begin < 4)
        throw FitError("TooFewPoints: a slope fit needs at least 4 points in the window");

    std::vector<double> lx, ly;
    for (size_t i = window_begin; i < window_end; ++i) {
        double av = std::abs(values[i]);
        if (!(av > 0.0) || !std::isfinite(av) || !(eps[i] > 0.0))
            throw FitError("NonPositiveValues: column has a zero, negative-log or non-finite "
                           "entry inside the fit window (row " + std::to_string(i) + ")");
        lx.push_back(std::log(eps[i]));
        ly.push_back(std::log(av));
    }

    const double n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw FitError("degenerate eps grid (all points equal)");

    ScalingFit fit;
    fit.observable = observable;
    fit.eps = eps;
    fit.values = values;
    fit.window_begin = window_begin;
    fit.window_end = window_end;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.log_coefficient = (sy - fit.slope * sx) / n;
    for (size_t i = 0; i < lx.size(); ++i) {
        double r = std::abs(ly[i] - (fit.log_coefficient + fit.slope * lx[i]));
        fit.max_residual = std::max(fit.max_residual, r);
    }
    return fit;
}

ScalingFit fit_loglog_default(const std::string& observable, const std::vector<double>& eps,
                              const std::vector<double>& values) {
    size_t end = eps.size() > 1 ? eps.size() - 1 : eps.size();
    return fit_loglog(observable, eps, values, 0, end);
}

size_t CsvTable::column_index(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw FitError("no column named '" + name + "' in the CSV");
}

std::vector<std::optional<double>> CsvTable::column(const std::string& name) const {
    size_t idx = column_index(name);
    std::vector<std::optional<double>> out;
    for (const auto& row : rows) out.push_back(idx < row.size() ? row[idx] : std::nullopt);
    return out;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FitError("cannot open CSV file '" + path + "'");
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<std::optional<double>> row;
        std::string err;
        for (size_t i = 0; i < cells.size(); ++i) {
            bool is_error_col = i < table.header.size() && table.header[i] == "error";
            if (is_error_col) {
                err = cells[i];
                row.push_back(std::nullopt);
                continue;
            }
            if (cells[i].empty()) {
                row.push_back(std::nullopt);
            } else {
                try {
                    row.push_back(std::stod(cells[i]));
                } catch (...) {
                    row.push_back(std::nullopt);
                }
            }
        }
        table.rows.push_back(std::move(row));
        table.row_errors.push_back(err);
    }
    if (table.header.empty()) throw FitError("CSV file '" + path + "' is empty");
    return table;
}

namespace {

// Displacement norms ||x4_num - x1|| / ||x5_num - x1|| are fit observables
// derived from the pinned sweep columns rather than stored in the CSV.
std::optional<std::vector<std::optional<double>>> derived_column(const CsvTable& table,
                                                                 const std::string& name) {
    std::string base;
    if (name == "disp_zdm")
        base = "x4_num_";
    else if (name == "disp_pdm")
        base = "x5_num_";
    else
        return std::nullopt;

    std::vector<std::vector<std::optional<double>>> parts;
    for (int i = 1;; ++i) {
        std::string out_name = base + std::to_string(i);
        bool found = false;
        for (const auto& h : table.header) found |= (h == out_name);
        if (!found) break;
        parts.push_back(table.column(out_name));
        parts.push_back(table.column("x1_" + std::to_string(i)));
    }
    if (parts.empty()) throw FitError("CSV has no columns to derive '" + name + "' from");

    std::vector<std::optional<double>> out;
    for (size_t r = 0; r < table.rows.size(); ++r) {
        double acc = 0.0;
        bool ok = true;
        for (size_t i = 0; i + 1 < parts.size(); i += 2) {
            if (!parts[i][r] || !parts[i + 1][r]) {
                ok = false;
                break;
            }
            double d = *parts[i][r] - *parts[i + 1][r];
            acc += d * d;
        }
        out.push_back(ok ? std::optional<double>(std::sqrt(acc)) : std::nullopt);
    }
    return out;
}

}  // namespace

ScalingFit fit_csv_column(const CsvTable& table, const std::string& column) {
    auto eps_col = table.column("eps");
    auto derived = derived_column(table, column);
    auto val_col = derived ? *derived : table.column(column);
    std::vector<double> eps, values;
    for (size_t i = 0; i < eps_col.size(); ++i) {
        if (!eps_col[i] || !val_col[i]) continue;  // failed rows drop out
        eps.push_back(*eps_col[i]);
        values.push_back(*val_col[i]);
    }
    return fit_loglog_default(column, eps, values);
}

void write_plot_data(const std::string& path, const std::vector<double>& eps,
                     const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw FitError("cannot open '" + path + "' for writing");
    char buf[96];
    for (size_t i = 0; i < eps.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", eps[i], std::abs(values[i]));
        out << buf;
    }
}

void write_svg_chart(const std::string& path, const ScalingFit& fit) {
    const int width = 640, height = 480, margin = 60;
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < fit.eps.size(); ++i) {
        double av = std::abs(fit.values[i]);
        if (av > 0.0 && fit.eps[i] > 0.0) pts.emplace_back(std::log10(fit.eps[i]), std::log10(av));
    }
    if (pts.size() < 2) throw FitError("not enough positive points for an SVG chart");
    double x_lo = pts[0].first, x_hi = pts[0].first, y_lo = pts[0].second, y_hi = pts[0].second;
    for (auto& [x, y] : pts) {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;
    auto px = [&](double x) {
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
    };
    auto py = [&](double y) {
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
    };

    std::ofstream out(path);
    if (!out) throw FitError("cannot open '" + path + "' for writing");
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    out << "<line x1='" << margin << "' y1='" << height - margin << "' x2='" << width - margin
        << "' y2='" << height - margin << "' stroke='black'/>\n";
    out << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
        << height - margin << "' stroke='black'/>\n";
    // fitted line across the data range (fit is in natural logs)
    const double ln10 = std::log(10.0);
    double fy_lo = (fit.log_coefficient + fit.slope * x_lo * ln10) / ln10;
    double fy_hi = (fit.log_coefficient + fit.slope * x_hi * ln10) / ln10;
    out << "<line x1='" << px(x_lo) << "' y1='" << py(fy_lo) << "' x2='" << px(x_hi) << "' y2='"
        << py(fy_hi) << "' stroke='steelblue' stroke-width='1.5'/>\n";
    for (auto& [x, y] : pts)
        out << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='3.5' fill='crimson'/>\n";
    char label[128];
    std::snprintf(label, sizeof(label), "%s: slope %.4f", fit.observable.c_str(), fit.slope);
    out << "<text x='" << margin + 8 << "' y='" << margin - 12
        << "' font-family='monospace' font-size='14'>" << label << "</text>\n";
    out << "<text x='" << width / 2 << "' y='" << height - 18
        << "' font-family='monospace' font-size='12'>log10 eps</text>\n";
    out << "</svg>\n";
}

}  // namespace grazing
