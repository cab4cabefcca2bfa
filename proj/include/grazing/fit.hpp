#ifndef GRAZING_FIT_HPP
#define GRAZING_FIT_HPP

#include <optional>
#include <string>
#include <vector>

namespace grazing {

/// Least-squares power-law fit on (log eps, log |value|) over a fit window.
/// The residual is reported, never hidden.
struct ScalingFit {
    std::string observable;
    std::vector<double> eps;
    std::vector<double> values;
    double slope = 0.0;
    double log_coefficient = 0.0;  // natural log of the fitted prefactor
    double max_residual = 0.0;
    size_t window_begin = 0, window_end = 0;  // half-open index range used
};

/// Fit log|values| = log_coefficient + slope * log(eps) over [begin, end).
/// Throws TooFewPoints (< 4 points) / NonPositiveValues (|v| = 0 or not
/// finite inside the window) as FitError.
ScalingFit fit_loglog(const std::string& observable, const std::vector<double>& eps,
                      const std::vector<double>& values, size_t window_begin,
                      size_t window_end);

/// Window default: all points except the largest eps (grid sorted ascending).
ScalingFit fit_loglog_default(const std::string& observable, const std::vector<double>& eps,
                              const std::vector<double>& values);

/// Minimal CSV table as written by the sweep: one header row, numeric cells,
/// empty cells allowed (failed rows).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
    std::vector<std::string> row_errors;  // from a trailing "error" column, if present

    size_t column_index(const std::string& name) const;
    std::vector<std::optional<double>> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Fit a named column of a sweep CSV against its eps column.
ScalingFit fit_csv_column(const CsvTable& table, const std::string& column);

/// Two-column "eps value" data file, one row per point (plot-ready).
void write_plot_data(const std::string& path, const std::vector<double>& eps,
                     const std::vector<double>& values);

/// Minimal log-log SVG chart of |values| against eps with the fitted line.
void write_svg_chart(const std::string& path, const ScalingFit& fit);

}  // namespace grazing

#endif
