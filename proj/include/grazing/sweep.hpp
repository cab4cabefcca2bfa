#ifndef GRAZING_SWEEP_HPP
#define GRAZING_SWEEP_HPP

#include <string>
#include <vector>

#include "grazing/dmaps.hpp"
#include "grazing/dsl.hpp"

namespace grazing {

/// One epsilon row of a sweep: the Pi_3 point, the numeric chain (ZDM + PDM),
/// the analytic chain, and the numeric-analytic gaps. A failed row carries
/// the error text and empty values.
struct SweepRow {
    double eps = 0.0;
    bool ok = false;
    std::string error;

    Vec x1;
    double delta_num = 0.0, delta_asym = 0.0;
    double v_num = 0.0, v_asym = 0.0;
    Vec x4_num, x4_asym;
    double gap_zdm = 0.0;
    double delta0_num = 0.0, delta0_asym = 0.0;
    Vec x5_num, x5_asym;
    double gap_pdm = 0.0;
};

struct SweepConfig {
    Vec x_star;                 // base grazing point (defaults to the origin)
    DmOptions dm;
    bool analytic = true;       // also evaluate the analytic maps + gaps
};

std::vector<double> log_spaced_grid(double eps_lo, double eps_hi, int n);

/// Compute one row; never throws (failures land in row.error).
SweepRow sweep_row(const ExpressionSystem& sys, double eps, const SweepConfig& cfg);

/// Serial reference sweep: one row per epsilon, in grid order.
std::vector<SweepRow> run_sweep_serial(const ExpressionSystem& sys,
                                       const std::vector<double>& eps_grid,
                                       const SweepConfig& cfg);

/// OpenMP sweep over the epsilon grid. Rows are computed independently and
/// stored by index, so the output is identical to the serial reference
/// regardless of scheduling. `max_threads` <= 0 leaves the runtime default.
std::vector<SweepRow> run_sweep_parallel(const ExpressionSystem& sys,
                                         const std::vector<double>& eps_grid,
                                         const SweepConfig& cfg, int max_threads = 0);

/// CSV column names for dimension n, in the pinned order, vectors flattened
/// with _1.._n suffixes. A trailing "error" column carries per-row failures.
std::vector<std::string> sweep_csv_header(int n);

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows, int n);

}  // namespace grazing

#endif
