#include "grazing/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grazing/errors.hpp"
#include "grazing/grazing_point.hpp"

namespace grazing {

namespace {

double norm_diff(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> log_spaced_grid(double eps_lo, double eps_hi, int n) {
    if (n < 1) throw Error("grid needs at least one point");
    if (n == 1) return {eps_lo};
    if (!(eps_lo > 0.0) || !(eps_hi > 0.0))
        throw Error("log-spaced grid requires positive endpoints");
    std::vector<double> grid(static_cast<size_t>(n));
    double la = std::log(eps_lo), lb = std::log(eps_hi);
    for (int i = 0; i < n; ++i)
        grid[static_cast<size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
    return grid;
}

SweepRow sweep_row(const ExpressionSystem& sys, double eps, const SweepConfig& cfg) {
    SweepRow row;
    row.eps = eps;
    try {
        Pi3Point p = pi3_point(sys, cfg.x_star, eps);
        row.x1 = p.x;

        DmResult num = pdm_numeric(sys, p.x, eps, cfg.dm);
        row.delta_num = num.delta;
        row.v_num = num.v;
        row.x4_num = num.x4;
        row.delta0_num = num.delta0.value_or(0.0);
        row.x5_num = num.x5.value_or(num.x4);

        if (cfg.analytic) {
            DmResult an = pdm_analytic(sys, cfg.x_star, p.x, eps);
            row.delta_asym = delta_asymptotic(sys, cfg.x_star, eps);
            row.v_asym = an.v;
            row.x4_asym = an.x4;
            row.delta0_asym = an.delta0.value_or(0.0);
            row.x5_asym = an.x5.value_or(an.x4);
            row.gap_zdm = norm_diff(row.x4_num, row.x4_asym);
            row.gap_pdm = norm_diff(row.x5_num, row.x5_asym);
        }
        row.ok = true;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

std::vector<SweepRow> run_sweep_serial(const ExpressionSystem& sys,
                                       const std::vector<double>& eps_grid,
                                       const SweepConfig& cfg) {
    std::vector<SweepRow> rows(eps_grid.size());
    for (size_t i = 0; i < eps_grid.size(); ++i) rows[i] = sweep_row(sys, eps_grid[i], cfg);
    return rows;
}

std::vector<SweepRow> run_sweep_parallel(const ExpressionSystem& sys,
                                         const std::vector<double>& eps_grid,
                                         const SweepConfig& cfg, int max_threads) {
    std::vector<SweepRow> rows(eps_grid.size());
#ifdef _OPENMP
    const long count = static_cast<long>(eps_grid.size());
    if (max_threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads)
        for (long i = 0; i < count; ++i)
            rows[static_cast<size_t>(i)] = sweep_row(sys, eps_grid[static_cast<size_t>(i)], cfg);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i)
            rows[static_cast<size_t>(i)] = sweep_row(sys, eps_grid[static_cast<size_t>(i)], cfg);
    }
#else
    (void)max_threads;
    rows = run_sweep_serial(sys, eps_grid, cfg);
#endif
    return rows;
}

std::vector<std::string> sweep_csv_header(int n) {
    std::vector<std::string> h;
    auto vec_cols = [&h, n](const std::string& base) {
        for (int i = 1; i <= n; ++i) h.push_back(base + "_" + std::to_string(i));
    };
    h.push_back("eps");
    vec_cols("x1");
    h.push_back("delta_num");
    h.push_back("delta_asym");
    h.push_back("v_num");
    h.push_back("v_asym");
    vec_cols("x4_num");
    vec_cols("x4_asym");
    h.push_back("gap_zdm");
    h.push_back("delta0_num");
    h.push_back("delta0_asym");
    vec_cols("x5_num");
    vec_cols("x5_asym");
    h.push_back("gap_pdm");
    h.push_back("error");
    return h;
}

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows, int n) {
    std::ostringstream os;
    auto header = sweep_csv_header(n);
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    auto put_vec = [&os, n](const Vec& v) {
        for (int i = 0; i < n; ++i)
            os << "," << (static_cast<size_t>(i) < v.size() ? fmt(v[static_cast<size_t>(i)]) : "");
    };
    for (const SweepRow& r : rows) {
        os << fmt(r.eps);
        if (r.ok) {
            put_vec(r.x1);
            os << "," << fmt(r.delta_num) << "," << fmt(r.delta_asym);
            os << "," << fmt(r.v_num) << "," << fmt(r.v_asym);
            put_vec(r.x4_num);
            put_vec(r.x4_asym);
            os << "," << fmt(r.gap_zdm);
            os << "," << fmt(r.delta0_num) << "," << fmt(r.delta0_asym);
            put_vec(r.x5_num);
            put_vec(r.x5_asym);
            os << "," << fmt(r.gap_pdm);
            os << ",";
        } else {
            // empty cells, error text in the trailing column
            for (int i = 0; i < 5 * n + 8; ++i) os << ",";
            std::string msg = r.error;
            for (char& c : msg)
                if (c == ',' || c == '\n') c = ';';
            os << "," << msg;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace grazing
