#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "grazing/fit.hpp"
#include "grazing/sweep.hpp"
#include "grazing/systems.hpp"

using namespace grazing;

TEST_CASE("log_spaced_grid endpoints and monotonicity") {
    auto g = log_spaced_grid(1e-8, 1e-4, 9);
    REQUIRE(g.size() == 9);
    CHECK(g.front() == doctest::Approx(1e-8).epsilon(1e-12));
    CHECK(g.back() == doctest::Approx(1e-4).epsilon(1e-12));
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    // single point, including eps = 0
    CHECK(log_spaced_grid(0.0, 0.0, 1) == std::vector<double>{0.0});
}

TEST_CASE("a sweep row carries the full chain and the gaps") {
    auto sys = builtin("monomial4").system;
    SweepConfig cfg;
    cfg.x_star = {0.0, 0.0};
    SweepRow row = sweep_row(sys, 1e-4, cfg);
    REQUIRE(row.ok);
    CHECK(row.delta_num == doctest::Approx(-0.09036020036098448).epsilon(1e-9));
    CHECK(row.delta_asym == doctest::Approx(row.delta_num).epsilon(1e-9));
    CHECK(row.v_num == doctest::Approx(-4.426727678801286e-3).epsilon(1e-8));
    CHECK(row.gap_zdm >= 0.0);
    CHECK(row.x4_num.size() == 2);
}

TEST_CASE("failed rows record the error and the run continues") {
    // order-2 system: pdm_analytic refuses, so the row fails but is recorded
    auto sys = builtin("parabola2").system;
    SweepConfig cfg;
    cfg.x_star = {0.0, 0.0};
    auto rows = run_sweep_serial(sys, log_spaced_grid(1e-6, 1e-4, 5), cfg);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CHECK(!r.ok);
        CHECK(r.error.find("order") != std::string::npos);
    }
    // numeric-only sweep on the same system succeeds
    cfg.analytic = false;
    auto rows2 = run_sweep_serial(sys, log_spaced_grid(1e-6, 1e-4, 5), cfg);
    for (const auto& r : rows2) CHECK(r.ok);
}

TEST_CASE("parallel sweep rows are bitwise identical to the serial reference") {
    auto sys = builtin("paper-hamiltonian").system;
    SweepConfig cfg;
    cfg.x_star = {0.0, 0.0};
    auto grid = log_spaced_grid(1e-8, 1e-4, 9);
    auto serial = run_sweep_serial(sys, grid, cfg);
    auto parallel = run_sweep_parallel(sys, grid, cfg, 4);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].ok == parallel[i].ok);
        CHECK(serial[i].eps == parallel[i].eps);
        CHECK(serial[i].x1 == parallel[i].x1);
        CHECK(serial[i].delta_num == parallel[i].delta_num);
        CHECK(serial[i].v_num == parallel[i].v_num);
        CHECK(serial[i].x4_num == parallel[i].x4_num);
        CHECK(serial[i].x5_num == parallel[i].x5_num);
        CHECK(serial[i].gap_zdm == parallel[i].gap_zdm);
        CHECK(serial[i].gap_pdm == parallel[i].gap_pdm);
    }
}

TEST_CASE("CSV schema: pinned column order, error column last") {
    auto header = sweep_csv_header(2);
    std::vector<std::string> expected{
        "eps",     "x1_1",       "x1_2",        "delta_num", "delta_asym", "v_num",
        "v_asym",  "x4_num_1",   "x4_num_2",    "x4_asym_1", "x4_asym_2",  "gap_zdm",
        "delta0_num", "delta0_asym", "x5_num_1", "x5_num_2",  "x5_asym_1",  "x5_asym_2",
        "gap_pdm", "error"};
    CHECK(header == expected);
}

TEST_CASE("CSV output is parseable and deterministic") {
    auto sys = builtin("monomial4").system;
    SweepConfig cfg;
    cfg.x_star = {0.0, 0.0};
    auto grid = log_spaced_grid(1e-6, 1e-4, 5);
    auto rows = run_sweep_serial(sys, grid, cfg);
    std::string csv1 = sweep_rows_to_csv(rows, sys.n);
    std::string csv2 = sweep_rows_to_csv(run_sweep_serial(sys, grid, cfg), sys.n);
    CHECK(csv1 == csv2);  // byte-identical

    const char* path = "sweep_tmp.csv";
    {
        std::ofstream out(path);
        out << csv1;
    }
    CsvTable table = read_csv(path);
    CHECK(table.rows.size() == 5);
    ScalingFit fit = fit_csv_column(table, "delta_num");
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(1e-4));
    std::remove(path);
}

TEST_CASE("every cell in a failed CSV row stays aligned with the header") {
    auto sys = builtin("parabola2").system;
    SweepConfig cfg;
    cfg.x_star = {0.0, 0.0};
    auto rows = run_sweep_serial(sys, {1e-4}, cfg);
    std::string csv = sweep_rows_to_csv(rows, sys.n);
    std::istringstream ss(csv);
    std::string header_line, row_line;
    std::getline(ss, header_line);
    std::getline(ss, row_line);
    auto count_cells = [](const std::string& line) {
        size_t cells = 1;
        for (char ch : line)
            if (ch == ',') ++cells;
        return cells;
    };
    CHECK(count_cells(header_line) == count_cells(row_line));
}
