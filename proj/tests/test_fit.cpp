#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "grazing/errors.hpp"
#include "grazing/fit.hpp"

using namespace grazing;

namespace {

std::vector<double> grid9() {
    std::vector<double> g;
    for (int i = 0; i <= 8; ++i) g.push_back(1e-8 * std::pow(10.0, 0.5 * i));
    return g;
}

}  // namespace

TEST_CASE("exact power law is recovered to machine precision") {
    auto eps = grid9();
    std::vector<double> vals;
    for (double e : eps) vals.push_back(-3.7 * std::pow(e, 0.25));
    ScalingFit fit = fit_loglog_default("delta", eps, vals);
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(std::exp(fit.log_coefficient) == doctest::Approx(3.7).epsilon(1e-10));
    CHECK(fit.max_residual <= 1e-12);
    CHECK(fit.window_end == eps.size() - 1);  // largest eps excluded by default
}

TEST_CASE("constant column fits slope zero") {
    auto eps = grid9();
    std::vector<double> vals(eps.size(), 2.5);
    ScalingFit fit = fit_loglog_default("const", eps, vals);
    CHECK(std::abs(fit.slope) <= 1e-10);
}

TEST_CASE("fit failures are typed") {
    std::vector<double> eps{1e-4, 1e-3, 1e-2, 1e-1};
    CHECK_THROWS_AS(fit_loglog("x", eps, {1.0, 2.0, 3.0, 4.0}, 0, 3), FitError);  // too few
    CHECK_THROWS_AS(fit_loglog("x", eps, {1.0, 0.0, 3.0, 4.0}, 0, 4), FitError);  // zero value
}

TEST_CASE("sweep CSV round-trips through read_csv and fit_csv_column") {
    const char* path = "fit_test_tmp.csv";
    {
        std::ofstream out(path);
        out << "eps,delta_num,gap_zdm,error\n";
        for (double e : grid9()) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,\n", e,
                          -std::pow(2.0 * e / 3.0, 0.25), 0.5 * e);
            out << buf;
        }
        out << "1,,,simulated failure row\n";
    }
    CsvTable table = read_csv(path);
    CHECK(table.header.size() == 4);
    CHECK(table.rows.size() == 10);
    CHECK(table.row_errors[9] == "simulated failure row");
    CHECK(!table.rows[9][1].has_value());

    ScalingFit fit = fit_csv_column(table, "delta_num");
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(1e-9));
    ScalingFit gap = fit_csv_column(table, "gap_zdm");
    CHECK(gap.slope == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(table.column("missing"), FitError);
    std::remove(path);
}

TEST_CASE("plot data and SVG output are written") {
    auto eps = grid9();
    std::vector<double> vals;
    for (double e : eps) vals.push_back(2.0 * std::pow(e, 0.75));
    write_plot_data("plot_tmp.dat", eps, vals);
    {
        std::ifstream in("plot_tmp.dat");
        REQUIRE(bool(in));
        double a, b;
        in >> a >> b;
        CHECK(a == eps[0]);
        CHECK(b == doctest::Approx(vals[0]));
    }
    ScalingFit fit = fit_loglog_default("test", eps, vals);
    write_svg_chart("chart_tmp.svg", fit);
    {
        std::ifstream in("chart_tmp.svg");
        std::string first;
        std::getline(in, first);
        CHECK(first.find("<svg") != std::string::npos);
    }
    std::remove("plot_tmp.dat");
    std::remove("chart_tmp.svg");
}
