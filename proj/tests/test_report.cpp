#include <doctest.h>

#include "grazing/report.hpp"
#include "grazing/systems.hpp"

using namespace grazing;

namespace {

RunReport sample_report() {
    auto b = builtin("monomial4");
    RunReport report;
    report.command = "sweep --system monomial4 --map zdm --eps 1e-6:1e-4 --n 5";
    report.system_name = b.name;
    report.system_source = b.source;
    report.params = b.system.params;
    SweepConfig cfg;
    cfg.x_star = {0.0, 0.0};
    report.rows = run_sweep_serial(b.system, log_spaced_grid(1e-6, 1e-4, 5), cfg);
    std::vector<double> eps, gaps;
    for (const auto& r : report.rows) {
        eps.push_back(r.eps);
        gaps.push_back(r.gap_zdm);
    }
    report.fits.push_back(fit_loglog("gap_zdm", eps, gaps, 0, eps.size()));
    return report;
}

}  // namespace

TEST_CASE("run reports serialize and reload losslessly") {
    RunReport report = sample_report();
    std::string text = report_to_string(report);
    RunReport back = report_from_string(text);

    CHECK(back.tool_version == report.tool_version);
    CHECK(back.command == report.command);
    CHECK(back.system_source == report.system_source);
    CHECK(back.params == report.params);
    REQUIRE(back.rows.size() == report.rows.size());
    for (size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(back.rows[i].eps == report.rows[i].eps);
        CHECK(back.rows[i].x1 == report.rows[i].x1);
        CHECK(back.rows[i].delta_num == report.rows[i].delta_num);
        CHECK(back.rows[i].x4_num == report.rows[i].x4_num);
        CHECK(back.rows[i].x5_asym == report.rows[i].x5_asym);
        CHECK(back.rows[i].gap_pdm == report.rows[i].gap_pdm);
    }
    REQUIRE(back.fits.size() == 1);
    CHECK(back.fits[0].slope == report.fits[0].slope);
    CHECK(back.fits[0].values == report.fits[0].values);

    // round-trip is byte-stable
    CHECK(report_to_string(back) == text);
}

TEST_CASE("failed rows survive the JSON round trip") {
    SweepRow bad;
    bad.eps = 0.5;
    bad.ok = false;
    bad.error = "synthetic failure";
    auto j = to_json(bad);
    SweepRow back = sweep_row_from_json(j);
    CHECK(back.eps == 0.5);
    CHECK(!back.ok);
    CHECK(back.error == "synthetic failure");
}
