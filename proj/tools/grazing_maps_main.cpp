// Command-line front end: load a system (built-in or file), classify grazing
// points, evaluate the discontinuity mappings, run epsilon sweeps and fit
// power-law slopes from the resulting CSV data.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "grazing/dmaps.hpp"
#include "grazing/errors.hpp"
#include "grazing/fit.hpp"
#include "grazing/grazing_point.hpp"
#include "grazing/lie.hpp"
#include "grazing/report.hpp"
#include "grazing/sweep.hpp"
#include "grazing/systems.hpp"

using namespace grazing;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;        // usage, parse or input errors
constexpr int kExitGate = 3;         // classification gate not passed
constexpr int kExitNumerical = 4;    // numerical failure threshold exceeded

struct SystemArgs {
    std::string system_ref;
    std::vector<std::string> param_overrides;
    double tol_abs = 1e-12;
    double tol_rel = 1e-12;

    void attach(CLI::App* cmd) {
        cmd->add_option("--system", system_ref, "built-in name or path to a .sys file")
            ->required();
        cmd->add_option("--param", param_overrides,
                        "parameter override name=value (repeatable)");
        cmd->add_option("--tol-abs", tol_abs, "integrator absolute tolerance");
        cmd->add_option("--tol-rel", tol_rel, "integrator relative tolerance");
    }
};

struct LoadedSystem {
    std::string name;
    std::string source;
    ExpressionSystem system;
    Vec default_xstar;
};

ParamMap parse_param_overrides(const std::vector<std::string>& items) {
    ParamMap out;
    for (const auto& item : items) {
        auto pos = item.find('=');
        if (pos == std::string::npos || pos == 0)
            throw Error("--param expects name=value, got '" + item + "'");
        out[item.substr(0, pos)] = std::stod(item.substr(pos + 1));
    }
    return out;
}

LoadedSystem load_system(const SystemArgs& args) {
    LoadedSystem out;
    bool is_builtin = false;
    for (const auto& name : builtin_names()) is_builtin |= (name == args.system_ref);
    if (is_builtin) {
        BuiltinSystem b = builtin(args.system_ref);
        out.name = b.name;
        out.source = b.source;
        out.system = b.system;
        out.default_xstar = b.grazing_point;
    } else {
        std::ifstream in(args.system_ref);
        if (!in) throw Error("cannot open system file '" + args.system_ref + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        out.name = args.system_ref;
        out.source = ss.str();
        out.system = parse_system(out.source);
        out.default_xstar = Vec(static_cast<size_t>(out.system.n), 0.0);
    }
    out.system = with_params(out.system, parse_param_overrides(args.param_overrides));
    return out;
}

Vec parse_point(const std::string& text, int n) {
    Vec out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    if (static_cast<int>(out.size()) != n)
        throw Error("expected " + std::to_string(n) + " comma-separated coordinates, got '" +
                    text + "'");
    return out;
}

std::pair<double, double> parse_eps_range(const std::string& text) {
    auto pos = text.find(':');
    if (pos == std::string::npos) {
        double v = std::stod(text);
        return {v, v};
    }
    return {std::stod(text.substr(0, pos)), std::stod(text.substr(pos + 1))};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_vec(std::ostream& os, const Vec& v) {
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << fmt(v[i]);
    os << ")";
}

DmOptions dm_options(const SystemArgs& args) {
    DmOptions opts;
    opts.event.integ.atol = args.tol_abs;
    opts.event.integ.rtol = args.tol_rel;
    return opts;
}

int env_thread_cap() {
    const char* env = std::getenv("GRAZING_MAPS_THREADS");
    if (!env) return 0;
    int v = std::atoi(env);
    return v > 0 ? v : 1;
}

// ---------------------------------------------------------------------------

int cmd_classify(const SystemArgs& sys_args, const std::string& point_text, double ztol,
                 bool json) {
    LoadedSystem ls = load_system(sys_args);
    Vec point = point_text.empty() ? ls.default_xstar : parse_point(point_text, ls.system.n);
    GrazingReport report = classify(ls.system, point, ztol);
    if (json) {
        std::cout << to_json(report).dump(2) << "\n";
    } else {
        if (report.kind == TangencyKind::Order) {
            std::printf("order %d, L_X^%d H = %.6f\n", report.order, report.order,
                        report.lie_values[static_cast<size_t>(report.order - 1)]);
        } else {
            std::cout << report.kind_string() << "\n";
        }
        std::cout << "Lie values L_X^1..8 H:";
        for (double v : report.lie_values) std::cout << " " << fmt(v);
        std::cout << "\n";
    }
    return (report.kind == TangencyKind::Order && report.order == 4) ? kExitOk : kExitGate;
}

int cmd_single_map(const std::string& which, const SystemArgs& sys_args, double eps,
                   const std::string& xstar_text, bool json) {
    LoadedSystem ls = load_system(sys_args);
    Vec xstar = xstar_text.empty() ? ls.default_xstar : parse_point(xstar_text, ls.system.n);
    DmOptions opts = dm_options(sys_args);

    GrazingReport gate = classify(ls.system, xstar);
    if (gate.kind != TangencyKind::Order || gate.order != 4) {
        std::cerr << "classification gate failed: " << gate.kind_string() << "\n";
        return kExitGate;
    }

    Pi3Point p = pi3_point(ls.system, xstar, eps);

    if (which == "delta") {
        double dnum = 0.0;
        if (eps != 0.0) {
            double scale = std::abs(delta_asymptotic(ls.system, p.x, eps));
            dnum = first_crossing(ls.system, p.x, EventFunctional::BoundaryH,
                                  Direction::Backward, 10.0 * scale, opts.event)
                       .t;
        }
        double dasym = delta_asymptotic(ls.system, xstar, eps);
        if (json) {
            nlohmann::ordered_json j;
            j["eps"] = eps;
            j["x1"] = p.x;
            j["delta_num"] = dnum;
            j["delta_asym"] = dasym;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "x1 = ";
            print_vec(std::cout, p.x);
            std::cout << "\ndelta_num  = " << fmt(dnum) << "\ndelta_asym = " << fmt(dasym)
                      << "\n";
        }
        return kExitOk;
    }

    DmResult num = which == "zdm" ? zdm_numeric(ls.system, p.x, eps, opts)
                                  : pdm_numeric(ls.system, p.x, eps, opts);
    DmResult an = which == "zdm" ? zdm_analytic(ls.system, xstar, p.x, eps)
                                 : pdm_analytic(ls.system, xstar, p.x, eps);
    const Vec& out_num = which == "zdm" ? num.x4 : *num.x5;
    const Vec& out_an = which == "zdm" ? an.x4 : *an.x5;
    double gap = 0.0;
    for (size_t i = 0; i < out_num.size(); ++i)
        gap += (out_num[i] - out_an[i]) * (out_num[i] - out_an[i]);
    gap = std::sqrt(gap);

    if (json) {
        nlohmann::ordered_json j;
        j["eps"] = eps;
        j["x1"] = p.x;
        j["delta"] = num.delta;
        j["v"] = num.v;
        if (num.x2) j["x2"] = *num.x2;
        if (num.x3) j["x3"] = *num.x3;
        j["numeric"] = out_num;
        j["analytic"] = out_an;
        if (which == "pdm") {
            j["delta0_num"] = num.delta0.value_or(0.0);
            j["delta0_asym"] = an.delta0.value_or(0.0);
        }
        j["gap"] = gap;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "x1 = ";
        print_vec(std::cout, p.x);
        std::cout << "\ndelta = " << fmt(num.delta) << ", v = " << fmt(num.v) << "\n";
        std::cout << which << "_numeric  = ";
        print_vec(std::cout, out_num);
        std::cout << "\n" << which << "_analytic = ";
        print_vec(std::cout, out_an);
        std::cout << "\n";
        if (which == "pdm")
            std::cout << "delta0_num = " << fmt(num.delta0.value_or(0.0))
                      << ", delta0_asym = " << fmt(an.delta0.value_or(0.0)) << "\n";
        std::cout << "numeric-analytic gap = " << fmt(gap) << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const SystemArgs& sys_args, const std::string& map_name,
              const std::string& eps_text, int n_points, const std::string& xstar_text,
              const std::string& out_path, const std::string& report_path, bool json) {
    LoadedSystem ls = load_system(sys_args);
    Vec xstar = xstar_text.empty() ? ls.default_xstar : parse_point(xstar_text, ls.system.n);

    GrazingReport gate = classify(ls.system, xstar);
    if (gate.kind != TangencyKind::Order || gate.order != 4) {
        std::cerr << "classification gate failed: " << gate.kind_string() << "\n";
        return kExitGate;
    }

    auto [eps_lo, eps_hi] = parse_eps_range(eps_text);
    std::vector<double> grid = log_spaced_grid(eps_lo, eps_hi, n_points);

    SweepConfig cfg;
    cfg.x_star = xstar;
    cfg.dm = dm_options(sys_args);
    std::vector<SweepRow> rows = run_sweep_parallel(ls.system, grid, cfg, env_thread_cap());

    size_t failed = 0;
    for (const auto& r : rows)
        if (!r.ok) ++failed;

    std::string csv = sweep_rows_to_csv(rows, ls.system.n);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot open '" + out_path + "' for writing");
        out << csv;
    }

    RunReport report;
    report.command = "sweep --system " + sys_args.system_ref + " --map " + map_name +
                     " --eps " + eps_text + " --n " + std::to_string(n_points);
    report.system_name = ls.name;
    report.system_source = ls.source;
    report.params = ls.system.params;
    report.tol_abs = sys_args.tol_abs;
    report.tol_rel = sys_args.tol_rel;
    report.rows = rows;

    // attach the fit of the map's headline observable when enough rows exist
    std::vector<double> eps_ok, vals;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        eps_ok.push_back(r.eps);
        if (map_name == "delta")
            vals.push_back(r.delta_num);
        else if (map_name == "zdm")
            vals.push_back(r.gap_zdm);
        else
            vals.push_back(r.gap_pdm);
    }
    bool fit_ok = false;
    if (eps_ok.size() >= 5) {
        try {
            report.fits.push_back(fit_loglog_default(
                map_name == "delta" ? "delta_num" : ("gap_" + map_name), eps_ok, vals));
            fit_ok = true;
        } catch (const FitError&) {
        }
    }

    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw Error("cannot open '" + report_path + "' for writing");
        out << report_to_string(report);
    }

    if (json) {
        std::cout << report_to_string(report);
    } else if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::cout << rows.size() << " rows (" << failed << " failed) -> " << out_path << "\n";
        if (fit_ok)
            std::cout << report.fits[0].observable << " slope = " << fmt(report.fits[0].slope)
                      << "\n";
    }

    if (5 * failed > rows.size()) return kExitNumerical;  // more than 20% failed
    return kExitOk;
}

int cmd_fit(const std::string& csv_path, const std::string& column,
            const std::string& plot_path, const std::string& svg_path, bool json) {
    CsvTable table = read_csv(csv_path);
    ScalingFit fit = fit_csv_column(table, column);
    if (!plot_path.empty()) write_plot_data(plot_path, fit.eps, fit.values);
    if (!svg_path.empty()) write_svg_chart(svg_path, fit);
    if (json) {
        std::cout << to_json(fit).dump(2) << "\n";
    } else {
        std::printf(
            "column %s: slope = %.6f, coefficient = %.6g, max residual = %.3g (%zu points)\n",
            column.c_str(), fit.slope, std::exp(fit.log_coefficient), fit.max_residual,
            fit.window_end - fit.window_begin);
    }
    return kExitOk;
}

int cmd_list_systems() {
    for (const auto& name : builtin_names()) {
        BuiltinSystem b = builtin(name);
        std::cout << name << "\n    " << b.description << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analytic and numeric discontinuity mappings near order-4 grazing points"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    auto* classify_cmd =
        app.add_subcommand("classify", "classify a boundary point by grazing order");
    SystemArgs classify_sys;
    classify_sys.attach(classify_cmd);
    std::string classify_point;
    double classify_ztol = 1e-8;
    bool classify_json = false;
    classify_cmd->add_option("--point", classify_point, "point coordinates, comma-separated");
    classify_cmd->add_option("--ztol", classify_ztol, "zero tolerance for the vanishing tests");
    classify_cmd->add_flag("--json", classify_json, "emit JSON");

    struct MapCmd {
        CLI::App* cmd = nullptr;
        SystemArgs sys;
        double eps = 1e-4;
        std::string xstar;
        bool json = false;
    };
    MapCmd maps[3];
    const char* map_names[3] = {"zdm", "pdm", "delta"};
    const char* map_descs[3] = {"evaluate the zero-time discontinuity mapping at one epsilon",
                                "evaluate the Poincare discontinuity mapping at one epsilon",
                                "evaluate the impact time at one epsilon"};
    for (int i = 0; i < 3; ++i) {
        maps[i].cmd = app.add_subcommand(map_names[i], map_descs[i]);
        maps[i].sys.attach(maps[i].cmd);
        maps[i].cmd->add_option("--eps", maps[i].eps, "depth below the boundary")->required();
        maps[i].cmd->add_option("--xstar", maps[i].xstar, "grazing point (default: origin)");
        maps[i].cmd->add_flag("--json", maps[i].json, "emit JSON");
    }

    auto* sweep_cmd = app.add_subcommand("sweep", "run the maps over a log-spaced epsilon grid");
    SystemArgs sweep_sys;
    sweep_sys.attach(sweep_cmd);
    std::string sweep_map = "zdm", sweep_eps = "1e-8:1e-4", sweep_xstar, sweep_out, sweep_report;
    int sweep_n = 9;
    bool sweep_json = false;
    sweep_cmd->add_option("--map", sweep_map, "zdm | pdm | delta")
        ->check(CLI::IsMember({"zdm", "pdm", "delta"}));
    sweep_cmd->add_option("--eps", sweep_eps, "epsilon range a:b (log-spaced)");
    sweep_cmd->add_option("--n", sweep_n, "number of grid points");
    sweep_cmd->add_option("--xstar", sweep_xstar, "grazing point (default: origin)");
    sweep_cmd->add_option("--out", sweep_out, "write the CSV to this path");
    sweep_cmd->add_option("--report", sweep_report, "write the JSON run report to this path");
    sweep_cmd->add_flag("--json", sweep_json, "print the JSON run report");

    auto* fit_cmd = app.add_subcommand("fit", "fit a log-log slope to a sweep CSV column");
    std::string fit_csv, fit_column, fit_plot, fit_svg;
    bool fit_json = false;
    fit_cmd->add_option("csv", fit_csv, "CSV file from a sweep")->required();
    fit_cmd->add_option("--column", fit_column, "column to fit")->required();
    fit_cmd->add_option("--plot-data", fit_plot, "write gnuplot-ready two-column data here");
    fit_cmd->add_option("--svg", fit_svg, "write a log-log SVG chart here");
    fit_cmd->add_flag("--json", fit_json, "emit JSON");

    auto* list_cmd = app.add_subcommand("list-systems", "list the built-in systems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (classify_cmd->parsed())
            return cmd_classify(classify_sys, classify_point, classify_ztol, classify_json);
        for (int i = 0; i < 3; ++i)
            if (maps[i].cmd->parsed())
                return cmd_single_map(map_names[i], maps[i].sys, maps[i].eps, maps[i].xstar,
                                      maps[i].json);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_sys, sweep_map, sweep_eps, sweep_n, sweep_xstar, sweep_out,
                             sweep_report, sweep_json);
        if (fit_cmd->parsed()) return cmd_fit(fit_csv, fit_column, fit_plot, fit_svg, fit_json);
        if (list_cmd->parsed()) return cmd_list_systems();
    } catch (const NotOrder4Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGate;
    } catch (const NoCrossingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NoConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const IntegratorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const AmbiguousBracketError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
