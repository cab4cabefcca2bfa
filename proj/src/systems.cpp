#include "grazing/systems.hpp"

#include <cmath>

#include "grazing/errors.hpp"

namespace grazing {

namespace {

// These strings are also installed as plain-text files under systems/ so
// users can copy and modify them; test_systems checks the two stay in sync.

const char* kPaperHamiltonianSrc =
    "# Perturbed quartic Hamiltonian flow with a flat boundary at y = 0.\n"
    "# The origin is a regular grazing point of order 4 for every xi here.\n"
    "dim 2;\n"
    "param xi=0.1, k=1, k1=0, k2=0;\n"
    "X = [-(y - 1)^3, x^3 - xi*(x^4 + (y - 1)^4 - 1)];\n"
    "H = y;\n"
    "W = [k + k1*y, k2*y];\n";

const char* kMonomial4Src =
    "# Unit horizontal transport with a quartic-tangent boundary: the flow\n"
    "# from (0, -eps) is x(t) = t, y(t) = -eps + c t^4 / 4, all maps are\n"
    "# available in closed form.\n"
    "dim 2;\n"
    "param c=6, k=1;\n"
    "X = [1, c*x^3];\n"
    "H = y;\n"
    "W = [k, 0];\n";

const char* kParabola2Src =
    "# Order-2 negative control: quadratic tangency at the origin. The\n"
    "# analytic order-4 maps must refuse this system.\n"
    "dim 2;\n"
    "param k=1;\n"
    "X = [1, 2*x];\n"
    "H = y;\n"
    "W = [k, 0];\n";

}  // namespace

BuiltinSystem builtin(const std::string& name) {
    BuiltinSystem b;
    b.name = name;
    b.grazing_point = {0.0, 0.0};
    if (name == "paper-hamiltonian") {
        b.description =
            "perturbed quartic Hamiltonian with order-4 grazing at the origin "
            "(xi=0.1, W=(k+k1*y, k2*y))";
        b.source = kPaperHamiltonianSrc;
        b.system = parse_system(b.source);
        b.level_function = [](const Vec& x) {
            double ym1 = x[1] - 1.0;
            return x[0] * x[0] * x[0] * x[0] + ym1 * ym1 * ym1 * ym1;
        };
        return b;
    }
    if (name == "monomial4") {
        b.description = "X=(1, c*x^3), H=y, order-4 grazing with fully closed-form ground truth";
        b.source = kMonomial4Src;
        b.system = parse_system(b.source);
        b.exact_delta = [](double eps, const ParamMap& p) {
            return -std::pow(4.0 * eps / p.at("c"), 0.25);
        };
        b.exact_flow = [](const Vec& x, double t, const ParamMap& p) {
            double c = p.at("c");
            double x1 = x[0] + t;
            return Vec{x1, x[1] + c * (x1 * x1 * x1 * x1 - x[0] * x[0] * x[0] * x[0]) / 4.0};
        };
        b.exact_lie = [](const Vec& x, const ParamMap& p) {
            double c = p.at("c");
            return std::vector<double>{c * x[0] * x[0] * x[0], 3.0 * c * x[0] * x[0],
                                       6.0 * c * x[0], 6.0 * c};
        };
        return b;
    }
    if (name == "parabola2") {
        b.description = "X=(1, 2*x), H=y, order-2 tangency (negative control for the order gate)";
        b.source = kParabola2Src;
        b.system = parse_system(b.source);
        b.exact_delta = [](double eps, const ParamMap&) { return -std::sqrt(eps); };
        b.exact_flow = [](const Vec& x, double t, const ParamMap&) {
            double x1 = x[0] + t;
            return Vec{x1, x[1] + x1 * x1 - x[0] * x[0]};
        };
        b.exact_lie = [](const Vec& x, const ParamMap&) {
            return std::vector<double>{2.0 * x[0], 2.0, 0.0, 0.0};
        };
        return b;
    }
    throw UnknownSystemError("unknown built-in system '" + name +
                             "' (try: paper-hamiltonian, monomial4, parabola2)");
}

std::vector<std::string> builtin_names() {
    return {"paper-hamiltonian", "monomial4", "parabola2"};
}

}  // namespace grazing
