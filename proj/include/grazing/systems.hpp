#ifndef GRAZING_SYSTEMS_HPP
#define GRAZING_SYSTEMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grazing/dsl.hpp"

namespace grazing {

/// A shipped system with known ground truth. The DSL source is the single
/// definition; closed-form references, where they exist, are independent of
/// the generic evaluation paths and exist to test them.
struct BuiltinSystem {
    std::string name;
    std::string description;
    std::string source;
    ExpressionSystem system;
    Vec grazing_point;  // the tangency the maps are built around

    /// Exact first backward impact time from (0, -eps), when known in closed
    /// form.
    std::function<double(double eps, const ParamMap&)> exact_delta;
    /// Exact flow map phi(x, t), when known in closed form.
    std::function<Vec(const Vec& x, double t, const ParamMap&)> exact_flow;
    /// Exact Lie derivatives L_X^1..4 H(x), when known in closed form.
    std::function<std::vector<double>(const Vec& x, const ParamMap&)> exact_lie;
    /// Conserved level function of the unperturbed flow, when one exists.
    std::function<double(const Vec& x)> level_function;
};

/// Look up a shipped system: paper-hamiltonian, monomial4, or parabola2.
BuiltinSystem builtin(const std::string& name);

std::vector<std::string> builtin_names();

}  // namespace grazing

#endif
