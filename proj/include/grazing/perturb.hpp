#ifndef GRAZING_PERTURB_HPP
#define GRAZING_PERTURB_HPP

#include <complex>
#include <functional>
#include <vector>

namespace grazing {

/// Roots of eps*f + g near a multiplicity-m root of g: the full m-th root
/// family delta_k = delta_bar + (-eps m! f(delta_bar)/g^(m)(delta_bar))^{1/m}
/// e^{2 k pi i / m}, k = 0..m-1. Pairwise root ratios are exact m-th roots of
/// unity; for m = 1 the single root is real when the inputs are real.
struct PerturbedRootFamily {
    double base_root = 0.0;
    int multiplicity = 1;
    double eps = 0.0;
    std::vector<std::complex<double>> roots;
};

using ScalarFn = std::function<double(double)>;
/// Evaluator of g and its derivatives: g_derivs(j, x) = g^(j)(x), j = 0..m.
using DerivFn = std::function<double(int, double)>;

PerturbedRootFamily perturbed_roots(const ScalarFn& f, const DerivFn& g_derivs,
                                    double base_root, int m, double eps);

/// Bisection to an interval width of 1e-14, used as the independent check of
/// the perturbed-root formula. Requires a sign change on the bracket.
double brute_root_oracle(const ScalarFn& h, double a, double b);

}  // namespace grazing

#endif
