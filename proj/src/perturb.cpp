#include "grazing/perturb.hpp"

#include <cmath>

#include "grazing/errors.hpp"

namespace grazing {

PerturbedRootFamily perturbed_roots(const ScalarFn& f, const DerivFn& g_derivs,
                                    double base_root, int m, double eps) {
    if (m < 1) throw Error("multiplicity must be at least 1");
    if (eps < 0.0) throw Error("eps must be nonnegative");

    for (int j = 0; j < m; ++j) {
        double gj = g_derivs(j, base_root);
        if (std::abs(gj) > 1e-9)
            throw NotAMultiplicityMRootError(
                "g^(" + std::to_string(j) + ") at the base root is " + std::to_string(gj) +
                "; not a root of multiplicity " + std::to_string(m));
    }
    double gm = g_derivs(m, base_root);
    if (gm == 0.0)
        throw ZeroLeadingDerivativeError("g^(m) vanishes at the base root");

    double m_factorial = 1.0;
    for (int j = 2; j <= m; ++j) m_factorial *= j;

    std::complex<double> radicand(-eps * m_factorial * f(base_root) / gm, 0.0);
    std::complex<double> principal = std::pow(radicand, 1.0 / m);

    PerturbedRootFamily fam;
    fam.base_root = base_root;
    fam.multiplicity = m;
    fam.eps = eps;
    const double two_pi = 2.0 * M_PI;
    for (int k = 0; k < m; ++k) {
        std::complex<double> rot = std::polar(1.0, two_pi * k / m);
        fam.roots.push_back(std::complex<double>(base_root, 0.0) + principal * rot);
    }
    if (m == 1) fam.roots[0] = std::complex<double>(fam.roots[0].real(), 0.0);
    return fam;
}

double brute_root_oracle(const ScalarFn& h, double a, double b) {
    double fa = h(a), fb = h(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa < 0.0) == (fb < 0.0))
        throw NoSignChangeError("no sign change on the bracket [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]");
    while (std::abs(b - a) > 1e-14) {
        double m = 0.5 * (a + b);
        if (m == a || m == b) break;  // interval at machine resolution
        double fm = h(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace grazing
