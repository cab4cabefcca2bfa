#ifndef GRAZING_LIE_HPP
#define GRAZING_LIE_HPP

#include <vector>

#include "grazing/dsl.hpp"

namespace grazing {

/// Lie derivatives of H along X at a point: values[k] = L_X^k H(x) for
/// k = 0..K, with values[0] = H(x) exactly.
struct LieTable {
    Vec x;
    std::vector<double> values;
    int order = 0;
};

/// All L_X^k H(x), k <= K, from one Taylor pass: the solution jet of
/// x' = X(x) is built by coefficient matching c_{j+1} = [t^j] X(x(t)) / (j+1),
/// then the jet of H(x(t)) is read off. Exact to machine precision for
/// polynomial fields.
LieTable lie_derivatives(const ExpressionSystem& sys, const Vec& x, int K);

/// Mixed derivative L_W L_X^k H(x) = grad(L_X^k H)(x) . W(x). The gradient is
/// obtained by n jet passes whose scalars carry a first-order deformation of
/// one base-point coordinate each.
double lie_mixed(const ExpressionSystem& sys, int k, const Vec& x);

/// Gradient of p -> L_X^k H(p) at x (dual-number path).
Vec lie_gradient(const ExpressionSystem& sys, int k, const Vec& x);

/// Finite-difference estimates of L_X^k H(x), k = 1..K (K <= 4), from
/// order-4 central stencils applied to H along the numerically integrated
/// flow. step <= 0 selects the documented default max(1e-2, tol^(1/(k+2))).
std::vector<double> lie_fd_check(const ExpressionSystem& sys, const Vec& x, int K,
                                 double step = 0.0);

/// Scalar-generic Taylor pass; returns L_X^k H for k = 0..K with S = double
/// or S = Dual. Used by lie_derivatives and the gradient path.
template <class S>
std::vector<S> lie_values_generic(const ExpressionSystem& sys, const std::vector<S>& x, int K) {
    const size_t n = static_cast<size_t>(sys.n);
    std::vector<JetT<S>> state;
    state.reserve(n);
    for (size_t i = 0; i < n; ++i) state.push_back(JetT<S>::constant(K, x[i]));
    // Picard-style coefficient matching, one order per sweep.
    for (int j = 0; j < K; ++j) {
        std::vector<S> next(n);
        for (size_t i = 0; i < n; ++i) {
            JetT<S> fi = eval_jet(*sys.X[i], state, sys.params);
            next[i] = fi[j] / S(double(j + 1));
        }
        for (size_t i = 0; i < n; ++i) state[i][j + 1] = next[i];
    }
    JetT<S> h = eval_jet(*sys.H, state, sys.params);
    std::vector<S> values(static_cast<size_t>(K) + 1);
    double factorial = 1.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) factorial *= k;
        values[static_cast<size_t>(k)] = h[k] * S(factorial);
    }
    return values;
}

}  // namespace grazing

#endif
