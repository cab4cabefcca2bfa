#include "grazing/lie.hpp"

#include <cmath>

#include "grazing/errors.hpp"
#include "grazing/flow.hpp"

namespace grazing {

LieTable lie_derivatives(const ExpressionSystem& sys, const Vec& x, int K) {
    if (K < 1) throw Error("lie_derivatives requires K >= 1");
    if (x.size() != static_cast<size_t>(sys.n)) throw Error("state dimension mismatch");
    LieTable table;
    table.x = x;
    table.order = K;
    table.values = lie_values_generic<double>(sys, x, K);
    return table;
}

Vec lie_gradient(const ExpressionSystem& sys, int k, const Vec& x) {
    const size_t n = static_cast<size_t>(sys.n);
    Vec grad(n);
    std::vector<Dual> xd(n);
    for (size_t i = 0; i < n; ++i) xd[i] = Dual(x[i], 0.0);
    for (size_t i = 0; i < n; ++i) {
        xd[i].d = 1.0;
        grad[i] = lie_values_generic<Dual>(sys, xd, k)[static_cast<size_t>(k)].d;
        xd[i].d = 0.0;
    }
    return grad;
}

double lie_mixed(const ExpressionSystem& sys, int k, const Vec& x) {
    if (k < 1) throw Error("lie_mixed requires k >= 1");
    Vec grad = lie_gradient(sys, k, x);
    Vec w = eval_W(sys, x);
    double acc = 0.0;
    for (size_t i = 0; i < grad.size(); ++i) acc += grad[i] * w[i];
    return acc;
}

namespace {

// Order-4 central stencils for the k-th derivative, k = 1..4.
// Node offsets are j*h for j in [-3,3]; index 3 is the center.
struct Stencil {
    int half_width;
    double weights[7];  // applied to f(-hw*h) .. f(+hw*h), padded with zeros
    double scale;       // divide by scale * h^k
};

const Stencil kStencils[4] = {
    {2, {0, 1, -8, 0, 8, -1, 0}, 12.0},
    {2, {0, -1, 16, -30, 16, -1, 0}, 12.0},
    {3, {1, -8, 13, 0, -13, 8, -1}, 8.0},
    {3, {-1, 12, -39, 56, -39, 12, -1}, 6.0},
};

}  // namespace

std::vector<double> lie_fd_check(const ExpressionSystem& sys, const Vec& x, int K,
                                 double step) {
    if (K < 1 || K > 4) throw Error("lie_fd_check supports 1 <= K <= 4");

    IntegrateOptions tight;
    tight.atol = 1e-14;
    tight.rtol = 1e-14;

    std::vector<double> out(static_cast<size_t>(K) + 1, 0.0);
    out[0] = eval_H(sys, x);

    for (int k = 1; k <= K; ++k) {
        double h = step;
        if (h <= 0.0) h = std::max(1e-2, std::pow(tight.atol, 1.0 / (k + 2)));
        const Stencil& st = kStencils[k - 1];

        // H at the stencil nodes. Nodes are reached by chaining short
        // integrations so that the slowly varying part of the integration
        // error is annihilated by the difference weights.
        double fnode[7] = {0, 0, 0, 0, 0, 0, 0};
        fnode[3] = out[0];
        Vec state = x;
        for (int j = 1; j <= st.half_width; ++j) {
            Trajectory leg = integrate(sys, state, 0.0, h, tight);
            state = leg.steps.back().y1;
            fnode[3 + j] = eval_H(sys, state);
        }
        state = x;
        for (int j = 1; j <= st.half_width; ++j) {
            Trajectory leg = integrate(sys, state, 0.0, -h, tight);
            state = leg.steps.back().y1;
            fnode[3 - j] = eval_H(sys, state);
        }

        double acc = 0.0;
        for (int j = 0; j < 7; ++j) acc += st.weights[j] * fnode[j];
        out[static_cast<size_t>(k)] = acc / (st.scale * std::pow(h, k));
    }
    return out;
}

}  // namespace grazing
