#include "grazing/grazing_point.hpp"

#include <cmath>

#include "grazing/errors.hpp"
#include "grazing/lie.hpp"

namespace grazing {

namespace {
constexpr int kMaxOrder = 8;  // tangencies above 2k = 8 report "unclassified"
}

std::string GrazingReport::kind_string() const {
    switch (kind) {
        case TangencyKind::Transversal: return "transversal";
        case TangencyKind::Order: return "order " + std::to_string(order);
        case TangencyKind::Unclassified: return "unclassified";
    }
    return "unclassified";
}

GrazingReport classify(const ExpressionSystem& sys, const Vec& x, double zero_tolerance) {
    double h = eval_H(sys, x);
    if (std::abs(h) > zero_tolerance)
        throw NotOnBoundaryError("point is not on the boundary: H = " + std::to_string(h));

    LieTable table = lie_derivatives(sys, x, kMaxOrder);

    GrazingReport report;
    report.x = x;
    report.zero_tolerance = zero_tolerance;
    report.lie_values.assign(table.values.begin() + 1, table.values.end());

    auto L = [&](int k) { return table.values[static_cast<size_t>(k)]; };

    for (int m = 1; m <= kMaxOrder; ++m) {
        double tol_m = zero_tolerance * std::max(1.0, std::abs(L(m)));
        if (std::abs(L(m)) <= tol_m) continue;
        bool lower_vanish = true;
        for (int j = 1; j < m; ++j)
            if (std::abs(L(j)) > tol_m) {
                lower_vanish = false;
                break;
            }
        if (!lower_vanish) break;  // vanishing pattern broken; nothing to report
        if (m == 1) {
            report.kind = TangencyKind::Transversal;
        } else if (m % 2 == 0) {
            report.kind = TangencyKind::Order;
            report.order = m;
        }  // odd m > 1: degenerate tangency, stays "unclassified"
        report.transversality_ok = std::abs(L(4)) > zero_tolerance * std::max(1.0, std::abs(L(4)));
        return report;
    }
    report.transversality_ok = false;
    return report;
}

namespace {

struct Newton2x2 {
    double a, b, c, d;  // [[a b],[c d]]
    bool solve(double r1, double r2, double& dx, double& dy) const {
        double det = a * d - b * c;
        double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), 1e-300});
        if (std::abs(det) < 1e-14 * scale * scale) return false;
        dx = (r1 * d - r2 * b) / det;
        dy = (a * r2 - c * r1) / det;
        return true;
    }
};

}  // namespace

Pi3Point pi3_point(const ExpressionSystem& sys, const Vec& x_star, double eps,
                   const std::optional<Vec>& seed) {
    const size_t n = static_cast<size_t>(sys.n);
    if (x_star.size() != n) throw Error("state dimension mismatch");

    Vec p = seed.value_or([&] {
        Vec s = x_star;
        s[n - 1] -= eps;
        return s;
    }());

    // Basis of the search plane: u = e_n and the gradient direction of
    // L_X^3 H at x_star, orthogonalized against u. For n = 2 this spans the
    // whole plane, so the restriction is vacuous. Built lazily: a seed that
    // already satisfies both equations (degenerate Pi_3) needs no basis.
    Vec u(n, 0.0);
    u[n - 1] = 1.0;
    Vec w;
    auto plane_basis = [&]() -> const Vec& {
        if (!w.empty()) return w;
        w = lie_gradient(sys, 3, x_star);
        w[n - 1] = 0.0;  // orthogonalize against e_n
        double wn = 0.0;
        for (double c : w) wn += c * c;
        wn = std::sqrt(wn);
        if (wn < 1e-300) {
            w.clear();
            throw JacobianSingularError("grad(L_X^3 H)(x_star) has no component off e_n");
        }
        for (double& c : w) c /= wn;
        return w;
    };

    const double tol_lie3 = 1e-11;
    const double tol_H = 1e-12 * std::max(1.0, eps);

    Pi3Point out;
    out.eps = eps;

    for (int it = 0; it <= 50; ++it) {
        double f1 = lie_values_generic<double>(sys, p, 3)[3];
        double f2 = eval_H(sys, p) + eps;
        out.residual_lie3 = f1;
        out.residual_H = f2;
        out.iterations = it;
        if (std::abs(f1) <= tol_lie3 && std::abs(f2) <= tol_H) {
            out.x = p;
            return out;
        }
        if (it == 50) break;

        const Vec& pw = plane_basis();
        Vec g3 = lie_gradient(sys, 3, p);
        Vec gH = lie_gradient(sys, 0, p);  // gradient of H itself

        // Jacobian of (f1, f2) with respect to the plane coordinates (a, b)
        // along directions w and u.
        Newton2x2 J{};
        J.a = 0.0;
        J.b = 0.0;
        J.c = 0.0;
        J.d = 0.0;
        for (size_t i = 0; i < n; ++i) {
            J.a += g3[i] * pw[i];
            J.b += g3[i] * u[i];
            J.c += gH[i] * pw[i];
            J.d += gH[i] * u[i];
        }
        double da = 0.0, db = 0.0;
        if (!J.solve(f1, f2, da, db))
            throw JacobianSingularError("singular Newton system while locating the Pi_3 point");
        for (size_t i = 0; i < n; ++i) p[i] -= da * pw[i] + db * u[i];
    }
    throw NoConvergenceError("Pi_3 Newton iteration did not converge in 50 steps (|L3| = " +
                             std::to_string(out.residual_lie3) + ", |H+eps| = " +
                             std::to_string(out.residual_H) + ")");
}

}  // namespace grazing
