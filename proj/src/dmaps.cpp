#include "grazing/dmaps.hpp"

#include <cmath>

#include "grazing/errors.hpp"
#include "grazing/grazing_point.hpp"
#include "grazing/lie.hpp"

namespace grazing {

namespace {

const double kLeadCoeff = std::pow(24.0, 0.75) / 6.0;  // (4!)^{3/4} / 3!

double lie4_checked(const ExpressionSystem& sys, const Vec& base) {
    double L4 = lie_derivatives(sys, base, 4).values[4];
    if (L4 <= 0.0)
        throw NonpositiveRadicandError(
            "L_X^4 H at the base point is not positive (" + std::to_string(L4) +
            "); no real fourth root on this side of the boundary");
    return L4;
}

void require_order4(const ExpressionSystem& sys, const Vec& x_star) {
    GrazingReport rep = classify(sys, x_star);
    if (rep.kind != TangencyKind::Order || rep.order != 4)
        throw NotOrder4Error("analytic order-4 mapping refused: point classifies as " +
                             rep.kind_string());
}

/// Natural time scale of the impact from the Lie values at x1; covers systems
/// of any grazing order so the numeric oracle can run on order-2 controls.
double impact_time_scale(const ExpressionSystem& sys, const Vec& x1, double eps) {
    LieTable t = lie_derivatives(sys, x1, 4);
    double best = 0.0;
    double factorial = 1.0;
    for (int k = 1; k <= 4; ++k) {
        factorial *= k;
        double Lk = std::abs(t.values[static_cast<size_t>(k)]);
        if (Lk < 1e-300) continue;
        double tk = std::pow(factorial * eps / Lk, 1.0 / k);
        if (best == 0.0 || tk < best) best = tk;
    }
    return best > 0.0 ? best : std::max(1.0, std::pow(eps, 0.25));
}

Vec reset_map(const ExpressionSystem& sys, const Vec& x2, double v) {
    Vec w = eval_W(sys, x2);
    Vec x3 = x2;
    for (size_t i = 0; i < x3.size(); ++i) x3[i] += w[i] * v;
    return x3;
}

DmResult identity_result(const Vec& x1, double eps, DmMethod method) {
    DmResult r;
    r.x1 = x1;
    r.eps = eps;
    r.x2 = x1;
    r.x3 = x1;
    r.x4 = x1;
    r.method = method;
    return r;
}

}  // namespace

double delta_asymptotic(const ExpressionSystem& sys, const Vec& base, double eps) {
    double L4 = lie4_checked(sys, base);
    if (eps == 0.0) return 0.0;
    return -std::pow(24.0 / L4, 0.25) * std::pow(eps, 0.25);
}

double v_leading(const ExpressionSystem& sys, const Vec& x_star, double eps) {
    require_order4(sys, x_star);
    double L4 = lie4_checked(sys, x_star);
    if (eps == 0.0) return 0.0;
    return -kLeadCoeff * std::pow(L4, 0.25) * std::pow(eps, 0.75);
}

double delta0_asymptotic(const ExpressionSystem& sys, const Vec& x_star, const Vec& x1,
                         double eps) {
    double L4 = lie4_checked(sys, x_star);
    if (eps == 0.0) return 0.0;
    double LwL3 = lie_mixed(sys, 3, x1);
    return kLeadCoeff * (LwL3 / L4) * std::pow(L4, 0.25) * std::pow(eps, 0.75);
}

DmResult zdm_numeric(const ExpressionSystem& sys, const Vec& x1, double eps,
                     const DmOptions& opts) {
    if (eps == 0.0) return identity_result(x1, eps, DmMethod::Numeric);

    double horizon = opts.horizon_factor * impact_time_scale(sys, x1, eps);
    EventHit hit = first_crossing(sys, x1, EventFunctional::BoundaryH, Direction::Backward,
                                  horizon, opts.event);

    DmResult r;
    r.x1 = x1;
    r.eps = eps;
    r.delta = hit.t;
    r.x2 = hit.state;
    r.t_x1_to_x2 = hit.t;
    r.v = lie_derivatives(sys, hit.state, 1).values[1];
    r.x3 = reset_map(sys, hit.state, r.v);
    r.t_x3_to_x4 = -hit.t;
    Trajectory back = integrate(sys, *r.x3, 0.0, -hit.t, opts.event.integ);
    r.x4 = back.steps.back().y1;
    r.method = DmMethod::Numeric;
    return r;
}

DmResult zdm_analytic(const ExpressionSystem& sys, const Vec& x_star, const Vec& x1,
                      double eps) {
    require_order4(sys, x_star);
    double L4 = lie4_checked(sys, x_star);

    DmResult r;
    r.x1 = x1;
    r.eps = eps;
    r.method = DmMethod::AnalyticOrder4;
    r.delta = eps == 0.0 ? 0.0 : -std::pow(24.0 / L4, 0.25) * std::pow(eps, 0.25);
    r.v = eps == 0.0 ? 0.0 : -kLeadCoeff * std::pow(L4, 0.25) * std::pow(eps, 0.75);
    Vec w = eval_W(sys, x1);
    r.x4 = x1;
    double shift = kLeadCoeff * std::pow(L4, 0.25) * std::pow(eps, 0.75);
    for (size_t i = 0; i < r.x4.size(); ++i) r.x4[i] -= shift * w[i];
    return r;
}

DmResult pdm_numeric(const ExpressionSystem& sys, const Vec& x1, double eps,
                     const DmOptions& opts) {
    DmResult r = zdm_numeric(sys, x1, eps, opts);
    if (eps == 0.0) {
        r.delta0 = 0.0;
        r.x5 = r.x4;
        return r;
    }

    double lie3_at_x4 = lie_values_generic<double>(sys, r.x4, 3)[3];
    if (std::abs(lie3_at_x4) <= opts.event.value_tol) {
        // already on Pi_3 (W = 0 or exact cancellation); nothing to project
        r.delta0 = 0.0;
        r.x5 = r.x4;
        return r;
    }

    // Horizon from the asymptotic projection time with the Lie data at x1;
    // floor keeps degenerate mixed derivatives searchable.
    double L4 = lie_derivatives(sys, x1, 4).values[4];
    double d0_scale = 0.0;
    if (L4 > 0.0) {
        double LwL3 = lie_mixed(sys, 3, x1);
        d0_scale = std::abs(kLeadCoeff * (LwL3 / L4) * std::pow(L4, 0.25) * std::pow(eps, 0.75));
    }
    double horizon = opts.horizon_factor * d0_scale + impact_time_scale(sys, x1, eps);

    std::optional<EventHit> fwd, bwd;
    try {
        fwd = first_crossing(sys, r.x4, EventFunctional::LieDeriv3H, Direction::Forward, horizon,
                             opts.event);
    } catch (const NoCrossingError&) {
    }
    try {
        bwd = first_crossing(sys, r.x4, EventFunctional::LieDeriv3H, Direction::Backward, horizon,
                             opts.event);
    } catch (const NoCrossingError&) {
    }
    if (!fwd && !bwd)
        throw NoCrossingError("no Pi_3 crossing within horizon " + std::to_string(horizon) +
                              " in either time direction");

    const EventHit* hit;
    if (fwd && bwd)
        hit = (std::abs(fwd->t) <= std::abs(bwd->t)) ? &*fwd : &*bwd;  // tie -> positive time
    else
        hit = fwd ? &*fwd : &*bwd;

    r.delta0 = hit->t;
    r.x5 = hit->state;
    return r;
}

DmResult pdm_analytic(const ExpressionSystem& sys, const Vec& x_star, const Vec& x1,
                      double eps) {
    require_order4(sys, x_star);
    double L4 = lie4_checked(sys, x_star);

    DmResult r;
    r.x1 = x1;
    r.eps = eps;
    r.method = DmMethod::AnalyticOrder4;
    if (eps == 0.0) {
        r.x4 = x1;
        r.delta0 = 0.0;
        r.x5 = x1;
        return r;
    }
    double LwL3 = lie_mixed(sys, 3, x1);
    Vec w = eval_W(sys, x1);
    Vec f = eval_field(sys, x1);
    double shift = kLeadCoeff * std::pow(L4, 0.25) * std::pow(eps, 0.75);

    r.delta = -std::pow(24.0 / L4, 0.25) * std::pow(eps, 0.25);
    r.v = -kLeadCoeff * std::pow(L4, 0.25) * std::pow(eps, 0.75);
    r.delta0 = kLeadCoeff * (LwL3 / L4) * std::pow(L4, 0.25) * std::pow(eps, 0.75);

    r.x4 = x1;
    for (size_t i = 0; i < r.x4.size(); ++i) r.x4[i] -= shift * w[i];
    Vec x5 = x1;
    for (size_t i = 0; i < x5.size(); ++i) x5[i] -= shift * (w[i] - (LwL3 / L4) * f[i]);
    r.x5 = x5;
    return r;
}

}  // namespace grazing
