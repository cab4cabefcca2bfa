#ifndef GRAZING_DMAPS_HPP
#define GRAZING_DMAPS_HPP

#include <optional>
#include <string>

#include "grazing/dsl.hpp"
#include "grazing/flow.hpp"

namespace grazing {

enum class DmMethod { Numeric, AnalyticOrder4 };

/// One evaluation of a discontinuity mapping, numeric or analytic, with all
/// intermediate quantities of the chain x1 -> x2 -> x3 -> x4 (-> x5).
/// Analytic results model the leading epsilon^(3/4) term only; the remainder
/// order is part of the method tag, never silently added.
struct DmResult {
    Vec x1;
    double eps = 0.0;
    double delta = 0.0;               // impact time, < 0 (0 when eps = 0)
    std::optional<Vec> x2;            // impact point phi(x1, delta)
    double v = 0.0;                   // boundary velocity L_X H(x2)
    std::optional<Vec> x3;            // reset point x2 + W(x2) v
    Vec x4;                           // ZDM output
    std::optional<double> delta0;     // projection time (PDM only)
    std::optional<Vec> x5;            // PDM output
    double t_x1_to_x2 = 0.0;          // recorded flow times; their sum is the
    double t_x3_to_x4 = 0.0;          // zero-time identity for the numeric map
    DmMethod method = DmMethod::Numeric;

    std::string method_string() const {
        return method == DmMethod::Numeric ? "numeric" : "analytic-order-4";
    }
};

struct DmOptions {
    EventOptions event;
    double horizon_factor = 10.0;
};

/// Leading impact-time term -(4!/L_X^4 H(base))^{1/4} eps^{1/4}. `base` is
/// either x1 or x_star; both forms appear in the asymptotics and both are
/// exposed.
double delta_asymptotic(const ExpressionSystem& sys, const Vec& base, double eps);

/// Leading boundary velocity -(4!)^{3/4}/3! (L_X^4 H(x_star))^{1/4} eps^{3/4}.
double v_leading(const ExpressionSystem& sys, const Vec& x_star, double eps);

/// Leading projection time
/// (4!)^{3/4}/3! (L_W L_X^3 H(x1)/L_X^4 H(x_star)) (L_X^4 H(x_star))^{1/4} eps^{3/4}.
double delta0_asymptotic(const ExpressionSystem& sys, const Vec& x_star, const Vec& x1,
                         double eps);

/// Zero-time discontinuity mapping by literal flow composition:
/// x4 = phi(R(phi(x1, delta)), -delta) with delta found by backward event
/// detection on H. Runs on any system, no order gate.
DmResult zdm_numeric(const ExpressionSystem& sys, const Vec& x1, double eps,
                     const DmOptions& opts = {});

/// Analytic order-4 ZDM: x1 - (4!)^{3/4}/3! W(x1) (L_X^4 H(x_star))^{1/4} eps^{3/4}.
/// Refuses systems whose tangency at x_star is not order-4 regular.
DmResult zdm_analytic(const ExpressionSystem& sys, const Vec& x_star, const Vec& x1,
                      double eps);

/// Poincare discontinuity mapping: the ZDM output projected back onto
/// Pi_3 = {L_X^3 H = 0} along the flow. The crossing search runs in both time
/// directions; the crossing nearest to t = 0 wins, ties resolved toward
/// positive time.
DmResult pdm_numeric(const ExpressionSystem& sys, const Vec& x1, double eps,
                     const DmOptions& opts = {});

/// Analytic order-4 PDM:
/// x1 - [W(x1) - (L_W L_X^3 H(x1)/L_X^4 H(x_star)) X(x1)]
///      (4!)^{3/4} (L_X^4 H(x_star))^{1/4}/3! eps^{3/4}.
DmResult pdm_analytic(const ExpressionSystem& sys, const Vec& x_star, const Vec& x1,
                      double eps);

}  // namespace grazing

#endif
