#include "grazing/flow.hpp"

#include <algorithm>
#include <cmath>

#include "grazing/errors.hpp"
#include "grazing/lie.hpp"

namespace grazing {

namespace {

// Dormand-Prince 5(4) tableau (Hairer, Norsett, Wanner I). The field is
// autonomous, so the stage times are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output coefficients
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct Field {
    const ExpressionSystem& sys;
    double sign;  // +1 forward, -1 backward
    mutable long evals = 0;

    Vec operator()(const Vec& x) const {
        ++evals;
        Vec f = eval_field(sys, x);
        if (sign < 0)
            for (auto& v : f) v = -v;
        return f;
    }
};

double initial_step_guess(const Field& f, const Vec& y0, const Vec& f0, double atol,
                          double rtol, double tau_max) {
    double dnf = 0.0, dny = 0.0;
    for (size_t i = 0; i < y0.size(); ++i) {
        double sc = atol + rtol * std::abs(y0[i]);
        dnf += (f0[i] / sc) * (f0[i] / sc);
        dny += (y0[i] / sc) * (y0[i] / sc);
    }
    double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h0 = std::min(h0, tau_max);
    // one explicit Euler probe to estimate the second derivative scale
    Vec y1(y0.size());
    for (size_t i = 0; i < y0.size(); ++i) y1[i] = y0[i] + h0 * f0[i];
    Vec f1 = f(y1);
    double der2 = 0.0;
    for (size_t i = 0; i < y0.size(); ++i) {
        double sc = atol + rtol * std::abs(y0[i]);
        double d = (f1[i] - f0[i]) / sc;
        der2 += d * d;
    }
    der2 = std::sqrt(der2) / h0;
    double der12 = std::max(der2, std::sqrt(dnf));
    double h1 = (der12 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                 : std::pow(0.01 / der12, 1.0 / 5.0);
    return std::min({100.0 * h0, h1, tau_max});
}

}  // namespace

Vec Trajectory::at(double t) const {
    if (steps.empty()) throw IntegratorError("empty trajectory");
    const double lo = std::min(t_start, t_end), hi = std::max(t_start, t_end);
    const double slack = 1e-12 * std::max(1.0, hi - lo);
    if (t < lo - slack || t > hi + slack)
        throw IntegratorError("dense-output time outside the integrated span");
    // binary search on signed step start times (monotone in either direction)
    const bool dec = backward;
    size_t a = 0, b = steps.size() - 1;
    while (a < b) {
        size_t m = (a + b) / 2;
        double end = steps[m].t0 + steps[m].h;
        bool past = dec ? (t < end) : (t > end);
        if (past)
            a = m + 1;
        else
            b = m;
    }
    const StepRecord& s = steps[a];
    double theta = s.h == 0.0 ? 0.0 : (t - s.t0) / s.h;
    theta = std::clamp(theta, 0.0, 1.0);
    const double th1 = 1.0 - theta;
    Vec out(static_cast<size_t>(dim));
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = s.rcont[0][i] +
                 theta * (s.rcont[1][i] +
                          th1 * (s.rcont[2][i] + theta * (s.rcont[3][i] + th1 * s.rcont[4][i])));
    }
    return out;
}

Trajectory integrate(const ExpressionSystem& sys, const Vec& x0, double t0, double t1,
                     const IntegrateOptions& opts) {
    const size_t n = static_cast<size_t>(sys.n);
    if (x0.size() != n) throw Error("state dimension mismatch");
    Trajectory traj;
    traj.dim = sys.n;
    traj.t_start = t0;
    traj.t_end = t1;
    traj.backward = t1 < t0;

    const double span = std::abs(t1 - t0);
    if (span == 0.0) {
        // degenerate span: a single zero-length constant segment
        StepRecord s;
        s.t0 = t0;
        s.h = 0.0;
        s.y0 = s.y1 = x0;
        for (auto& r : s.rcont) r = Vec(n, 0.0);
        s.rcont[0] = x0;
        traj.steps.push_back(std::move(s));
        return traj;
    }

    const double dir = traj.backward ? -1.0 : 1.0;
    Field f{sys, dir, 0};

    Vec y = x0;
    double tau = 0.0;  // internal nonnegative time; real time = t0 + dir*tau
    Vec k1 = f(y);
    double h = opts.initial_step > 0.0
                   ? std::min(opts.initial_step, span)
                   : initial_step_guess(f, y, k1, opts.atol, opts.rtol, span);
    h = std::min(h, opts.max_step);

    Vec k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ynew(n), ytmp(n), err(n);
    long steps_taken = 0;
    bool last = false;

    while (!last) {
        if (++steps_taken > opts.max_steps)
            throw IntegratorError("maximum number of steps exceeded");
        if (tau + h >= span) {
            h = span - tau;
            last = true;
        }
        if (h <= 1e-14 * std::max(1.0, tau) && !last)
            throw IntegratorError("step size underflow");

        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        k2 = f(ytmp);
        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(ytmp);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(ytmp);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(ytmp);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        k6 = f(ytmp);
        for (size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                  a76 * k6[i]);
        k7 = f(ynew);

        double err_norm = 0.0;
        for (size_t i = 0; i < n; ++i) {
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
            double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err_norm += (err[i] / sc) * (err[i] / sc);
        }
        err_norm = std::sqrt(err_norm / static_cast<double>(n));

        if (err_norm <= 1.0) {
            StepRecord s;
            s.t0 = t0 + dir * tau;
            s.h = dir * h;
            s.y0 = y;
            s.y1 = ynew;
            for (auto& r : s.rcont) r.resize(n);
            for (size_t i = 0; i < n; ++i) {
                double ydiff = ynew[i] - y[i];
                double bspl = h * k1[i] - ydiff;
                s.rcont[0][i] = y[i];
                s.rcont[1][i] = ydiff;
                s.rcont[2][i] = bspl;
                s.rcont[3][i] = ydiff - h * k7[i] - bspl;
                s.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                     d6 * k6[i] + d7 * k7[i]);
            }
            traj.steps.push_back(std::move(s));
            ++traj.n_accepted;
            tau += h;
            y = ynew;
            k1 = k7;  // FSAL
            double fac = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2);
            h = std::min({h * std::clamp(fac, 0.2, 5.0), opts.max_step, span});
        } else {
            ++traj.n_rejected;
            last = false;
            double fac = 0.9 * std::pow(err_norm, -0.2);
            h *= std::clamp(fac, 0.1, 0.9);
            if (h < 1e-15 * std::max(1.0, tau))
                throw IntegratorError("step size underflow after rejection");
        }
    }
    traj.n_field_evals = f.evals;
    return traj;
}

namespace {

double lie3_value(const ExpressionSystem& sys, const Vec& x) {
    return lie_values_generic<double>(sys, x, 3)[3];
}

}  // namespace

EventHit first_crossing_fn(const ExpressionSystem& sys, const Vec& x0,
                           const std::function<double(const Vec&)>& functional,
                           Direction direction, double horizon, const EventOptions& opts) {
    if (horizon <= 0.0) throw Error("event horizon must be positive");
    const double dir = direction == Direction::Forward ? 1.0 : -1.0;
    Trajectory traj = integrate(sys, x0, 0.0, dir * horizon, opts.integ);

    auto g = [&](double t) { return functional(traj.at(t)); };

    // scan accepted steps outward from t = 0, sub-sampling the dense output
    double ta = 0.0, fa = functional(x0);
    bool found = false;
    double tb = 0.0, fb = 0.0;
    for (const StepRecord& s : traj.steps) {
        for (int j = 1; j <= opts.substeps && !found; ++j) {
            double t = s.t0 + s.h * (double(j) / opts.substeps);
            double ft = g(t);
            if (fa == 0.0) {  // degenerate start; move the left edge forward
                ta = t;
                fa = ft;
                continue;
            }
            if ((fa < 0.0 && ft >= 0.0) || (fa > 0.0 && ft <= 0.0)) {
                tb = t;
                fb = ft;
                found = true;
            } else {
                ta = t;
                fa = ft;
            }
        }
        if (found) break;
    }
    if (!found)
        throw NoCrossingError("functional has no sign change within horizon " +
                              std::to_string(horizon));

    // secant/bisection hybrid on the dense output
    double width_target = opts.time_tol;  // scaled below once t* settles
    for (int it = 0; it < 200; ++it) {
        width_target = opts.time_tol * std::max(1.0, std::abs(tb));
        if (std::abs(tb - ta) <= width_target) break;
        double tm;
        if (fb != fa) {
            tm = tb - fb * (tb - ta) / (fb - fa);
            double lo = std::min(ta, tb), hi = std::max(ta, tb);
            double guard = 0.1 * (hi - lo);
            if (!(tm > lo + guard && tm < hi - guard)) tm = 0.5 * (ta + tb);
        } else {
            tm = 0.5 * (ta + tb);
        }
        double fm = g(tm);
        if (fm == 0.0) {
            ta = tb = tm;
            fa = fb = fm;
            break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
            ta = tm;
            fa = fm;
        } else {
            tb = tm;
            fb = fm;
        }
    }

    double t_star = (std::abs(fa) <= std::abs(fb)) ? ta : tb;
    EventHit hit;
    hit.t = t_star;
    hit.state = traj.at(t_star);
    hit.residual = functional(hit.state);
    hit.bracket_width = std::abs(tb - ta);
    if (std::abs(hit.residual) > opts.value_tol)
        throw AmbiguousBracketError(
            "crossing could not be refined below the functional tolerance (residual " +
            std::to_string(hit.residual) + ")");
    hit.trajectory = std::move(traj);
    return hit;
}

EventHit first_crossing(const ExpressionSystem& sys, const Vec& x0, EventFunctional functional,
                        Direction direction, double horizon, const EventOptions& opts) {
    std::function<double(const Vec&)> fn;
    if (functional == EventFunctional::BoundaryH)
        fn = [&sys](const Vec& x) { return eval_H(sys, x); };
    else
        fn = [&sys](const Vec& x) { return lie3_value(sys, x); };
    return first_crossing_fn(sys, x0, fn, direction, horizon, opts);
}

}  // namespace grazing
