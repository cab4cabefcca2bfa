#ifndef GRAZING_FLOW_HPP
#define GRAZING_FLOW_HPP

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include "grazing/dsl.hpp"

namespace grazing {

struct IntegrateOptions {
    double atol = 1e-12;
    double rtol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0 = automatic
    long max_steps = 1000000;
};

/// One accepted step with its continuous extension. The interpolant is the
/// standard fourth-order dense output of the Dormand-Prince 5(4) pair.
struct StepRecord {
    double t0 = 0.0;   // signed start time of the step
    double h = 0.0;    // signed step length
    Vec y0, y1;
    std::array<Vec, 5> rcont;
};

/// Dense-output trajectory of x' = X(x). Backward spans are integrated as
/// forward spans of -X; stored times remain the caller's signed times and are
/// strictly monotone in the direction of integration.
class Trajectory {
  public:
    double t_start = 0.0, t_end = 0.0;
    int dim = 0;
    bool backward = false;
    std::vector<StepRecord> steps;
    long n_accepted = 0, n_rejected = 0, n_field_evals = 0;

    /// Interpolated state at t (t within [t_start, t_end], either orientation).
    Vec at(double t) const;
};

Trajectory integrate(const ExpressionSystem& sys, const Vec& x0, double t0, double t1,
                     const IntegrateOptions& opts = {});

enum class EventFunctional { BoundaryH, LieDeriv3H };
enum class Direction { Forward, Backward };

struct EventOptions {
    IntegrateOptions integ;
    double time_tol = 1e-13;      // bracket width target, scaled by max(1,|t*|)
    double value_tol = 1e-11;     // |functional| at the reported state
    int substeps = 8;             // dense-output scan resolution per accepted step
};

struct EventHit {
    double t = 0.0;
    Vec state;
    double residual = 0.0;        // functional value at state
    double bracket_width = 0.0;
    Trajectory trajectory;        // the integration the hit was found on
};

/// First time, nearest to 0 in the requested direction, at which the chosen
/// scalar functional crosses zero along the flow from x0. The dense output of
/// every accepted step is scanned at `substeps` interior points before
/// bracketing, so flat near-tangent functionals are not missed; the bracket
/// is then refined by a secant/bisection hybrid.
EventHit first_crossing(const ExpressionSystem& sys, const Vec& x0, EventFunctional functional,
                        Direction direction, double horizon, const EventOptions& opts = {});

/// Generic-functional variant used internally and by tests.
EventHit first_crossing_fn(const ExpressionSystem& sys, const Vec& x0,
                           const std::function<double(const Vec&)>& functional,
                           Direction direction, double horizon, const EventOptions& opts = {});

}  // namespace grazing

#endif
