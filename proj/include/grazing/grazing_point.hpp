#ifndef GRAZING_GRAZING_POINT_HPP
#define GRAZING_GRAZING_POINT_HPP

#include <optional>
#include <string>
#include <vector>

#include "grazing/dsl.hpp"

namespace grazing {

enum class TangencyKind { Transversal, Order, Unclassified };

/// Classification of a boundary point by the vanishing pattern of its Lie
/// derivatives. If kind == Order, `order` is the smallest 2k with
/// L_X^j H = 0 for j < 2k and L_X^{2k} H != 0 (within tolerance).
struct GrazingReport {
    Vec x;
    std::vector<double> lie_values;  // L_X^1 H .. L_X^{2 Kmax} H
    TangencyKind kind = TangencyKind::Unclassified;
    int order = 0;
    bool transversality_ok = false;  // grad(L_X^3 H) . X = L_X^4 H != 0
    double zero_tolerance = 0.0;

    std::string kind_string() const;
};

/// Classify a point claimed to lie on the boundary. The vanishing test for
/// each candidate order m uses |L_j| <= ztol * max(1, |L_m|), so it is
/// invariant under positive rescaling of H. Order search is capped at 8.
GrazingReport classify(const ExpressionSystem& sys, const Vec& x, double zero_tolerance = 1e-8);

/// A point of the surface Pi_3 = {L_X^3 H = 0} at depth eps below the
/// boundary: H(x) = -eps and L_X^3 H(x) = 0.
struct Pi3Point {
    double eps = 0.0;
    Vec x;
    double residual_lie3 = 0.0;
    double residual_H = 0.0;
    int iterations = 0;
};

/// Newton construction of the Pi_3 point near the grazing point x_star. For
/// n = 2 this is a plain 2x2 Newton iteration on (L_X^3 H, H + eps); for
/// n > 2 the same two equations are solved restricted to the plane through
/// the seed spanned by e_n and grad(L_X^3 H)(x_star). Default seed is
/// x_star - eps * e_n.
Pi3Point pi3_point(const ExpressionSystem& sys, const Vec& x_star, double eps,
                   const std::optional<Vec>& seed = std::nullopt);

}  // namespace grazing

#endif
