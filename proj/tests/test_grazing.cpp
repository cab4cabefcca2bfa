#include <doctest.h>

#include <cmath>
#include <memory>

#include "grazing/errors.hpp"
#include "grazing/grazing_point.hpp"
#include "grazing/lie.hpp"
#include "grazing/systems.hpp"

using namespace grazing;

TEST_CASE("classification of the shipped systems at the origin") {
    auto ham = builtin("paper-hamiltonian").system;
    GrazingReport r = classify(ham, {0.0, 0.0});
    CHECK(r.kind == TangencyKind::Order);
    CHECK(r.order == 4);
    CHECK(r.transversality_ok);
    CHECK(r.lie_values[3] == doctest::Approx(6.0).epsilon(1e-12));

    auto par = builtin("parabola2").system;
    GrazingReport r2 = classify(par, {0.0, 0.0});
    CHECK(r2.kind == TangencyKind::Order);
    CHECK(r2.order == 2);

    auto vert = parse_system("dim 2; X=[0, 1]; H=y; W=[0,0];");
    GrazingReport r3 = classify(vert, {0.0, 0.0});
    CHECK(r3.kind == TangencyKind::Transversal);
}

TEST_CASE("hand-built order-2 example: X=(1, 2x)") {
    auto sys = parse_system("dim 2; X=[1, 2*x]; H=y; W=[1,0];");
    GrazingReport r = classify(sys, {0.0, 0.0});
    CHECK(r.kind == TangencyKind::Order);
    CHECK(r.order == 2);
    CHECK(r.lie_values[1] == doctest::Approx(2.0));
}

TEST_CASE("points off the boundary are refused") {
    auto sys = builtin("monomial4").system;
    CHECK_THROWS_AS(classify(sys, {0.0, 1.0}), NotOnBoundaryError);
}

TEST_CASE("classification is invariant under positive rescaling of H") {
    // same system with H multiplied by 1e3
    auto scaled = parse_system(
        "dim 2; param xi=0.1, k=1, k1=0, k2=0;"
        "X = [-(y - 1)^3, x^3 - xi*(x^4 + (y - 1)^4 - 1)];"
        "H = 1000*y; W = [k + k1*y, k2*y];");
    GrazingReport r = classify(scaled, {0.0, 0.0});
    CHECK(r.kind == TangencyKind::Order);
    CHECK(r.order == 4);
    CHECK(r.lie_values[3] == doctest::Approx(6000.0).epsilon(1e-12));

    auto par = parse_system("dim 2; param k=1; X = [1, 2*x]; H = 1000*y; W = [k, 0];");
    CHECK(classify(par, {0.0, 0.0}).order == 2);
}

TEST_CASE("degenerate tangencies above the cap report unclassified") {
    // H = y along X = (1, 10 x^9): first nonvanishing Lie derivative is order 10
    auto sys = parse_system("dim 2; X=[1, 10*x^9]; H=y; W=[1,0];");
    GrazingReport r = classify(sys, {0.0, 0.0});
    CHECK(r.kind == TangencyKind::Unclassified);
}

TEST_CASE("pi3_point on the monomial system is exact") {
    auto sys = builtin("monomial4").system;
    Pi3Point p = pi3_point(sys, {0.0, 0.0}, 1e-4);
    CHECK(std::abs(p.x[0]) <= 1e-13);            // Pi_3 = {x = 0}
    CHECK(p.x[1] == doctest::Approx(-1e-4).epsilon(1e-12));
    CHECK(std::abs(p.residual_lie3) <= 1e-11);
    CHECK(std::abs(p.residual_H) <= 1e-12);
}

TEST_CASE("pi3_point at eps = 0 returns the grazing point itself") {
    auto sys = builtin("paper-hamiltonian").system;
    Pi3Point p = pi3_point(sys, {0.0, 0.0}, 0.0);
    CHECK(p.x[0] == 0.0);
    CHECK(p.x[1] == 0.0);
    CHECK(p.iterations == 0);
}

TEST_CASE("pi3_point slope matches the implicit-function value") {
    // The x-coordinate of the Pi_3 point is linear in eps at leading order
    // with slope +32 xi^3 / 3 for this field (see the ledger note on the
    // sign printed in the source text).
    auto sys = builtin("paper-hamiltonian").system;  // xi = 0.1
    double e1 = 1e-6, e2 = 1e-5;
    Pi3Point p1 = pi3_point(sys, {0.0, 0.0}, e1);
    Pi3Point p2 = pi3_point(sys, {0.0, 0.0}, e2);
    double fd_slope = (p2.x[0] - p1.x[0]) / (e2 - e1);
    double expected = 32.0 * 0.001 / 3.0;
    CHECK(std::abs(fd_slope - expected) <= 0.01 * std::abs(expected));

    // the slope estimate converges as eps decreases
    Pi3Point q1 = pi3_point(sys, {0.0, 0.0}, 1e-7);
    Pi3Point q2 = pi3_point(sys, {0.0, 0.0}, 1e-6);
    double fd2 = (q2.x[0] - q1.x[0]) / (1e-6 - 1e-7);
    CHECK(std::abs(fd2 - expected) <= std::abs(fd_slope - expected) + 1e-12);

    // value at eps = 1e-3: linear term 1.0667e-5 plus an O(eps^2) tail
    Pi3Point p3 = pi3_point(sys, {0.0, 0.0}, 1e-3);
    CHECK(std::abs(p3.x[0] - expected * 1e-3) <= 1e-7);
}

TEST_CASE("pi3_point approaches the grazing point linearly in eps") {
    auto sys = builtin("paper-hamiltonian").system;
    double prev_ratio = 0.0;
    for (double e : {1e-6, 1e-5, 1e-4, 1e-3}) {
        Pi3Point p = pi3_point(sys, {0.0, 0.0}, e);
        double dist = std::hypot(p.x[0], p.x[1]);
        double ratio = dist / e;
        CHECK(ratio <= 2.0);  // |x1(eps) - x*| <= C eps with modest C
        if (prev_ratio > 0.0) CHECK(std::abs(ratio - prev_ratio) <= 0.5 * prev_ratio + 1e-9);
        prev_ratio = ratio;
    }
}

TEST_CASE("pi3_point in dimension 3 restricts to the search plane") {
    // planar copy of the monomial system embedded in R^3 with a passive x2
    auto sys = parse_system("dim 3; X=[1, 0, 6*x1^3]; H=x3; W=[1, 0, 0];");
    Pi3Point p = pi3_point(sys, {0.0, 0.3, 0.0}, 1e-4);
    CHECK(std::abs(p.x[0]) <= 1e-12);
    CHECK(p.x[1] == doctest::Approx(0.3));  // untouched coordinate stays put
    CHECK(p.x[2] == doctest::Approx(-1e-4).epsilon(1e-12));
}
