#include <doctest.h>

#include <cmath>
#include <random>

#include "grazing/jet.hpp"

using namespace grazing;

namespace {

Jet random_jet(std::mt19937& rng, int K, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> unif(lo, hi);
    Jet j(K, unif(rng));
    for (int q = 1; q <= K; ++q) j[q] = unif(rng);
    return j;
}

}  // namespace

TEST_CASE("division is the inverse of multiplication") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Jet a = random_jet(rng, 6);
        Jet b = random_jet(rng, 6);
        b[0] += (b[0] >= 0 ? 2.0 : -2.0);  // keep the divisor away from 0
        Jet q = (a * b) / b;
        for (int j = 0; j <= 6; ++j) CHECK(q[j] == doctest::Approx(a[j]).epsilon(1e-13));
    }
}

TEST_CASE("sin^2 + cos^2 is the constant-1 jet") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        Jet u = random_jet(rng, 6, -2.0, 2.0);
        Jet s, c;
        sin_cos(u, s, c);
        Jet one = s * s + c * c;
        CHECK(one[0] == doctest::Approx(1.0).epsilon(1e-14));
        for (int j = 1; j <= 6; ++j) CHECK(one[j] == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("exp/log and sqrt/square invert each other") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Jet u = random_jet(rng, 6, 0.5, 3.0);
        Jet back = log(exp(u));
        for (int j = 0; j <= 6; ++j) CHECK(back[j] == doctest::Approx(u[j]).epsilon(1e-12));
        Jet r = sqrt(u);
        Jet sq = r * r;
        for (int j = 0; j <= 6; ++j) CHECK(sq[j] == doctest::Approx(u[j]).epsilon(1e-13));
    }
}

TEST_CASE("jets recover derivatives of a known composition") {
    // f(t) = (2 + t)^3 expanded at t=0: coefficients 8, 12, 6, 1
    Jet x = Jet::variable(3, 2.0);
    Jet f = pow_int(x, 3);
    CHECK(f[0] == 8.0);
    CHECK(f[1] == 12.0);
    CHECK(f[2] == 6.0);
    CHECK(f[3] == 1.0);
    // derivative_j = j! a_j
    CHECK(2.0 * f[2] == 12.0);   // f''(0) = 12
    CHECK(6.0 * f[3] == 6.0);    // f'''(0) = 6

    // g(t) = exp(sin(t)): g = 1 + t + t^2/2 - t^4/8 + ...
    Jet t = Jet::variable(4, 0.0);
    Jet s, c;
    sin_cos(t, s, c);
    Jet g = exp(s);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(1.0));
    CHECK(g[2] == doctest::Approx(0.5));
    CHECK(g[3] == doctest::Approx(0.0));
    CHECK(g[4] == doctest::Approx(-1.0 / 8.0));
}

TEST_CASE("dual numbers differentiate through jet recurrences") {
    // d/da of coefficient 2 of (a + t)^4 at a = 1.5 is d/da 6 a^2 = 12 a = 18
    JetT<Dual> x = JetT<Dual>::variable(4, Dual(1.5, 1.0));
    JetT<Dual> f = pow_int(x, 4);
    CHECK(f[2].v == doctest::Approx(6.0 * 1.5 * 1.5));
    CHECK(f[2].d == doctest::Approx(18.0));
}
