#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "grazing/errors.hpp"
#include "grazing/flow.hpp"
#include "grazing/grazing_point.hpp"
#include "grazing/systems.hpp"

using namespace grazing;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(bool(in), "missing file " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("the registry serves all three systems and rejects unknown names") {
    for (const auto& name : builtin_names()) {
        auto b = builtin(name);
        CHECK(b.system.n == 2);
        CHECK(b.grazing_point == Vec{0.0, 0.0});
    }
    CHECK_THROWS_AS(builtin("does-not-exist"), UnknownSystemError);
}

TEST_CASE("registry sources match the installed plain-text files") {
    for (const auto& name : builtin_names()) {
        auto b = builtin(name);
        std::string file = read_file(std::string(GRAZING_SOURCE_DIR) + "/systems/" + name + ".sys");
        CHECK(file == b.source);
    }
}

TEST_CASE("classification of the builtins at the origin") {
    CHECK(classify(builtin("paper-hamiltonian").system, {0.0, 0.0}).order == 4);
    CHECK(classify(builtin("monomial4").system, {0.0, 0.0}).order == 4);
    CHECK(classify(builtin("parabola2").system, {0.0, 0.0}).order == 2);
}

TEST_CASE("monomial4 exact delta matches first_crossing across six decades") {
    auto b = builtin("monomial4");
    for (int i = -8; i <= -2; ++i) {
        double eps = std::pow(10.0, i);
        double exact = b.exact_delta(eps, b.system.params);
        EventHit hit = first_crossing(b.system, {0.0, -eps}, EventFunctional::BoundaryH,
                                      Direction::Backward, 10.0 * std::abs(exact));
        CAPTURE(eps);
        CHECK(std::abs(hit.t - exact) <= 1e-9 * std::abs(exact));
    }
}

TEST_CASE("parabola2 exact references agree with the generic paths") {
    auto b = builtin("parabola2");
    EventHit hit = first_crossing(b.system, {0.0, -1e-4}, EventFunctional::BoundaryH,
                                  Direction::Backward, 1.0);
    CHECK(hit.t == doctest::Approx(b.exact_delta(1e-4, b.system.params)).epsilon(1e-10));
    Vec end = integrate(b.system, {0.1, 0.2}, 0.0, 0.7).steps.back().y1;
    Vec exact = b.exact_flow({0.1, 0.2}, 0.7, b.system.params);
    CHECK(end[0] == doctest::Approx(exact[0]).epsilon(1e-12));
    CHECK(end[1] == doctest::Approx(exact[1]).epsilon(1e-12));
}

TEST_CASE("at xi = 0 the quartic level set is preserved over one revolution") {
    auto b = builtin("paper-hamiltonian");
    auto sys = with_params(b.system, {{"xi", 0.0}});
    // (0,0) lies on the level set x^4 + (y-1)^4 = 1; follow the closed orbit
    // until it comes back through the section x = 0 with y near 0.
    Vec start{0.0, 0.0};
    CHECK(b.level_function(start) == doctest::Approx(1.0));

    EventOptions opts;
    auto x_coord = [](const Vec& p) { return p[0]; };
    // half revolution: next crossing of x = 0 (top of the orbit)
    EventHit top = first_crossing_fn(sys, start, x_coord, Direction::Forward, 10.0, opts);
    CHECK(top.state[1] == doctest::Approx(2.0).epsilon(1e-6));
    // hop off the section before re-arming the event, then close the loop
    const double hop = 0.3;
    Vec off_section = integrate(sys, top.state, 0.0, hop).steps.back().y1;
    EventHit round = first_crossing_fn(sys, off_section, x_coord, Direction::Forward, 10.0, opts);
    CHECK(round.state[1] == doctest::Approx(0.0).epsilon(1e-6));

    // level drift along the whole revolution stays below 1e-8
    double period = top.t + hop + round.t;
    Trajectory traj = integrate(sys, start, 0.0, period);
    double worst = 0.0;
    for (const auto& s : traj.steps)
        worst = std::max(worst, std::abs(b.level_function(s.y1) - 1.0));
    CHECK(worst <= 1e-8);
}
