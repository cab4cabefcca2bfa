#include <doctest.h>

#include <random>

#include "grazing/dsl.hpp"
#include "grazing/systems.hpp"

using namespace grazing;

namespace {

// the corpus every DSL property test runs over
std::vector<std::string> corpus() {
    return {
        builtin("paper-hamiltonian").source,
        builtin("monomial4").source,
        builtin("parabola2").source,
        "dim 2; param a=2.5; X = [sin(x) + a*cos(y), exp(x/(y + 3))]; H = ln(x + 2) - 1; "
        "W = [sqrt(x + 5), -y^2];",
        "dim 3; param b=0.25; X = [x2, x3, -b*x1]; H = x3; W = [0, 0, b];",
    };
}

}  // namespace

TEST_CASE("parse_system accepts the reference source with trailing params") {
    auto sys = parse_system(
        "dim 2; param xi=0.1; X = [-(y-1)^3, x^3 - xi*(x^4+(y-1)^4-1)]; H = y; "
        "W = [k + k1*y, k2*y]; param k=1, k1=0, k2=0;");
    CHECK(sys.n == 2);
    CHECK(sys.params.size() == 4);
    CHECK(sys.params.at("xi") == doctest::Approx(0.1));
    CHECK(sys.params.at("k") == 1.0);
    CHECK(sys.var_names == std::vector<std::string>{"x", "y"});
}

TEST_CASE("parse_system accepts a minimal monomial source") {
    auto sys = parse_system("dim 2; X=[1, 6*x^3]; H=y; W=[1,0];");
    CHECK(sys.n == 2);
    CHECK(sys.params.empty());
}

TEST_CASE("malformed sources are rejected with positions") {
    CHECK_THROWS_AS(parse_system("dim 2; X=[1,]"), ParseError);
    CHECK_THROWS_AS(parse_system("dim 2; X=[1, z]; H=y; W=[1,0];"), ParseError);  // undeclared
    CHECK_THROWS_AS(parse_system("dim 2; X=[1]; H=y; W=[1,0];"), ParseError);     // arity
    CHECK_THROWS_AS(parse_system("dim 1; X=[1]; H=x; W=[1];"), ParseError);       // n >= 2
    CHECK_THROWS_AS(parse_system("dim 2; X=[x^y, 1]; H=y; W=[1,0];"), ParseError); // non-int exp
    CHECK_THROWS_AS(parse_system("X=[1,1]; dim 2; H=y; W=[1,0];"), ParseError);   // dim first
    CHECK_THROWS_AS(parse_system("dim 2; H=y; W=[1,0];"), Error);                 // missing X
    try {
        parse_system("dim 2;\nX = [1,\n  2 +* 3];\nH=y; W=[1,0];");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column > 0);
    }
}

TEST_CASE("eval matches hand values") {
    auto sys = parse_system("dim 2; X=[1, 6*x^3]; H=y; W=[1,0];");
    CHECK(eval(*sys.H, {0.3, -0.2}, sys.params) == -0.2);
    CHECK(eval(*sys.X[1], {0.5, 0.0}, sys.params) == doctest::Approx(0.75).epsilon(1e-15));

    auto ham = builtin("paper-hamiltonian").system;
    CHECK(eval(*ham.X[1], {0.0, 0.0}, ham.params) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("eval reports domain errors with location") {
    auto sys = parse_system("dim 2; X=[1/x, ln(y)]; H=y; W=[1,0];");
    CHECK_THROWS_AS(eval(*sys.X[0], {0.0, 1.0}, sys.params), EvalDomainError);
    CHECK_THROWS_AS(eval(*sys.X[1], {1.0, -1.0}, sys.params), EvalDomainError);
    CHECK(eval(*sys.X[0], {2.0, 1.0}, sys.params) == 0.5);
}

TEST_CASE("parse-print-parse is idempotent over the corpus") {
    for (const auto& src : corpus()) {
        auto sys1 = parse_system(src);
        std::string printed = print_system(sys1);
        auto sys2 = parse_system(printed);
        REQUIRE(sys1.n == sys2.n);
        for (int i = 0; i < sys1.n; ++i) {
            CHECK(expr_equal(*sys1.X[size_t(i)], *sys2.X[size_t(i)]));
            CHECK(expr_equal(*sys1.W[size_t(i)], *sys2.W[size_t(i)]));
        }
        CHECK(expr_equal(*sys1.H, *sys2.H));
        CHECK(sys1.params == sys2.params);
        CHECK(print_system(sys2) == printed);
    }
}

TEST_CASE("with_params overrides defaults and rejects unknown names") {
    auto sys = builtin("monomial4").system;
    auto sys2 = with_params(sys, {{"c", 12.0}});
    CHECK(sys2.params.at("c") == 12.0);
    CHECK(sys.params.at("c") == 6.0);  // original untouched
    CHECK_THROWS_AS(with_params(sys, {{"nope", 1.0}}), Error);
}

TEST_CASE("eval_jet basic examples") {
    // constant 5 with any jets -> (5, 0, 0, ...)
    auto sys = parse_system("dim 2; param a=5; X=[a, x*y]; H=y; W=[1,0];");
    std::vector<Jet> jets = {Jet::variable(2, 1.0), Jet::variable(2, 2.0)};
    Jet c = eval_jet(*sys.X[0], jets, sys.params);
    CHECK(c[0] == 5.0);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == 0.0);

    // x*y with x-jet (1,1,0), y-jet (2,0,0) -> (2,2,0)
    std::vector<Jet> j2 = {Jet::variable(2, 1.0), Jet::constant(2, 2.0)};
    Jet p = eval_jet(*sys.X[1], j2, sys.params);
    CHECK(p[0] == 2.0);
    CHECK(p[1] == 2.0);
    CHECK(p[2] == 0.0);

    // (y-1)^3 with y-jet (1,1,0,0) at K=3 -> (0,0,0,1): the jet of t^3
    auto cube = parse_system("dim 2; X=[1, (y-1)^3]; H=y; W=[1,0];");
    std::vector<Jet> j3 = {Jet::constant(3, 0.0), Jet::variable(3, 1.0)};
    Jet q = eval_jet(*cube.X[1], j3, cube.params);
    CHECK(q[0] == 0.0);
    CHECK(q[1] == 0.0);
    CHECK(q[2] == 0.0);
    CHECK(q[3] == 1.0);
}

TEST_CASE("property: jet coefficient 0 equals plain eval exactly") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> unif(-0.8, 0.8);
    for (const auto& src : corpus()) {
        auto sys = parse_system(src);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Jet> jets;
            Vec point;
            for (int i = 0; i < sys.n; ++i) {
                double v = unif(rng);
                point.push_back(v);
                Jet j = Jet::variable(4, v);
                j[2] = unif(rng);  // arbitrary higher structure must not leak down
                jets.push_back(j);
            }
            std::vector<ExprPtr> all = sys.X;
            all.push_back(sys.H);
            all.insert(all.end(), sys.W.begin(), sys.W.end());
            for (const auto& e : all) {
                double direct;
                try {
                    direct = eval(*e, point, sys.params);
                } catch (const EvalDomainError&) {
                    continue;  // point outside a log/sqrt domain; skip
                }
                Jet j = eval_jet(*e, jets, sys.params);
                CHECK(j[0] == direct);  // exact, same op sequence
            }
        }
    }
}

TEST_CASE("property: linearity in + and Leibniz rule in * coefficientwise") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto sys = builtin("paper-hamiltonian").system;
    auto add = std::make_shared<Expr>();
    add->node = Expr::Binary{BinOp::Add, sys.X[0], sys.X[1]};
    auto mul = std::make_shared<Expr>();
    mul->node = Expr::Binary{BinOp::Mul, sys.X[0], sys.X[1]};

    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Jet> jets;
        for (int i = 0; i < 2; ++i) {
            Jet j(4, unif(rng));
            for (int q = 1; q <= 4; ++q) j[q] = unif(rng);
            jets.push_back(j);
        }
        Jet a = eval_jet(*sys.X[0], jets, sys.params);
        Jet b = eval_jet(*sys.X[1], jets, sys.params);
        Jet s = eval_jet(*add, jets, sys.params);
        Jet p = eval_jet(*mul, jets, sys.params);
        for (int q = 0; q <= 4; ++q) {
            CHECK(s[q] == doctest::Approx(a[q] + b[q]).epsilon(1e-13));
            double leibniz = 0.0;
            for (int i = 0; i <= q; ++i) leibniz += a[i] * b[q - i];
            CHECK(p[q] == doctest::Approx(leibniz).epsilon(1e-13));
        }
    }
}
