#ifndef GRAZING_DSL_HPP
#define GRAZING_DSL_HPP

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "grazing/errors.hpp"
#include "grazing/jet.hpp"

namespace grazing {

using Vec = std::vector<double>;
using ParamMap = std::map<std::string, double>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOp { Add, Sub, Mul, Div };
enum class Func { Sin, Cos, Exp, Ln, Sqrt };

/// Immutable AST node for the system-definition expression language.
/// Nodes carry their source position for error reporting.
struct Expr {
    struct Constant { double value; };
    struct Variable { int index; std::string name; };
    struct Parameter { std::string name; };
    struct Neg { ExprPtr operand; };
    struct Binary { BinOp op; ExprPtr lhs, rhs; };
    struct PowInt { ExprPtr base; int exponent; };
    struct Call { Func fn; ExprPtr arg; };

    std::variant<Constant, Variable, Parameter, Neg, Binary, PowInt, Call> node;
    int line = 0, column = 0;
};

bool expr_equal(const Expr& a, const Expr& b);
std::string print_expr(const Expr& e);

/// A parsed (X, H, W) triple with named parameters. Immutable after parse and
/// safe to share across threads; all evaluation is pure.
struct ExpressionSystem {
    int n = 0;
    std::vector<ExprPtr> X;  // vector field, n expressions
    ExprPtr H;               // boundary function
    std::vector<ExprPtr> W;  // reset direction, n expressions
    ParamMap params;         // defaults; late-bound at evaluation
    std::vector<std::string> param_order;  // declaration order, for printing
    std::vector<std::string> var_names;    // "x","y" for n=2, else "x1".."xn"
};

ExpressionSystem parse_system(const std::string& source);
std::string print_system(const ExpressionSystem& sys);

/// Returns a copy of `sys` with parameter overrides merged in. Unknown names
/// are an error; the copy shares the (immutable) AST.
ExpressionSystem with_params(const ExpressionSystem& sys, const ParamMap& overrides);

/// Plain IEEE-double evaluation of an expression.
double eval(const Expr& e, const Vec& point, const ParamMap& params);

/// Exact truncated-Taylor evaluation. All input jets must share one order.
/// Domain errors are detected on the order-0 coefficient.
template <class S>
JetT<S> eval_jet(const Expr& e, const std::vector<JetT<S>>& point_jets,
                 const ParamMap& params);

Vec eval_field(const ExpressionSystem& sys, const Vec& x);
double eval_H(const ExpressionSystem& sys, const Vec& x);
Vec eval_W(const ExpressionSystem& sys, const Vec& x);

// --- implementation of the templated evaluator ---

template <class S>
JetT<S> eval_jet(const Expr& e, const std::vector<JetT<S>>& point_jets,
                 const ParamMap& params) {
    const int K = point_jets.empty() ? 0 : point_jets[0].order();
    if (const auto* c = std::get_if<Expr::Constant>(&e.node))
        return JetT<S>::constant(K, S(c->value));
    if (const auto* v = std::get_if<Expr::Variable>(&e.node))
        return point_jets[static_cast<size_t>(v->index)];
    if (const auto* p = std::get_if<Expr::Parameter>(&e.node)) {
        auto it = params.find(p->name);
        if (it == params.end())
            throw EvalDomainError("parameter '" + p->name + "' has no value", e.line, e.column);
        return JetT<S>::constant(K, S(it->second));
    }
    if (const auto* u = std::get_if<Expr::Neg>(&e.node))
        return -eval_jet(*u->operand, point_jets, params);
    if (const auto* b = std::get_if<Expr::Binary>(&e.node)) {
        JetT<S> lhs = eval_jet(*b->lhs, point_jets, params);
        JetT<S> rhs = eval_jet(*b->rhs, point_jets, params);
        switch (b->op) {
            case BinOp::Add: return lhs + rhs;
            case BinOp::Sub: return lhs - rhs;
            case BinOp::Mul: return lhs * rhs;
            case BinOp::Div:
                if (value_of(rhs[0]) == 0.0)
                    throw EvalDomainError("division by zero", e.line, e.column);
                return lhs / rhs;
        }
    }
    if (const auto* pw = std::get_if<Expr::PowInt>(&e.node)) {
        JetT<S> base = eval_jet(*pw->base, point_jets, params);
        if (pw->exponent >= 0) return pow_int(base, pw->exponent);
        if (value_of(base[0]) == 0.0)
            throw EvalDomainError("zero base with negative exponent", e.line, e.column);
        return JetT<S>::constant(K, S(1.0)) / pow_int(base, -pw->exponent);
    }
    const auto& call = std::get<Expr::Call>(e.node);
    JetT<S> arg = eval_jet(*call.arg, point_jets, params);
    switch (call.fn) {
        case Func::Sin: {
            JetT<S> s, c;
            sin_cos(arg, s, c);
            return s;
        }
        case Func::Cos: {
            JetT<S> s, c;
            sin_cos(arg, s, c);
            return c;
        }
        case Func::Exp: return exp(arg);
        case Func::Ln:
            if (value_of(arg[0]) <= 0.0)
                throw EvalDomainError("ln of non-positive value", e.line, e.column);
            return log(arg);
        case Func::Sqrt:
            if (value_of(arg[0]) < 0.0)
                throw EvalDomainError("sqrt of negative value", e.line, e.column);
            if (value_of(arg[0]) == 0.0)
                throw EvalDomainError("sqrt jet singular at zero", e.line, e.column);
            return sqrt(arg);
    }
    throw Error("unreachable expression node");
}

}  // namespace grazing

#endif
