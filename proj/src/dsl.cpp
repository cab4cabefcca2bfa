#include "grazing/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <optional>
#include <set>
#include <sstream>

namespace grazing {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    bool is_integer = false;
    int line = 1, column = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        skip_ws_and_comments();
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Tok::End, "", 0.0, false, line_, col_};
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_ = {Tok::Ident, src_.substr(start, pos_ - start), 0.0, false, tok_.line, tok_.column};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            size_t start = pos_;
            bool is_int = true;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            if (pos_ < src_.size() && src_[pos_] == '.') {
                is_int = false;
                bump();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                is_int = false;
                bump();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    throw ParseError("malformed exponent in number literal", tok_.line, tok_.column);
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            }
            std::string text = src_.substr(start, pos_ - start);
            tok_ = {Tok::Number, text, std::strtod(text.c_str(), nullptr), is_int, tok_.line, tok_.column};
            return;
        }
        if (std::strchr("+-*/^()[],;=", c) != nullptr) {
            bump();
            tok_ = {Tok::Punct, std::string(1, c), 0.0, false, tok_.line, tok_.column};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

// ---------------------------------------------------------------------------
// Parser. Statements are ';'-separated; expression identifiers are resolved
// against declared variables and parameters after the whole source is read,
// so `param` statements may follow the expressions that use them.
// ---------------------------------------------------------------------------

const std::map<std::string, Func> kFuncs = {
    {"sin", Func::Sin}, {"cos", Func::Cos}, {"exp", Func::Exp},
    {"ln", Func::Ln},   {"sqrt", Func::Sqrt}};

struct RawIdent {
    std::string name;
};

// Pre-resolution AST: identifiers are kept as names.
struct RawExpr;
using RawPtr = std::shared_ptr<RawExpr>;
struct RawExpr {
    std::variant<Expr::Constant, RawIdent, Expr::Neg, Expr::Binary, Expr::PowInt, Expr::Call> node;
    int line = 0, column = 0;
    // Neg/Binary/PowInt/Call children are stored as resolved ExprPtr slots in
    // Expr's structs; for the raw tree we keep parallel children instead.
    std::vector<RawPtr> kids;
    BinOp op = BinOp::Add;
    int exponent = 0;
    Func fn = Func::Sin;
    enum Kind { Const, Ident, NegK, BinK, PowK, CallK } kind = Const;
    double value = 0.0;
    std::string name;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    ExpressionSystem run() {
        // dim must come first
        expect_ident("dim");
        Token nt = lex_.take();
        if (nt.kind != Tok::Number || !nt.is_integer)
            throw ParseError("expected integer after 'dim'", nt.line, nt.column);
        sys_.n = static_cast<int>(nt.number);
        if (sys_.n < 2)
            throw ParseError("dimension must be at least 2", nt.line, nt.column);
        expect_punct(";");

        if (sys_.n == 2) {
            sys_.var_names = {"x", "y"};
        } else {
            for (int i = 1; i <= sys_.n; ++i) sys_.var_names.push_back("x" + std::to_string(i));
        }

        while (lex_.peek().kind != Tok::End) {
            Token head = lex_.take();
            if (head.kind != Tok::Ident)
                throw ParseError("expected statement keyword", head.line, head.column);
            if (head.text == "dim")
                throw ParseError("duplicate 'dim' statement", head.line, head.column);
            if (head.text == "param") {
                parse_params();
            } else if (head.text == "X" || head.text == "W") {
                expect_punct("=");
                auto list = parse_expr_list();
                if (static_cast<int>(list.size()) != sys_.n)
                    throw ParseError(head.text + " must list exactly " + std::to_string(sys_.n) +
                                         " expressions, got " + std::to_string(list.size()),
                                     head.line, head.column);
                auto& slot = (head.text == "X") ? raw_X_ : raw_W_;
                if (!slot.empty())
                    throw ParseError("duplicate '" + head.text + "' statement", head.line, head.column);
                slot = std::move(list);
            } else if (head.text == "H") {
                expect_punct("=");
                if (raw_H_) throw ParseError("duplicate 'H' statement", head.line, head.column);
                raw_H_ = parse_expr();
            } else {
                throw ParseError("unknown statement '" + head.text + "'", head.line, head.column);
            }
            expect_punct(";");
        }

        if (raw_X_.empty()) throw Error("system source is missing the X section");
        if (!raw_H_) throw Error("system source is missing the H section");
        if (raw_W_.empty()) throw Error("system source is missing the W section");

        for (auto& r : raw_X_) sys_.X.push_back(resolve(r));
        sys_.H = resolve(raw_H_);
        for (auto& r : raw_W_) sys_.W.push_back(resolve(r));
        return std::move(sys_);
    }

  private:
    void parse_params() {
        while (true) {
            Token name = lex_.take();
            if (name.kind != Tok::Ident)
                throw ParseError("expected parameter name", name.line, name.column);
            if (kFuncs.count(name.text))
                throw ParseError("'" + name.text + "' is a reserved function name", name.line, name.column);
            for (const auto& v : sys_.var_names)
                if (v == name.text)
                    throw ParseError("parameter '" + name.text + "' shadows a variable", name.line, name.column);
            expect_punct("=");
            double sign = 1.0;
            if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "-") {
                lex_.take();
                sign = -1.0;
            }
            Token val = lex_.take();
            if (val.kind != Tok::Number)
                throw ParseError("expected numeric parameter value", val.line, val.column);
            if (sys_.params.count(name.text))
                throw ParseError("duplicate parameter '" + name.text + "'", name.line, name.column);
            sys_.params[name.text] = sign * val.number;
            sys_.param_order.push_back(name.text);
            if (lex_.peek().kind == Tok::Punct && lex_.peek().text == ",") {
                lex_.take();
                continue;
            }
            break;
        }
    }

    std::vector<RawPtr> parse_expr_list() {
        expect_punct("[");
        std::vector<RawPtr> out;
        out.push_back(parse_expr());
        while (lex_.peek().kind == Tok::Punct && lex_.peek().text == ",") {
            lex_.take();
            out.push_back(parse_expr());
        }
        expect_punct("]");
        return out;
    }

    RawPtr parse_expr() {
        RawPtr lhs = parse_term();
        while (lex_.peek().kind == Tok::Punct &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            Token op = lex_.take();
            RawPtr rhs = parse_term();
            lhs = make_bin(op.text == "+" ? BinOp::Add : BinOp::Sub, lhs, rhs, op);
        }
        return lhs;
    }

    RawPtr parse_term() {
        RawPtr lhs = parse_unary();
        while (lex_.peek().kind == Tok::Punct &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            Token op = lex_.take();
            RawPtr rhs = parse_unary();
            lhs = make_bin(op.text == "*" ? BinOp::Mul : BinOp::Div, lhs, rhs, op);
        }
        return lhs;
    }

    RawPtr parse_unary() {
        if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "-") {
            Token op = lex_.take();
            RawPtr inner = parse_unary();
            auto r = std::make_shared<RawExpr>();
            r->kind = RawExpr::NegK;
            r->kids = {inner};
            r->line = op.line;
            r->column = op.column;
            return r;
        }
        if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "+") {
            lex_.take();
            return parse_unary();
        }
        return parse_power();
    }

    RawPtr parse_power() {
        RawPtr base = parse_atom();
        while (lex_.peek().kind == Tok::Punct && lex_.peek().text == "^") {
            Token caret = lex_.take();
            double sign = 1.0;
            if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "-") {
                lex_.take();
                sign = -1.0;
            }
            Token e = lex_.take();
            if (e.kind != Tok::Number || !e.is_integer)
                throw ParseError("exponent must be an integer literal", caret.line, caret.column);
            auto r = std::make_shared<RawExpr>();
            r->kind = RawExpr::PowK;
            r->kids = {base};
            r->exponent = static_cast<int>(sign * e.number);
            r->line = caret.line;
            r->column = caret.column;
            base = r;
        }
        return base;
    }

    RawPtr parse_atom() {
        Token t = lex_.take();
        if (t.kind == Tok::Number) {
            auto r = std::make_shared<RawExpr>();
            r->kind = RawExpr::Const;
            r->value = t.number;
            r->line = t.line;
            r->column = t.column;
            return r;
        }
        if (t.kind == Tok::Ident) {
            auto fit = kFuncs.find(t.text);
            if (fit != kFuncs.end()) {
                expect_punct("(");
                RawPtr arg = parse_expr();
                expect_punct(")");
                auto r = std::make_shared<RawExpr>();
                r->kind = RawExpr::CallK;
                r->fn = fit->second;
                r->kids = {arg};
                r->line = t.line;
                r->column = t.column;
                return r;
            }
            auto r = std::make_shared<RawExpr>();
            r->kind = RawExpr::Ident;
            r->name = t.text;
            r->line = t.line;
            r->column = t.column;
            return r;
        }
        if (t.kind == Tok::Punct && t.text == "(") {
            RawPtr inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        throw ParseError("expected expression, got '" + t.text + "'", t.line, t.column);
    }

    RawPtr make_bin(BinOp op, RawPtr l, RawPtr r, const Token& t) {
        auto b = std::make_shared<RawExpr>();
        b->kind = RawExpr::BinK;
        b->op = op;
        b->kids = {l, r};
        b->line = t.line;
        b->column = t.column;
        return b;
    }

    ExprPtr resolve(const RawPtr& r) {
        auto e = std::make_shared<Expr>();
        e->line = r->line;
        e->column = r->column;
        switch (r->kind) {
            case RawExpr::Const:
                e->node = Expr::Constant{r->value};
                break;
            case RawExpr::Ident: {
                for (int i = 0; i < sys_.n; ++i) {
                    if (sys_.var_names[static_cast<size_t>(i)] == r->name) {
                        e->node = Expr::Variable{i, r->name};
                        return e;
                    }
                }
                if (sys_.params.count(r->name)) {
                    e->node = Expr::Parameter{r->name};
                    return e;
                }
                throw ParseError("undeclared identifier '" + r->name + "'", r->line, r->column);
            }
            case RawExpr::NegK:
                e->node = Expr::Neg{resolve(r->kids[0])};
                break;
            case RawExpr::BinK:
                e->node = Expr::Binary{r->op, resolve(r->kids[0]), resolve(r->kids[1])};
                break;
            case RawExpr::PowK:
                e->node = Expr::PowInt{resolve(r->kids[0]), r->exponent};
                break;
            case RawExpr::CallK:
                e->node = Expr::Call{r->fn, resolve(r->kids[0])};
                break;
        }
        return e;
    }

    void expect_punct(const std::string& p) {
        Token t = lex_.take();
        if (t.kind != Tok::Punct || t.text != p)
            throw ParseError("expected '" + p + "', got '" + t.text + "'", t.line, t.column);
    }

    void expect_ident(const std::string& name) {
        Token t = lex_.take();
        if (t.kind != Tok::Ident || t.text != name)
            throw ParseError("expected '" + name + "', got '" + t.text + "'", t.line, t.column);
    }

    Lexer lex_;
    ExpressionSystem sys_;
    std::vector<RawPtr> raw_X_, raw_W_;
    RawPtr raw_H_;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int precedence(const Expr& e) {
    if (std::holds_alternative<Expr::Binary>(e.node)) {
        BinOp op = std::get<Expr::Binary>(e.node).op;
        return (op == BinOp::Add || op == BinOp::Sub) ? 1 : 2;
    }
    if (std::holds_alternative<Expr::Neg>(e.node)) return 3;
    if (std::holds_alternative<Expr::PowInt>(e.node)) return 4;
    return 5;
}

void print_rec(const Expr& e, std::string& out, int parent_prec) {
    int prec = precedence(e);
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    if (const auto* c = std::get_if<Expr::Constant>(&e.node)) {
        if (c->value < 0) {
            out += '(' + fmt_double(c->value) + ')';
        } else {
            out += fmt_double(c->value);
        }
    } else if (const auto* v = std::get_if<Expr::Variable>(&e.node)) {
        out += v->name;
    } else if (const auto* p = std::get_if<Expr::Parameter>(&e.node)) {
        out += p->name;
    } else if (const auto* u = std::get_if<Expr::Neg>(&e.node)) {
        out += '-';
        print_rec(*u->operand, out, prec + 1);
    } else if (const auto* b = std::get_if<Expr::Binary>(&e.node)) {
        const char* op = b->op == BinOp::Add ? " + "
                         : b->op == BinOp::Sub ? " - "
                         : b->op == BinOp::Mul ? "*"
                                               : "/";
        print_rec(*b->lhs, out, prec);
        out += op;
        // right operand needs one more level so a - (b - c) keeps its parens
        print_rec(*b->rhs, out, prec + 1);
    } else if (const auto* pw = std::get_if<Expr::PowInt>(&e.node)) {
        print_rec(*pw->base, out, prec + 1);
        out += '^';
        if (pw->exponent < 0) {
            out += '(' ;
            out += std::to_string(pw->exponent);
            out += ')';
        } else {
            out += std::to_string(pw->exponent);
        }
    } else {
        const auto& call = std::get<Expr::Call>(e.node);
        static const char* names[] = {"sin", "cos", "exp", "ln", "sqrt"};
        out += names[static_cast<int>(call.fn)];
        out += '(';
        print_rec(*call.arg, out, 0);
        out += ')';
    }
    if (parens) out += ')';
}

}  // namespace

ExpressionSystem parse_system(const std::string& source) {
    return Parser(source).run();
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* ca = std::get_if<Expr::Constant>(&a.node))
        return ca->value == std::get<Expr::Constant>(b.node).value;
    if (const auto* va = std::get_if<Expr::Variable>(&a.node))
        return va->index == std::get<Expr::Variable>(b.node).index;
    if (const auto* pa = std::get_if<Expr::Parameter>(&a.node))
        return pa->name == std::get<Expr::Parameter>(b.node).name;
    if (const auto* ua = std::get_if<Expr::Neg>(&a.node))
        return expr_equal(*ua->operand, *std::get<Expr::Neg>(b.node).operand);
    if (const auto* ba = std::get_if<Expr::Binary>(&a.node)) {
        const auto& bb = std::get<Expr::Binary>(b.node);
        return ba->op == bb.op && expr_equal(*ba->lhs, *bb.lhs) && expr_equal(*ba->rhs, *bb.rhs);
    }
    if (const auto* pwa = std::get_if<Expr::PowInt>(&a.node)) {
        const auto& pwb = std::get<Expr::PowInt>(b.node);
        return pwa->exponent == pwb.exponent && expr_equal(*pwa->base, *pwb.base);
    }
    const auto& ca = std::get<Expr::Call>(a.node);
    const auto& cb = std::get<Expr::Call>(b.node);
    return ca.fn == cb.fn && expr_equal(*ca.arg, *cb.arg);
}

std::string print_expr(const Expr& e) {
    std::string out;
    print_rec(e, out, 0);
    return out;
}

std::string print_system(const ExpressionSystem& sys) {
    std::ostringstream os;
    os << "dim " << sys.n << ";\n";
    if (!sys.param_order.empty()) {
        os << "param ";
        for (size_t i = 0; i < sys.param_order.size(); ++i) {
            if (i) os << ", ";
            const std::string& name = sys.param_order[i];
            os << name << "=" << fmt_double(sys.params.at(name));
        }
        os << ";\n";
    }
    auto list = [&os](const char* head, const std::vector<ExprPtr>& exprs) {
        os << head << " = [";
        for (size_t i = 0; i < exprs.size(); ++i) {
            if (i) os << ", ";
            os << print_expr(*exprs[i]);
        }
        os << "];\n";
    };
    list("X", sys.X);
    os << "H = " << print_expr(*sys.H) << ";\n";
    list("W", sys.W);
    return os.str();
}

ExpressionSystem with_params(const ExpressionSystem& sys, const ParamMap& overrides) {
    ExpressionSystem out = sys;
    for (const auto& [name, value] : overrides) {
        if (!out.params.count(name))
            throw Error("unknown parameter '" + name + "'");
        out.params[name] = value;
    }
    return out;
}

double eval(const Expr& e, const Vec& point, const ParamMap& params) {
    if (const auto* c = std::get_if<Expr::Constant>(&e.node)) return c->value;
    if (const auto* v = std::get_if<Expr::Variable>(&e.node))
        return point[static_cast<size_t>(v->index)];
    if (const auto* p = std::get_if<Expr::Parameter>(&e.node)) {
        auto it = params.find(p->name);
        if (it == params.end())
            throw EvalDomainError("parameter '" + p->name + "' has no value", e.line, e.column);
        return it->second;
    }
    if (const auto* u = std::get_if<Expr::Neg>(&e.node)) return -eval(*u->operand, point, params);
    if (const auto* b = std::get_if<Expr::Binary>(&e.node)) {
        double lhs = eval(*b->lhs, point, params);
        double rhs = eval(*b->rhs, point, params);
        switch (b->op) {
            case BinOp::Add: return lhs + rhs;
            case BinOp::Sub: return lhs - rhs;
            case BinOp::Mul: return lhs * rhs;
            case BinOp::Div:
                if (rhs == 0.0) throw EvalDomainError("division by zero", e.line, e.column);
                return lhs / rhs;
        }
    }
    if (const auto* pw = std::get_if<Expr::PowInt>(&e.node)) {
        double base = eval(*pw->base, point, params);
        int n = pw->exponent;
        if (n < 0) {
            if (base == 0.0)
                throw EvalDomainError("zero base with negative exponent", e.line, e.column);
        }
        // same multiplication sequence as the jet path, so order-0 matches exactly
        double acc = 1.0;
        for (int i = 0; i < std::abs(n); ++i) acc *= base;
        return n >= 0 ? acc : 1.0 / acc;
    }
    const auto& call = std::get<Expr::Call>(e.node);
    double arg = eval(*call.arg, point, params);
    switch (call.fn) {
        case Func::Sin: return std::sin(arg);
        case Func::Cos: return std::cos(arg);
        case Func::Exp: return std::exp(arg);
        case Func::Ln:
            if (arg <= 0.0) throw EvalDomainError("ln of non-positive value", e.line, e.column);
            return std::log(arg);
        case Func::Sqrt:
            if (arg < 0.0) throw EvalDomainError("sqrt of negative value", e.line, e.column);
            return std::sqrt(arg);
    }
    throw Error("unreachable expression node");
}

Vec eval_field(const ExpressionSystem& sys, const Vec& x) {
    Vec out(static_cast<size_t>(sys.n));
    for (int i = 0; i < sys.n; ++i)
        out[static_cast<size_t>(i)] = eval(*sys.X[static_cast<size_t>(i)], x, sys.params);
    return out;
}

double eval_H(const ExpressionSystem& sys, const Vec& x) {
    return eval(*sys.H, x, sys.params);
}

Vec eval_W(const ExpressionSystem& sys, const Vec& x) {
    Vec out(static_cast<size_t>(sys.n));
    for (int i = 0; i < sys.n; ++i)
        out[static_cast<size_t>(i)] = eval(*sys.W[static_cast<size_t>(i)], x, sys.params);
    return out;
}

}  // namespace grazing
