#include "greensfn/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace greensfn {

namespace detail {

enum class Kind { Number, Variable, Pi, Euler, Negate, Add, Sub, Mul, Div, Pow, Call };

struct FuncEntry {
    const char* name;
    double (*fn)(double);
};

constexpr std::array<FuncEntry, 11> kFunctions{{
    {"sin", [](double v) { return std::sin(v); }},
    {"cos", [](double v) { return std::cos(v); }},
    {"tan", [](double v) { return std::tan(v); }},
    {"exp", [](double v) { return std::exp(v); }},
    {"log", [](double v) { return std::log(v); }},
    {"sqrt", [](double v) { return std::sqrt(v); }},
    {"sinh", [](double v) { return std::sinh(v); }},
    {"cosh", [](double v) { return std::cosh(v); }},
    {"tanh", [](double v) { return std::tanh(v); }},
    {"abs", [](double v) { return std::fabs(v); }},
    {"erf", [](double v) { return std::erf(v); }},
}};

struct ExprNode {
    Kind kind;
    double number = 0.0;
    int func = -1;
    std::shared_ptr<const ExprNode> lhs, rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

std::string print_node(const ExprNode& n);

[[noreturn]] void domain_error(const ExprNode& n, const std::string& what) {
    throw Error("eval-domain", what + " in '" + print_node(n) + "'");
}

double eval_node(const ExprNode& n, double x) {
    switch (n.kind) {
    case Kind::Number: return n.number;
    case Kind::Variable: return x;
    case Kind::Pi: return 3.14159265358979323846;
    case Kind::Euler: return 2.71828182845904523536;
    case Kind::Negate: return -eval_node(*n.lhs, x);
    case Kind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Kind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Kind::Mul: {
        const double v = eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        if (!std::isfinite(v)) domain_error(n, "non-finite product");
        return v;
    }
    case Kind::Div: {
        const double den = eval_node(*n.rhs, x);
        if (den == 0.0) domain_error(n, "division by zero");
        const double v = eval_node(*n.lhs, x) / den;
        if (!std::isfinite(v)) domain_error(n, "non-finite quotient");
        return v;
    }
    case Kind::Pow: {
        const double base = eval_node(*n.lhs, x);
        const double expo = eval_node(*n.rhs, x);
        if (base < 0.0 && std::nearbyint(expo) != expo)
            domain_error(n, "negative base with non-integer exponent");
        const double v = std::pow(base, expo);
        if (!std::isfinite(v)) domain_error(n, "non-finite power");
        return v;
    }
    case Kind::Call: {
        const double arg = eval_node(*n.lhs, x);
        const FuncEntry& f = kFunctions[n.func];
        if (n.func == 4 && arg <= 0.0) domain_error(n, "log of non-positive argument");
        if (n.func == 5 && arg < 0.0) domain_error(n, "sqrt of negative argument");
        const double v = f.fn(arg);
        if (!std::isfinite(v)) domain_error(n, "non-finite function value");
        return v;
    }
    }
    domain_error(n, "corrupt expression node");
}

std::string print_node(const ExprNode& n) {
    char buf[40];
    switch (n.kind) {
    case Kind::Number:
        std::snprintf(buf, sizeof buf, "%.17g", n.number);
        return buf;
    case Kind::Variable: return "x";
    case Kind::Pi: return "pi";
    case Kind::Euler: return "e";
    case Kind::Negate: return "(-" + print_node(*n.lhs) + ")";
    case Kind::Add: return "(" + print_node(*n.lhs) + "+" + print_node(*n.rhs) + ")";
    case Kind::Sub: return "(" + print_node(*n.lhs) + "-" + print_node(*n.rhs) + ")";
    case Kind::Mul: return "(" + print_node(*n.lhs) + "*" + print_node(*n.rhs) + ")";
    case Kind::Div: return "(" + print_node(*n.lhs) + "/" + print_node(*n.rhs) + ")";
    case Kind::Pow: return "(" + print_node(*n.lhs) + "^" + print_node(*n.rhs) + ")";
    case Kind::Call: return std::string(kFunctions[n.func].name) + "(" + print_node(*n.lhs) + ")";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        if (src_.find_first_not_of(" \t\r\n") == std::string_view::npos)
            throw ParseError(0, "empty expression");
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(pos_, "trailing input (implicit multiplication is not supported)");
        return e;
    }

private:
    static NodePtr leaf(Kind k) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        return n;
    }
    static NodePtr number_node(double v) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Number;
        n->number = v;
        return n;
    }
    static NodePtr call_node(int f, NodePtr arg) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Call;
        n->func = f;
        n->lhs = std::move(arg);
        return n;
    }
    static NodePtr unary(Kind k, NodePtr a) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->lhs = std::move(a);
        return n;
    }
    static NodePtr binary(Kind k, NodePtr a, NodePtr b) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                      src_[pos_] == '\r' || src_[pos_] == '\n'))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (eat('+')) lhs = binary(Kind::Add, std::move(lhs), parse_term());
            else if (eat('-')) lhs = binary(Kind::Sub, std::move(lhs), parse_term());
            else return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (eat('*')) lhs = binary(Kind::Mul, std::move(lhs), parse_factor());
            else if (eat('/')) lhs = binary(Kind::Div, std::move(lhs), parse_factor());
            else return lhs;
        }
    }

    NodePtr parse_factor() {
        if (eat('-')) return unary(Kind::Negate, parse_factor());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (eat('^')) return binary(Kind::Pow, std::move(base), parse_factor());
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError(pos_, "expected an operand");
        const char c = src_[pos_];

        if (c == '(') {
            const std::size_t open = pos_;
            ++pos_;
            NodePtr e = parse_expr();
            if (!eat(')')) throw ParseError(open, "unbalanced parenthesis");
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        double value = 0.0;
        const char* begin = src_.data() + pos_;
        const char* end = src_.data() + src_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc())
            throw ParseError(pos_, "malformed number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return number_node(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);

        if (name == "x") return leaf(Kind::Variable);
        if (name == "pi") return leaf(Kind::Pi);
        if (name == "e") return leaf(Kind::Euler);

        for (std::size_t f = 0; f < kFunctions.size(); ++f) {
            if (name == kFunctions[f].name) {
                if (!eat('(')) throw ParseError(pos_, "expected '(' after function name");
                NodePtr arg = parse_expr();
                if (!eat(')')) throw ParseError(start, "unbalanced parenthesis");
                return call_node(static_cast<int>(f), std::move(arg));
            }
        }
        throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace
} // namespace detail

double Expression::operator()(double x) const { return detail::eval_node(*root_, x); }

std::string Expression::str() const { return detail::print_node(*root_); }

Expression parse(std::string_view source) {
    Expression e;
    e.root_ = detail::Parser(source).run();
    return e;
}

} // namespace greensfn
