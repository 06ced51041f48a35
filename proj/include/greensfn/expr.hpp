#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "greensfn/error.hpp"

namespace greensfn {

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error("parse-error", "syntax error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {
struct ExprNode;
}

/// Immutable parsed expression in one variable `x`. Evaluation is pure and
/// reentrant, so an Expression can be used directly as a coefficient callable.
class Expression {
public:
    double operator()(double x) const;

    /// Fully parenthesized form; parses back to an identical evaluator.
    std::string str() const;

    friend Expression parse(std::string_view source);

private:
    std::shared_ptr<const detail::ExprNode> root_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power            (unary minus binds looser than ^)
///   power  := atom ('^' factor)?            (right-associative)
///   atom   := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
/// Functions: sin cos tan exp log sqrt sinh cosh tanh abs erf.
/// Implicit multiplication is rejected.
Expression parse(std::string_view source);

inline double evaluate(const Expression& e, double x) { return e(x); }
inline std::string to_string(const Expression& e) { return e.str(); }

} // namespace greensfn
