#pragma once

#include "totpos/scalar.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace totpos {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { number, var, add, sub, mul, div, pow, exp, log, sqrt };
    Kind kind;
    std::string literal;  // number: source text
    Scalar value;         // number: exact value of the literal
    ExprPtr lhs, rhs;     // functions use lhs only
};

struct ParseError : std::invalid_argument {
    ParseError(const std::string& what, std::size_t offset)
        : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

// Raised by evaluation outside a function's domain (log 0, sqrt(-1), 0^-1).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := base ('^' factor)?
// base   := number | 'x' | '(' expr ')' | ('exp'|'log'|'sqrt') '(' expr ')'
// A leading '-' is allowed on number literals only.
ExprPtr parse_expression(std::string_view text);
std::string print_expression(const Expr& e);

// No transcendental nodes and every exponent is a constant integer, so
// exact input gives exact output.
bool is_rational_closed(const Expr& e);

// Exact when x is exact and the tree is rational-closed; otherwise float
// at `bits`.  0^0 evaluates to 0.
Scalar evaluate(const Expr& e, const Scalar& x, unsigned bits);

} // namespace totpos
