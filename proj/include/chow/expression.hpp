#pragma once

// Polynomial expressions: integers, variables, + - * ^ and parentheses.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)*
//   primary := integer | identifier | '(' expr ')'
//
// Multiplication must be written out; "2c1" is a syntax error.

#include "chow/polycore.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace chow {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at column " + std::to_string(position + 1)), position_(position) {}
    /// Zero-based offset into the parsed text.
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

struct ExpressionAst;
using AstPtr = std::shared_ptr<const ExpressionAst>;

struct ExpressionAst {
    struct Literal {
        Integer value;  // nonnegative
    };
    struct Var {
        std::string name;
        std::size_t position = 0;
    };
    struct Negate {
        AstPtr operand;
    };
    struct Binary {
        char op;  // '+', '-' or '*'
        AstPtr lhs, rhs;
    };
    struct Power {
        AstPtr base;
        unsigned long exponent;
    };
    std::variant<Literal, Var, Negate, Binary, Power> node;
};

/// Parses the grammar above. Throws ParseError on bad syntax or a negative
/// exponent.
AstPtr parse_expression(std::string_view text);

/// Canonical text with the fewest parentheses that reparse to the same tree.
std::string print_expression(const ExpressionAst& ast);

/// Structural equality (variable positions are ignored).
bool same_ast(const ExpressionAst& a, const ExpressionAst& b);

/// Throws ParseError for a variable missing from the context.
Polynomial evaluate(const ExpressionAst& ast, const ContextPtr& ctx);

Polynomial parse_poly_expression(std::string_view text, const ContextPtr& ctx);

}  // namespace chow
