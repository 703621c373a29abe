#include "chow/expression.hpp"

#include <cctype>
#include <limits>

namespace chow {

namespace {

AstPtr make(ExpressionAst::Literal l) { return std::make_shared<const ExpressionAst>(ExpressionAst{std::move(l)}); }
AstPtr make(ExpressionAst::Var v) { return std::make_shared<const ExpressionAst>(ExpressionAst{std::move(v)}); }
AstPtr make(ExpressionAst::Negate n) { return std::make_shared<const ExpressionAst>(ExpressionAst{std::move(n)}); }
AstPtr make(ExpressionAst::Binary b) { return std::make_shared<const ExpressionAst>(ExpressionAst{std::move(b)}); }
AstPtr make(ExpressionAst::Power p) { return std::make_shared<const ExpressionAst>(ExpressionAst{std::move(p)}); }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    AstPtr parse() {
        skip_space();
        if (at_end()) throw ParseError("empty expression", pos_);
        AstPtr e = expr();
        skip_space();
        if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    AstPtr expr() {
        AstPtr lhs = term();
        while (true) {
            skip_space();
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = make(ExpressionAst::Binary{c, lhs, term()});
        }
    }

    AstPtr term() {
        AstPtr lhs = unary();
        while (accept('*')) lhs = make(ExpressionAst::Binary{'*', lhs, unary()});
        return lhs;
    }

    AstPtr unary() {
        if (accept('-')) return make(ExpressionAst::Negate{unary()});
        return power();
    }

    AstPtr power() {
        AstPtr base = primary();
        while (accept('^')) {
            skip_space();
            if (peek() == '-') throw ParseError("negative exponent", pos_);
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("exponent must be a nonnegative integer", pos_);
            std::size_t start = pos_;
            Integer e = digits();
            if (e > std::numeric_limits<unsigned long>::max()) throw ParseError("exponent too large", start);
            base = make(ExpressionAst::Power{base, e.get_ui()});
        }
        return base;
    }

    AstPtr primary() {
        skip_space();
        if (at_end()) throw ParseError("unexpected end of expression", pos_);
        char c = peek();
        if (c == '(') {
            ++pos_;
            AstPtr inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer v = digits();
            skip_space();
            if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '(')
                throw ParseError("implicit multiplication is not supported; use '*'", pos_);
            return make(ExpressionAst::Literal{v});
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
            return make(ExpressionAst::Var{std::string(text_.substr(start, pos_ - start)), start});
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    Integer digits() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Binding strength used by the printer: higher binds tighter.
int precedence(const ExpressionAst& a) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ExpressionAst::Binary>) return n.op == '*' ? 2 : 1;
            if constexpr (std::is_same_v<T, ExpressionAst::Negate>) return 3;
            if constexpr (std::is_same_v<T, ExpressionAst::Power>) return 4;
            return 5;
        },
        a.node);
}

std::string wrap(const ExpressionAst& a, bool parens) {
    std::string s = print_expression(a);
    return parens ? "(" + s + ")" : s;
}

}  // namespace

AstPtr parse_expression(std::string_view text) {
    for (char c : text)
        if (static_cast<unsigned char>(c) > 127) throw ParseError("non-ASCII character", text.find(c));
    return Parser(text).parse();
}

std::string print_expression(const ExpressionAst& ast) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ExpressionAst::Literal>) {
                return n.value.get_str();
            } else if constexpr (std::is_same_v<T, ExpressionAst::Var>) {
                return n.name;
            } else if constexpr (std::is_same_v<T, ExpressionAst::Negate>) {
                return "-" + wrap(*n.operand, precedence(*n.operand) < 3);
            } else if constexpr (std::is_same_v<T, ExpressionAst::Power>) {
                // Left-associative: a nested power on the left needs no parentheses.
                return wrap(*n.base, precedence(*n.base) < 4) + "^" + std::to_string(n.exponent);
            } else {
                int p = n.op == '*' ? 2 : 1;
                std::string sep = n.op == '*' ? "*" : std::string(" ") + n.op + " ";
                return wrap(*n.lhs, precedence(*n.lhs) < p) + sep + wrap(*n.rhs, precedence(*n.rhs) <= p);
            }
        },
        ast.node);
}

bool same_ast(const ExpressionAst& a, const ExpressionAst& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, ExpressionAst::Literal>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, ExpressionAst::Var>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, ExpressionAst::Negate>) {
                return same_ast(*x.operand, *y.operand);
            } else if constexpr (std::is_same_v<T, ExpressionAst::Power>) {
                return x.exponent == y.exponent && same_ast(*x.base, *y.base);
            } else {
                return x.op == y.op && same_ast(*x.lhs, *y.lhs) && same_ast(*x.rhs, *y.rhs);
            }
        },
        a.node);
}

Polynomial evaluate(const ExpressionAst& ast, const ContextPtr& ctx) {
    return std::visit(
        [&](const auto& n) -> Polynomial {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ExpressionAst::Literal>) {
                return Polynomial::constant(ctx, n.value);
            } else if constexpr (std::is_same_v<T, ExpressionAst::Var>) {
                auto idx = ctx->index_of(n.name);
                if (!idx) throw ParseError("unknown variable '" + n.name + "'", n.position);
                return Polynomial::variable(ctx, *idx);
            } else if constexpr (std::is_same_v<T, ExpressionAst::Negate>) {
                return -evaluate(*n.operand, ctx);
            } else if constexpr (std::is_same_v<T, ExpressionAst::Power>) {
                Polynomial base = evaluate(*n.base, ctx);
                Polynomial r = Polynomial::constant(ctx, 1);
                for (unsigned long e = n.exponent; e > 0; e >>= 1) {
                    if (e & 1) r = r * base;
                    if (e > 1) base = base * base;
                }
                return r;
            } else {
                Polynomial l = evaluate(*n.lhs, ctx);
                Polynomial r = evaluate(*n.rhs, ctx);
                if (n.op == '+') return l + r;
                if (n.op == '-') return l - r;
                return l * r;
            }
        },
        ast.node);
}

Polynomial parse_poly_expression(std::string_view text, const ContextPtr& ctx) {
    return evaluate(*parse_expression(text), ctx);
}

}  // namespace chow
