#pragma once

// Sparse multivariate polynomials over the integers with positively graded
// variables.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chow {

using Integer = mpz_class;

/// Two operands live in different graded contexts, or a context is malformed.
class ContextError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A ring map was given an image that is missing, inhomogeneous or of the
/// wrong degree.
class SubstitutionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Variable {
    std::string name;
    unsigned degree = 1;

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ordered list of graded variables. The order is the canonical order used
/// for exponent vectors and monomial bases.
class GradedContext {
public:
    /// Throws ContextError on duplicate or malformed names and zero degrees.
    static std::shared_ptr<const GradedContext> make(std::vector<Variable> variables);

    std::size_t arity() const { return vars_.size(); }
    const Variable& variable(std::size_t i) const { return vars_.at(i); }
    std::span<const Variable> variables() const { return vars_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const GradedContext& a, const GradedContext& b) {
        return a.vars_ == b.vars_;
    }

private:
    explicit GradedContext(std::vector<Variable> vars) : vars_(std::move(vars)) {}
    std::vector<Variable> vars_;
};

using ContextPtr = std::shared_ptr<const GradedContext>;

bool same_context(const ContextPtr& a, const ContextPtr& b);

/// Exponent vector, one entry per context variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) {}

    static Monomial unit(std::size_t arity, std::size_t var);

    std::size_t arity() const { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
    std::span<const std::uint32_t> exponents() const { return exps_; }

    /// Weighted degree sum(e_i * deg x_i).
    unsigned degree(const GradedContext& ctx) const;
    bool is_one() const;
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Exact quotient; requires b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Plain lexicographic order on exponent vectors (storage order only).
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

    std::string to_string(const GradedContext& ctx) const;

private:
    std::vector<std::uint32_t> exps_;
};

/// Canonical order inside one degree: lexicographic on exponent vectors,
/// larger exponent of an earlier variable first.
bool canonical_before(const Monomial& a, const Monomial& b);

class Polynomial {
public:
    using TermMap = std::map<Monomial, Integer>;

    explicit Polynomial(ContextPtr ctx);

    static Polynomial constant(ContextPtr ctx, const Integer& c);
    static Polynomial variable(ContextPtr ctx, std::size_t index);
    static Polynomial variable(ContextPtr ctx, std::string_view name);
    static Polynomial term(ContextPtr ctx, Monomial m, const Integer& c = 1);

    const ContextPtr& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    Integer coefficient(const Monomial& m) const;

    /// Degree of a nonzero homogeneous polynomial; nullopt for zero or mixed degrees.
    std::optional<unsigned> homogeneous_degree() const;
    /// True for zero and for single-degree polynomials.
    bool is_homogeneous() const;
    /// Largest term degree; 0 for the zero polynomial.
    unsigned max_degree() const;

    /// Adds c*m in place, dropping the term when it cancels.
    void add_term(const Monomial& m, const Integer& c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Integer& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= -1; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Integer& c) { return a *= c; }
    friend Polynomial operator*(const Integer& c, Polynomial a) { return a *= c; }

    /// Term maps equal; contexts must match.
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    /// Human-readable form such as "2*c1 - 2*l" or "l^2 - l*c1", terms in
    /// descending degree then canonical order.
    std::string to_string() const;

private:
    void require_same_context(const Polynomial& other) const;

    ContextPtr ctx_;
    TermMap terms_;
};

Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// Sum of the terms of total degree m.
Polynomial homogeneous_component(const Polynomial& p, unsigned m);

/// All monomials of weighted degree m in canonical order.
std::vector<Monomial> enumerate_monomials(const GradedContext& ctx, unsigned m);

/// Number of monomials of degree m, without enumerating them.
Integer count_monomials(const GradedContext& ctx, unsigned m);

/// Evaluates a ring map given by images of the source variables. Images are
/// cached per monomial, so one instance amortises repeated evaluation; it is
/// safe to share between threads.
class Substitution {
public:
    /// images[i] is the image of source variable i; each must be homogeneous of
    /// that variable's degree (or zero). Throws SubstitutionError otherwise.
    Substitution(ContextPtr source, ContextPtr target, std::vector<Polynomial> images);

    const ContextPtr& source() const { return source_; }
    const ContextPtr& target() const { return target_; }
    const std::vector<Polynomial>& images() const { return images_; }

    Polynomial apply(const Monomial& m) const;
    Polynomial apply(const Polynomial& p) const;

private:
    ContextPtr source_;
    ContextPtr target_;
    std::vector<Polynomial> images_;
    mutable std::mutex mutex_;
    mutable std::map<Monomial, Polynomial> cache_;
};

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images, ContextPtr target);

/// Name-keyed variant; every variable of p's context must have an image.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images,
                      ContextPtr target);

}  // namespace chow
