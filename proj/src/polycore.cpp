#include "chow/polycore.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace chow {

namespace {

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto first = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(first) || first == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

}  // namespace

std::shared_ptr<const GradedContext> GradedContext::make(std::vector<Variable> variables) {
    std::set<std::string> seen;
    for (const auto& v : variables) {
        if (!valid_identifier(v.name))
            throw ContextError("invalid variable name '" + v.name + "'");
        if (v.degree == 0)
            throw ContextError("variable '" + v.name + "' must have positive degree");
        if (!seen.insert(v.name).second)
            throw ContextError("duplicate variable name '" + v.name + "'");
    }
    return std::shared_ptr<const GradedContext>(new GradedContext(std::move(variables)));
}

std::optional<std::size_t> GradedContext::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::unit(std::size_t arity, std::size_t var) {
    Monomial m(arity);
    m.exps_.at(var) = 1;
    return m;
}

unsigned Monomial::degree(const GradedContext& ctx) const {
    unsigned d = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) d += exps_[i] * ctx.variable(i).degree;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] -= b.exps_[i];
    return r;
}

std::string Monomial::to_string(const GradedContext& ctx) const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += ctx.variable(i).name;
        if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
}

bool canonical_before(const Monomial& a, const Monomial& b) {
    return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                        a.exponents().begin(), a.exponents().end());
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw ContextError("polynomial requires a context");
}

Polynomial Polynomial::constant(ContextPtr ctx, const Integer& c) {
    Polynomial p(std::move(ctx));
    p.add_term(Monomial(p.ctx_->arity()), c);
    return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t index) {
    if (!ctx || index >= ctx->arity()) throw ContextError("variable index out of range");
    Polynomial p(std::move(ctx));
    p.add_term(Monomial::unit(p.ctx_->arity(), index), 1);
    return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, std::string_view name) {
    auto idx = ctx ? ctx->index_of(name) : std::nullopt;
    if (!idx) throw ContextError("unknown variable '" + std::string(name) + "'");
    return variable(std::move(ctx), *idx);
}

Polynomial Polynomial::term(ContextPtr ctx, Monomial m, const Integer& c) {
    Polynomial p(std::move(ctx));
    if (m.arity() != p.ctx_->arity()) throw ContextError("monomial arity does not match context");
    p.add_term(m, c);
    return p;
}

Integer Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
}

std::optional<unsigned> Polynomial::homogeneous_degree() const {
    std::optional<unsigned> d;
    for (const auto& [m, c] : terms_) {
        unsigned md = m.degree(*ctx_);
        if (d && *d != md) return std::nullopt;
        d = md;
    }
    return d;
}

bool Polynomial::is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }

unsigned Polynomial::max_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree(*ctx_));
    return d;
}

void Polynomial::add_term(const Monomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

void Polynomial::require_same_context(const Polynomial& other) const {
    if (!same_context(ctx_, other.ctx_))
        throw ContextError("polynomials belong to different contexts");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    require_same_context(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    require_same_context(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Integer& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_context(b);
    Polynomial r(a.ctx_);
    Integer prod;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            prod = ca * cb;
            r.add_term(ma * mb, prod);
        }
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    a.require_same_context(b);
    return a.terms_ == b.terms_;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const TermMap::value_type*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [&](auto* x, auto* y) {
        unsigned dx = x->first.degree(*ctx_), dy = y->first.degree(*ctx_);
        if (dx != dy) return dx > dy;
        return canonical_before(x->first, y->first);
    });
    std::ostringstream out;
    bool first = true;
    for (const auto* t : order) {
        const Integer& c = t->second;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (t->first.is_one()) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << '*';
            out << t->first.to_string(*ctx_);
        }
    }
    return out.str();
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial homogeneous_component(const Polynomial& p, unsigned m) {
    Polynomial r(p.context());
    for (const auto& [mono, c] : p.terms())
        if (mono.degree(*p.context()) == m) r.add_term(mono, c);
    return r;
}

// ------------------------------------------------------------ enumeration

namespace {

void enumerate_rec(const GradedContext& ctx, std::size_t var, unsigned remaining, Monomial& cur,
                   std::vector<Monomial>& out) {
    if (var == ctx.arity()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    unsigned d = ctx.variable(var).degree;
    for (unsigned e = remaining / d + 1; e-- > 0;) {
        cur[var] = e;
        enumerate_rec(ctx, var + 1, remaining - e * d, cur, out);
    }
    cur[var] = 0;
}

}  // namespace

std::vector<Monomial> enumerate_monomials(const GradedContext& ctx, unsigned m) {
    std::vector<Monomial> out;
    Monomial cur(ctx.arity());
    enumerate_rec(ctx, 0, m, cur, out);
    return out;
}

Integer count_monomials(const GradedContext& ctx, unsigned m) {
    std::vector<Integer> ways(m + 1, 0);
    ways[0] = 1;
    for (const auto& v : ctx.variables())
        for (unsigned d = v.degree; d <= m; ++d) ways[d] += ways[d - v.degree];
    return ways[m];
}

// ----------------------------------------------------------- substitution

Substitution::Substitution(ContextPtr source, ContextPtr target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (!source_ || !target_) throw SubstitutionError("substitution requires both contexts");
    if (images_.size() != source_->arity())
        throw SubstitutionError("expected " + std::to_string(source_->arity()) +
                                " images, got " + std::to_string(images_.size()));
    for (std::size_t i = 0; i < images_.size(); ++i) {
        const auto& img = images_[i];
        const auto& var = source_->variable(i);
        if (!same_context(img.context(), target_))
            throw SubstitutionError("image of '" + var.name + "' is not in the target context");
        if (img.is_zero()) continue;
        auto d = img.homogeneous_degree();
        if (!d) throw SubstitutionError("image of '" + var.name + "' is not homogeneous");
        if (*d != var.degree)
            throw SubstitutionError("image of '" + var.name + "' has degree " + std::to_string(*d) +
                                    ", expected " + std::to_string(var.degree));
    }
}

Polynomial Substitution::apply(const Monomial& m) const {
    if (m.arity() != source_->arity()) throw ContextError("monomial arity does not match source");
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    }
    Polynomial result = Polynomial::constant(target_, 1);
    auto last = std::find_if(m.exponents().rbegin(), m.exponents().rend(),
                             [](auto e) { return e != 0; });
    if (last != m.exponents().rend()) {
        std::size_t var = static_cast<std::size_t>(m.exponents().rend() - last) - 1;
        Monomial rest = m;
        rest[var] -= 1;
        result = apply(rest) * images_[var];
    }
    std::lock_guard lock(mutex_);
    cache_.emplace(m, result);
    return result;
}

Polynomial Substitution::apply(const Polynomial& p) const {
    if (!same_context(p.context(), source_))
        throw ContextError("polynomial is not in the substitution's source context");
    Polynomial r(target_);
    for (const auto& [m, c] : p.terms()) r += apply(m) * c;
    return r;
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images, ContextPtr target) {
    Substitution s(p.context(), std::move(target), {images.begin(), images.end()});
    return s.apply(p);
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images,
                      ContextPtr target) {
    const auto& ctx = *p.context();
    std::vector<Polynomial> ordered;
    for (std::size_t i = 0; i < ctx.arity(); ++i) {
        const auto& name = ctx.variable(i).name;
        auto it = images.find(name);
        if (it != images.end()) {
            ordered.push_back(it->second);
            continue;
        }
        bool used = std::any_of(p.terms().begin(), p.terms().end(),
                                [i](const auto& t) { return t.first[i] != 0; });
        if (used) throw SubstitutionError("no image given for variable '" + name + "'");
        ordered.emplace_back(target);  // unused, any degree-compatible image will do
    }
    return substitute(p, ordered, std::move(target));
}

}  // namespace chow
