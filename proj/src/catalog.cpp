#include "chow/catalog.hpp"

#include "chow/expression.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace chow {

Integer binomial(long a, long b) {
    if (a < 0 || b < 0 || b > a) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

namespace {

void require_positive(unsigned n, const char* what) {
    if (n == 0) throw std::invalid_argument(std::string(what) + " must be at least 1");
}

std::string cname(unsigned i) { return "c" + std::to_string(i); }

// Presentations are cached per parameter so repeated calls share the memo of
// computed graded pieces.
template <class Build>
RingPresentation cached(std::map<unsigned, RingPresentation>& cache, std::mutex& mu, unsigned key, Build build) {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build()).first;
    return it->second;
}

}  // namespace

ContextPtr go_context(unsigned n) {
    require_positive(n, "n");
    std::vector<Variable> vars{{"l", 1}};
    for (unsigned i = 1; i <= 2 * n; ++i) vars.push_back({cname(i), i});
    return GradedContext::make(std::move(vars));
}

ContextPtr chern_context(unsigned k) {
    require_positive(k, "number of Chern classes");
    std::vector<Variable> vars;
    for (unsigned i = 1; i <= k; ++i) vars.push_back({cname(i), i});
    return GradedContext::make(std::move(vars));
}

ContextPtr torus_context(unsigned n) {
    require_positive(n, "n");
    std::vector<Variable> vars{{"l", 1}};
    for (unsigned j = 1; j <= n; ++j) vars.push_back({"t" + std::to_string(j), 1});
    return GradedContext::make(std::move(vars));
}

ContextPtr b_context(unsigned n) {
    require_positive(n, "n");
    std::vector<Variable> vars{{"l", 1}};
    for (unsigned i = 2; i <= 2 * n; i += 2) vars.push_back({cname(i), i});
    return GradedContext::make(std::move(vars));
}

static std::vector<Polynomial> go_relations_in(const ContextPtr& ctx, unsigned n) {
    const long N = 2 * static_cast<long>(n);
    std::vector<Polynomial> rels;
    for (long p = 1; p <= N; ++p) {
        Polynomial r = -Polynomial::variable(ctx, static_cast<std::size_t>(p));
        for (long i = 0; i <= p; ++i) {
            Integer coeff = binomial(N - i, p - i);
            if (coeff == 0) continue;
            if (i % 2) coeff = -coeff;
            Monomial mono(ctx->arity());
            mono[0] = static_cast<std::uint32_t>(p - i);
            if (i > 0) mono[static_cast<std::size_t>(i)] = 1;
            r.add_term(mono, coeff);
        }
        rels.push_back(std::move(r));
    }
    return rels;
}

std::vector<Polynomial> go_relations(unsigned n) { return go_relations_in(go_context(n), n); }

RingPresentation go_presentation(unsigned n) {
    static std::map<unsigned, RingPresentation> cache;
    static std::mutex mu;
    require_positive(n, "n");
    return cached(cache, mu, n, [n] {
        auto ctx = go_context(n);
        return RingPresentation(ctx, go_relations_in(ctx, n), "R(n=" + std::to_string(n) + ")");
    });
}

RingPresentation o_presentation(unsigned k) {
    static std::map<unsigned, RingPresentation> cache;
    static std::mutex mu;
    require_positive(k, "number of Chern classes");
    return cached(cache, mu, k, [k] {
        auto ctx = chern_context(k);
        std::vector<Polynomial> rels;
        for (unsigned p = 1; p <= k; p += 2) rels.push_back(Integer(2) * Polynomial::variable(ctx, p - 1));
        return RingPresentation(ctx, std::move(rels), "O(k=" + std::to_string(k) + ")");
    });
}

RingPresentation torus_presentation(unsigned n) {
    static std::map<unsigned, RingPresentation> cache;
    static std::mutex mu;
    require_positive(n, "n");
    return cached(cache, mu, n, [n] { return RingPresentation(torus_context(n), {}, "T(n=" + std::to_string(n) + ")"); });
}

RingPresentation b_presentation(unsigned n) {
    static std::map<unsigned, RingPresentation> cache;
    static std::mutex mu;
    require_positive(n, "n");
    return cached(cache, mu, n, [n] { return RingPresentation(b_context(n), {}, "B(n=" + std::to_string(n) + ")"); });
}

ChernImageTable chern_images(unsigned n) {
    auto ctx = torus_context(n);
    const Polynomial one = Polynomial::constant(ctx, 1);
    const Polynomial l = Polynomial::variable(ctx, 0);
    Polynomial total = one;
    for (unsigned j = 1; j <= n; ++j) {
        const Polynomial t = Polynomial::variable(ctx, j);
        total = total * (one + l + t) * (one - t);
    }
    ChernImageTable table{n, l, {}};
    for (unsigned i = 1; i <= 2 * n; ++i) table.chern.push_back(homogeneous_component(total, i));
    return table;
}

RingMapSpec torus_map(unsigned n) {
    auto table = chern_images(n);
    std::vector<Polynomial> images{table.lambda};
    for (auto& c : table.chern) images.push_back(std::move(c));
    RingMapSpec spec(go_presentation(n), torus_presentation(n), std::move(images));
    const auto& rels = spec.source().relations();
    for (std::size_t i = 0; i < rels.size(); ++i) {
        Polynomial img = spec.apply(rels[i]);
        if (!img.is_zero())
            throw IllDefinedMapError("torus image of relation " + std::to_string(i + 1) + " is not zero", i,
                                     img.to_string());
    }
    return spec;
}

RingMapSpec reduction_map(unsigned n) {
    auto target = o_presentation(2 * n);
    const auto& tctx = target.context();
    std::vector<Polynomial> images{Polynomial(tctx)};
    for (unsigned i = 1; i <= 2 * n; ++i) images.push_back(Polynomial::variable(tctx, i - 1));
    return RingMapSpec(go_presentation(n), std::move(target), std::move(images));
}

RingMapSpec b_inclusion(unsigned n) {
    auto target = go_presentation(n);
    const auto& tctx = target.context();
    std::vector<Polynomial> images{Polynomial::variable(tctx, 0)};
    for (unsigned i = 2; i <= 2 * n; i += 2) images.push_back(Polynomial::variable(tctx, i));
    return RingMapSpec(b_presentation(n), std::move(target), std::move(images));
}

std::vector<Monomial> b_basis(unsigned n, unsigned m) {
    auto bctx = b_context(n);
    std::vector<Monomial> out;
    for (const auto& mono : enumerate_monomials(*bctx, m)) {
        Monomial full(2 * n + 1);
        full[0] = mono[0];
        for (unsigned k = 1; k <= n; ++k) full[2 * k] = mono[k];
        out.push_back(std::move(full));
    }
    return out;
}

RingPresentation kunneth_extend(const RingPresentation& p) {
    const auto& ctx = p.context();
    if (ctx->index_of("l")) throw ContextError("presentation already has a variable named 'l'");
    std::vector<Variable> vars{{"l", 1}};
    for (const auto& v : ctx->variables()) vars.push_back(v);
    auto ext = GradedContext::make(std::move(vars));
    std::vector<Polynomial> rels;
    for (const auto& r : p.relations()) {
        Polynomial q(ext);
        for (const auto& [mono, c] : r.terms()) {
            Monomial shifted(ext->arity());
            for (std::size_t i = 0; i < mono.arity(); ++i) shifted[i + 1] = mono[i];
            q.add_term(shifted, c);
        }
        rels.push_back(std::move(q));
    }
    std::string name = p.name().empty() ? std::string() : p.name() + "[l]";
    return RingPresentation(ext, std::move(rels), std::move(name));
}

// ---------------------------------------------------------------- loading

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::size_t first_non_space(const std::string& s, std::size_t from) {
    while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
    return from;
}

std::size_t token_end(const std::string& s, std::size_t from) {
    while (from < s.size() && !std::isspace(static_cast<unsigned char>(s[from]))) ++from;
    return from;
}

}  // namespace

RingPresentation parse_presentation(std::string_view text, std::string name) {
    std::vector<Line> lines;
    {
        std::size_t number = 1, start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string line(text.substr(start, end - start));
            if (!line.empty() && line.back() == '\r') line.pop_back();
            for (std::size_t i = 0; i < line.size(); ++i)
                if (static_cast<unsigned char>(line[i]) > 127)
                    throw PresentationParseError("non-ASCII character", number, i + 1);
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            lines.push_back({number++, std::move(line)});
            start = end + 1;
        }
    }

    std::vector<Variable> vars;
    std::vector<std::pair<const Line*, std::size_t>> relation_lines;  // line, column of expression
    for (const auto& line : lines) {
        const std::string& s = line.text;
        std::size_t kw = first_non_space(s, 0);
        if (kw == s.size()) continue;
        std::size_t kw_end = token_end(s, kw);
        std::string keyword = s.substr(kw, kw_end - kw);
        if (keyword == "generator") {
            std::size_t a = first_non_space(s, kw_end), a_end = token_end(s, a);
            std::size_t b = first_non_space(s, a_end), b_end = token_end(s, b);
            if (a == s.size()) throw PresentationParseError("generator needs a name", line.number, a + 1);
            if (b == s.size()) throw PresentationParseError("generator needs a degree", line.number, b + 1);
            if (first_non_space(s, b_end) != s.size())
                throw PresentationParseError("unexpected text after degree", line.number,
                                             first_non_space(s, b_end) + 1);
            std::string deg = s.substr(b, b_end - b);
            bool digits = !deg.empty() && deg.size() <= 9;
            for (char c : deg) digits = digits && std::isdigit(static_cast<unsigned char>(c));
            if (!digits || std::stoul(deg) == 0)
                throw PresentationParseError("degree must be a positive integer", line.number, b + 1);
            std::string var = s.substr(a, a_end - a);
            for (const auto& v : vars)
                if (v.name == var)
                    throw PresentationParseError("duplicate generator '" + var + "'", line.number, a + 1);
            vars.push_back({var, static_cast<unsigned>(std::stoul(deg))});
        } else if (keyword == "relation") {
            std::size_t e = first_non_space(s, kw_end);
            if (e == s.size()) throw PresentationParseError("relation needs an expression", line.number, e + 1);
            relation_lines.emplace_back(&line, e);
        } else {
            throw PresentationParseError("unknown keyword '" + keyword + "'", line.number, kw + 1);
        }
    }

    ContextPtr ctx;
    try {
        ctx = GradedContext::make(vars);
    } catch (const ContextError& e) {
        throw PresentationParseError(e.what(), 1, 1);
    }

    std::vector<Polynomial> rels;
    for (const auto& [line, col] : relation_lines) {
        Polynomial r(ctx);
        try {
            r = parse_poly_expression(std::string_view(line->text).substr(col), ctx);
        } catch (const ParseError& e) {
            std::string msg = e.what();
            msg = msg.substr(0, msg.rfind(" at column "));
            throw PresentationParseError(msg, line->number, col + e.position() + 1);
        }
        if (r.is_zero()) throw PresentationParseError("relation is zero", line->number, col + 1);
        unsigned top = r.max_degree();
        for (const auto& [mono, c] : r.terms()) {
            if (mono.degree(*ctx) == top) continue;
            throw PresentationParseError("relation is not homogeneous: term " + Polynomial::term(ctx, mono, c).to_string() +
                                             " has degree " + std::to_string(mono.degree(*ctx)) + ", expected " +
                                             std::to_string(top),
                                         line->number, col + 1);
        }
        if (top == 0) throw PresentationParseError("relation is a nonzero constant", line->number, col + 1);
        rels.push_back(std::move(r));
    }
    return RingPresentation(ctx, std::move(rels), std::move(name));
}

RingPresentation load_presentation(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open presentation file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str(), path.stem().string());
}

}  // namespace chow
