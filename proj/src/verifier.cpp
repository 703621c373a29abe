#include "chow/verifier.hpp"

#include "dense.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <thread>

namespace chow {

namespace {

constexpr std::array<std::string_view, 12> statements{
    "every relation maps to the zero polynomial under the torus map",
    "for odd p, rel_p + 2c_p is divisible by l, and 2c_p*mu vanishes in R/(l)",
    "for even p, rel_p is divisible by l",
    "the even-Chern subring B = Z[l, c2, c4, ...] maps injectively into R",
    "R/(l) is isomorphic to the O-ring, compatibly with multiplication by each c_i",
    "the kernel of the torus map equals the torsion subgroup",
    "every torsion invariant factor is 2",
    "R_m / B_m is a finite 2-group",
    "#ker(l: R_m -> R_m+1) equals the order of the torsion of the O-ring in degree m",
    "l annihilates torsion and ker(l) equals the torsion subgroup",
    "torsion of R surjects onto torsion of the O-ring",
    "l*c_q has odd order modulo l*B_q, and 2*gamma has odd order modulo B_m",
};

constexpr std::string_view r_side_note =
    "Statements about the Chow ring are checked on the presentation R, which it is isomorphic to.";

Json jint(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

Json jcoords(std::span<const Integer> xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(jint(x));
    return a;
}

Json jsparse(const SparseVector& v) {
    Json a = Json::array();
    for (const auto& [i, x] : v.entries()) a.push_back(Json::array({i, jint(x)}));
    return a;
}

bool divisible_by_lambda(const Polynomial& f, Monomial* offending) {
    for (const auto& [mono, c] : f.terms())
        if (mono[0] == 0) {
            if (offending) *offending = mono;
            return false;
        }
    return true;
}

bool is_power_of_two(const Integer& d) { return d > 0 && mpz_popcount(d.get_mpz_t()) == 1; }

bool all_equal_to(const std::vector<Integer>& xs, long value) {
    return std::all_of(xs.begin(), xs.end(), [&](const Integer& x) { return x == value; });
}

class Runner {
public:
    Runner(unsigned n, unsigned max_degree, const VerifierOptions& opts)
        : n_(n), bound_(max_degree), opts_(opts), R_(go_presentation(n)) {}

    CheckReport run(CheckId id) {
        CheckReport rep;
        rep.id = id;
        rep.n = n_;
        rep.max_degree = bound_;
        rep.note = std::string(r_side_note);
        switch (id) {
            case CheckId::C1: c1(rep); break;
            case CheckId::C2: each(rep, [&](unsigned m) { return c2(m); }); break;
            case CheckId::C3: each(rep, [&](unsigned m) { return c3(m); }); break;
            case CheckId::C4: each(rep, [&](unsigned m) { return c4(m); }); break;
            case CheckId::C5: each(rep, [&](unsigned m) { return c5(m); }); break;
            case CheckId::C6: each(rep, [&](unsigned m) { return c6(m); }); break;
            case CheckId::C7: each(rep, [&](unsigned m) { return c7(m); }); break;
            case CheckId::C8: each(rep, [&](unsigned m) { return c8(m); }); break;
            case CheckId::C9:
                rep.note += " The equality with #ker(l) on the Chow ring itself follows from that isomorphism and is not recomputed.";
                each(rep, [&](unsigned m) { return c9(m); });
                break;
            case CheckId::C10: each(rep, [&](unsigned m) { return c10(m); }); break;
            case CheckId::C11: each(rep, [&](unsigned m) { return c11(m); }); break;
            case CheckId::C12: each(rep, [&](unsigned m) { return c12(m); }); break;
        }
        rep.passed = std::all_of(rep.per_degree.begin(), rep.per_degree.end(),
                                 [](const DegreeResult& d) { return d.passed; });
        return rep;
    }

    // Computes the pieces R_0..R_top in parallel so the checks find them memoised.
    void warm(unsigned top) {
        if (opts_.threads <= 1) return;
        std::atomic<unsigned> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < opts_.threads; ++t)
            pool.emplace_back([&] {
                for (unsigned d; (d = next++) <= top;) R_.piece(d)->structure();
            });
        for (auto& th : pool) th.join();
    }

private:
    using Body = std::function<DegreeResult(unsigned)>;

    void each(CheckReport& rep, const Body& body) {
        for (unsigned m = 0; m <= bound_; ++m) {
            DegreeResult r = body(m);
            r.m = m;
            rep.per_degree.push_back(std::move(r));
        }
    }

    static DegreeResult fail(Json witness, std::string detail) {
        DegreeResult r;
        r.passed = false;
        r.witness = std::move(witness);
        r.detail = std::move(detail);
        return r;
    }

    static DegreeResult pass(std::string detail) {
        DegreeResult r;
        r.detail = std::move(detail);
        return r;
    }

    const ContextPtr& ctx() const { return R_.context(); }
    Polynomial lambda() const { return Polynomial::variable(ctx(), 0); }
    Polynomial chern(unsigned i) const { return Polynomial::variable(ctx(), i); }

    const RingPresentation& mod_lambda() {
        if (!Q_) Q_ = quotient_presentation(R_, lambda());
        return *Q_;
    }

    RingMapSpec& q_to_o() {
        if (!qo_) {
            auto O = o_presentation(2 * n_);
            std::vector<Polynomial> images{Polynomial(O.context())};
            for (unsigned i = 1; i <= 2 * n_; ++i) images.push_back(Polynomial::variable(O.context(), i - 1));
            qo_.emplace(mod_lambda(), O, std::move(images));
        }
        return *qo_;
    }

    void c1(CheckReport& rep) {
        auto table = chern_images(n_);
        std::vector<Polynomial> images{table.lambda};
        images.insert(images.end(), table.chern.begin(), table.chern.end());
        Substitution subst(ctx(), torus_context(n_), images);
        auto rels = R_.relations();
        unsigned top = std::max(bound_, 2 * n_);
        for (unsigned m = 0; m <= top; ++m) {
            DegreeResult r;
            if (m == 0 || m > 2 * n_) {
                r = pass("no relation in this degree");
            } else {
                Polynomial img = subst.apply(rels[m - 1]);
                if (img.is_zero())
                    r = pass("rel_" + std::to_string(m) + " -> 0");
                else
                    r = fail(Json{{"relation", rels[m - 1].to_string()}, {"image", img.to_string()}},
                             "rel_" + std::to_string(m) + " -> " + img.to_string());
            }
            r.m = m;
            rep.per_degree.push_back(std::move(r));
        }
    }

    DegreeResult c2(unsigned m) {
        if (m % 2 == 1 && m <= 2 * n_) {
            Polynomial f = R_.relations()[m - 1] + Integer(2) * chern(m);
            Monomial bad;
            if (!divisible_by_lambda(f, &bad))
                return fail(Json{{"p", m}, {"polynomial", f.to_string()}, {"term", bad.to_string(*ctx())}},
                            "rel_" + std::to_string(m) + " + 2c" + std::to_string(m) + " not divisible by l");
        }
        auto piece = mod_lambda().piece(m);
        std::size_t checked = 0;
        for (unsigned p = 1; p <= std::min(m, 2 * n_); p += 2) {
            for (const auto& mu : enumerate_monomials(*ctx(), m - p)) {
                Polynomial f = Integer(2) * chern(p) * Polynomial::term(ctx(), mu);
                ++checked;
                if (!piece->is_zero(f))
                    return fail(Json{{"p", p}, {"monomial", mu.to_string(*ctx())}, {"class", jcoords(piece->class_of(f))}},
                                "2c" + std::to_string(p) + "*" + mu.to_string(*ctx()) + " nonzero in R/(l)");
            }
        }
        return pass(std::to_string(checked) + " products vanish mod l");
    }

    DegreeResult c3(unsigned m) {
        if (m == 0 || m % 2 == 1 || m > 2 * n_) return pass("no even relation in this degree");
        const auto& rel = R_.relations()[m - 1];
        Monomial bad;
        if (!divisible_by_lambda(rel, &bad))
            return fail(Json{{"relation", rel.to_string()}, {"term", bad.to_string(*ctx())}},
                        "rel_" + std::to_string(m) + " not divisible by l");
        return pass("rel_" + std::to_string(m) + " divisible by l");
    }

    DegreeResult c4(unsigned m) {
        if (!incl_) incl_.emplace(b_inclusion(n_));
        auto ind = induced_map_in_degree(*incl_, m);
        std::size_t rank = incl_->source().piece(m)->basis().size();
        if (!ind.kernel.is_trivial())
            return fail(Json{{"kernel", ind.kernel.to_string()}},
                        "kernel " + ind.kernel.to_string());
        return pass("B_m of rank " + std::to_string(rank) + " injects");
    }

    DegreeResult c5(unsigned m) {
        auto& phi = q_to_o();
        auto qm = phi.source().piece(m);
        auto om = phi.target().piece(m);
        const auto& gq = qm->structure();
        const auto& go = om->structure();
        if (gq != go)
            return fail(Json{{"quotient", gq.to_string()}, {"o_ring", go.to_string()}},
                        gq.to_string() + " vs " + go.to_string());
        auto ind = induced_map_in_degree(phi, m);
        if (!ind.kernel.is_trivial())
            return fail(Json{{"kernel", ind.kernel.to_string()}}, "map has kernel " + ind.kernel.to_string());
        auto gens = om->lattice().generators();
        for (const auto& c : ind.matrix.columns()) gens.push_back(c);
        auto coker = QuotientPresentation(om->basis().size(), std::move(gens)).decomposition().group();
        if (!coker.is_trivial())
            return fail(Json{{"cokernel", coker.to_string()}}, "map has cokernel " + coker.to_string());

        for (unsigned i = 1; i <= 2 * n_ && m + i <= bound_; ++i) {
            phi.validate(m + i);
            Polynomial ci_q = Polynomial::variable(phi.source().context(), i);
            Polynomial ci_o = Polynomial::variable(phi.target().context(), i - 1);
            IntMatrix lhs = map_matrix(phi, m + i) * multiplication_matrix(phi.source(), ci_q, m);
            IntMatrix rhs = multiplication_matrix(phi.target(), ci_o, m) * map_matrix(phi, m);
            IntMatrix diff = lhs - rhs;
            auto target = phi.target().piece(m + i);
            for (std::size_t j = 0; j < diff.cols(); ++j)
                if (!target->is_zero(diff.column(j)))
                    return fail(Json{{"c", i}, {"monomial", qm->basis()[j].to_string(*phi.source().context())},
                                     {"difference", jsparse(diff.column(j))}},
                                "square with c" + std::to_string(i) + " does not commute");
        }
        return pass(go.to_string());
    }

    DegreeResult c6(unsigned m) {
        if (!torus_) torus_.emplace(torus_map(n_));
        auto ind = induced_map_in_degree(*torus_, m);
        auto torsion = R_.piece(m)->structure().torsion_part();
        if (ind.kernel != torsion)
            return fail(Json{{"kernel", ind.kernel.to_string()}, {"torsion", torsion.to_string()}},
                        "kernel " + ind.kernel.to_string() + " vs torsion " + torsion.to_string());
        return pass("kernel = torsion = " + torsion.to_string());
    }

    DegreeResult c7(unsigned m) {
        const auto& g = R_.piece(m)->structure();
        if (!all_equal_to(g.invariant_factors, 2))
            return fail(Json{{"structure", g.to_string()}, {"invariant_factors", jcoords(g.invariant_factors)}},
                        g.to_string());
        return pass(g.to_string());
    }

    QuotientPresentation modulo_b(unsigned m) {
        auto piece = R_.piece(m);
        std::vector<SparseVector> extra;
        for (const auto& mono : b_basis(n_, m)) extra.push_back(SparseVector::unit(*piece->index_of(mono)));
        return piece->lattice().with_generators(extra);
    }

    DegreeResult c8(unsigned m) {
        auto g = modulo_b(m).decomposition().group();
        bool ok = g.is_finite() && std::all_of(g.invariant_factors.begin(), g.invariant_factors.end(), is_power_of_two);
        if (!ok) return fail(Json{{"quotient", g.to_string()}}, g.to_string());
        return pass(g.to_string());
    }

    DegreeResult c9(unsigned m) {
        auto k = multiplication_map(R_, lambda(), m).kernel;
        Integer t = o_presentation(2 * n_).piece(m)->structure().torsion_cardinality();
        if (!k.is_finite() || k.cardinality() != t)
            return fail(Json{{"ker_l", k.to_string()}, {"o_torsion_order", jint(t)}},
                        "ker l = " + k.to_string() + ", #T_O = " + t.get_str());
        return pass("#ker l = #T_O = " + t.get_str());
    }

    DegreeResult c10(unsigned m) {
        auto piece = R_.piece(m);
        auto next = R_.piece(m + 1);
        IntMatrix mult = multiplication_matrix(R_, lambda(), m);
        for (const auto& g : piece->torsion_generators()) {
            auto image = mult.apply(g);
            if (!next->is_zero(image))
                return fail(Json{{"torsion_element", piece->to_polynomial(g).to_string()},
                                 {"image_class", jcoords(next->class_of(image))}},
                            "l * " + piece->to_polynomial(g).to_string() + " != 0");
        }
        auto k = multiplication_map(R_, lambda(), m).kernel;
        auto t = piece->structure().torsion_part();
        if (k != t)
            return fail(Json{{"ker_l", k.to_string()}, {"torsion", t.to_string()}},
                        "ker l = " + k.to_string() + " vs torsion " + t.to_string());
        return pass("ker l = torsion = " + t.to_string());
    }

    DegreeResult c11(unsigned m) {
        if (!reduction_) reduction_.emplace(reduction_map(n_));
        reduction_->validate(m);
        auto src = R_.piece(m);
        auto dst = reduction_->target().piece(m);
        const auto& dec = dst->decomposition();
        std::size_t free = dst->structure().free_rank;
        std::size_t tors = dec.coordinate_count() - free;
        IntMatrix M = map_matrix(*reduction_, m);

        std::vector<SparseVector> span;
        for (const auto& g : src->torsion_generators()) {
            auto y = dst->class_of(M.apply(g));
            for (std::size_t k = 0; k < free; ++k)
                if (y[k] != 0)
                    return fail(Json{{"element", src->to_polynomial(g).to_string()}, {"image_class", jcoords(y)}},
                                "torsion element maps to a class of infinite order");
            span.push_back(SparseVector::from_dense(std::span<const Integer>(y).subspan(free)));
        }
        for (std::size_t k = 0; k < tors; ++k) span.push_back(SparseVector::unit(k, dec.modulus(free + k)));
        auto coker = QuotientPresentation(tors, std::move(span)).decomposition().group();
        if (!coker.is_trivial())
            return fail(Json{{"cokernel", coker.to_string()}}, "T_R -> T_O has cokernel " + coker.to_string());
        return pass("onto " + dst->structure().torsion_part().to_string());
    }

    DegreeResult c12(unsigned m) {
        std::string detail;
        if (m >= 2 && (m - 1) % 2 == 1 && m - 1 < 2 * n_) {
            unsigned q = m - 1;
            auto piece = R_.piece(m);
            std::vector<SparseVector> extra;
            for (const auto& mono : b_basis(n_, q)) {
                Monomial lm = mono;
                lm[0] += 1;
                extra.push_back(SparseVector::unit(*piece->index_of(lm)));
            }
            auto quot = piece->lattice().with_generators(extra);
            auto order = element_order_in_quotient(quot, piece->coordinates(lambda() * chern(q)));
            if (!order || mpz_even_p(order->get_mpz_t()))
                return fail(Json{{"element", "l*c" + std::to_string(q)},
                                 {"order", order ? jint(*order) : Json("infinite")}},
                            "l*c" + std::to_string(q) + " has order " + (order ? order->get_str() : "infinite"));
            detail = "l*c" + std::to_string(q) + " order " + order->get_str() + "; ";
        }
        auto piece = R_.piece(m);
        auto quot = modulo_b(m);
        Integer worst = 1;
        for (std::size_t i = 0; i < piece->basis().size(); ++i) {
            auto order = element_order_in_quotient(quot, SparseVector::unit(i, 2));
            if (!order || mpz_even_p(order->get_mpz_t()))
                return fail(Json{{"element", "2*" + piece->basis()[i].to_string(*ctx())},
                                 {"order", order ? jint(*order) : Json("infinite")}},
                            "2*" + piece->basis()[i].to_string(*ctx()) + " has order " +
                                (order ? order->get_str() : "infinite"));
            worst = std::max(worst, *order);
        }
        return pass(detail + "max order of 2*gamma mod B: " + worst.get_str());
    }

    unsigned n_;
    unsigned bound_;
    VerifierOptions opts_;
    RingPresentation R_;
    std::optional<RingPresentation> Q_;
    std::optional<RingMapSpec> qo_, incl_, torus_, reduction_;
};

// Degrees of R touched by a check with the given bound.
unsigned top_degree(CheckId id, unsigned n, unsigned bound) {
    switch (id) {
        case CheckId::C1: return std::max(bound, 2 * n);
        case CheckId::C9:
        case CheckId::C10: return bound + 1;
        default: return bound;
    }
}

void check_limits(unsigned n, unsigned top, const VerifierOptions& opts) {
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    if (top > opts.degree_cap)
        throw ResourceLimitExceeded("degree " + std::to_string(top) + " exceeds the cap of " +
                                    std::to_string(opts.degree_cap));
    Integer size = count_monomials(*go_context(n), top);
    if (size > opts.basis_cap)
        throw ResourceLimitExceeded("degree " + std::to_string(top) + " needs a basis of " + size.get_str() +
                                    " monomials, above the cap of " + std::to_string(opts.basis_cap));
}

}  // namespace

std::string to_string(CheckId id) { return "C" + std::to_string(static_cast<int>(id)); }

std::optional<CheckId> parse_check_id(std::string_view text) {
    if (text.size() < 2 || (text[0] != 'C' && text[0] != 'c')) return std::nullopt;
    int v = 0;
    for (char ch : text.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(ch)) || v > 100) return std::nullopt;
        v = v * 10 + (ch - '0');
    }
    if (text[1] == '0' || v < 1 || v > 12) return std::nullopt;
    return static_cast<CheckId>(v);
}

std::string_view check_statement(CheckId id) { return statements.at(static_cast<std::size_t>(id) - 1); }

unsigned default_degree_bound(unsigned n) { return 2 * n + 6; }

CheckReport run_check(CheckId id, unsigned n, unsigned max_degree, const VerifierOptions& options) {
    unsigned top = top_degree(id, n, max_degree);
    check_limits(n, top, options);
    Runner runner(n, max_degree, options);
    runner.warm(top);
    return runner.run(id);
}

TorsionLift find_torsion_lift(unsigned n, unsigned p) {
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    if (p % 2 == 0 || p >= 2 * n)
        throw std::invalid_argument("lift degree must be odd and below 2n = " + std::to_string(2 * n));
    auto R = go_presentation(n);
    auto phi = reduction_map(n);
    phi.validate(p);
    auto src = R.piece(p);
    auto dst = phi.target().piece(p);
    const auto& dec = dst->decomposition();
    std::size_t free = dst->structure().free_rank;
    std::size_t tors = dec.coordinate_count() - free;

    auto target = dst->class_of(Polynomial::variable(phi.target().context(), p - 1));
    for (std::size_t k = 0; k < free; ++k)
        if (target[k] != 0) throw std::logic_error("c_p is not torsion in the O-ring");

    // Solve sum a_k phi(g_k) + sum b_j d_j e_j = c_p over torsion coordinates.
    IntMatrix M = map_matrix(phi, p);
    auto gens = src->torsion_generators();
    detail::DenseMatrix A(tors, gens.size() + tors);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        auto y = dst->class_of(M.apply(gens[k]));
        for (std::size_t j = 0; j < tors; ++j) A(j, k) = y[free + j];
    }
    for (std::size_t j = 0; j < tors; ++j) A(j, gens.size() + j) = dec.modulus(free + j);
    std::vector<Integer> rhs(target.begin() + static_cast<std::ptrdiff_t>(free), target.end());
    auto sol = detail::solve_integer(A, rhs);
    if (!sol) throw std::logic_error("no torsion lift of c" + std::to_string(p) + " found");

    SparseVector beta;
    for (std::size_t k = 0; k < gens.size(); ++k)
        if ((*sol)[k] != 0) beta.add_scaled(gens[k], (*sol)[k]);

    auto order = src->order_of(beta);
    SparseVector doubled = beta;
    doubled *= 2;
    SparseVector diff = M.apply(beta) - dst->coordinates(Polynomial::variable(phi.target().context(), p - 1));
    TorsionLift lift{n, p, src->to_polynomial(beta), beta, order ? *order : Integer(0), src->is_zero(doubled),
                     dst->is_zero(diff)};
    return lift;
}

bool SuiteResult::passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; }) &&
           std::all_of(lifts.begin(), lifts.end(), [](const TorsionLift& l) { return l.certified(); });
}

SuiteResult run_suite(unsigned n, unsigned max_degree, const VerifierOptions& options) {
    check_limits(n, std::max(max_degree + 1, 2 * n), options);
    Runner runner(n, max_degree, options);
    runner.warm(max_degree + 1);
    SuiteResult out;
    for (CheckId id : all_checks) out.reports.push_back(runner.run(id));
    for (unsigned p = 1; p < 2 * n; p += 2) out.lifts.push_back(find_torsion_lift(n, p));
    return out;
}

Json report_to_json(const CheckReport& r) {
    Json per = Json::array();
    for (const auto& d : r.per_degree) {
        Json e;
        e["m"] = d.m;
        e["status"] = d.passed ? "pass" : "fail";
        e["witness"] = d.witness ? *d.witness : Json(nullptr);
        per.push_back(std::move(e));
    }
    Json j;
    j["check"] = to_string(r.id);
    j["n"] = r.n;
    j["max_degree"] = r.max_degree;
    j["per_degree"] = std::move(per);
    j["passed"] = r.passed;
    return j;
}

Json lift_to_json(const TorsionLift& l) {
    Json j;
    j["n"] = l.n;
    j["p"] = l.p;
    j["element"] = l.element.to_string();
    j["coordinates"] = jsparse(l.coordinates);
    j["order"] = jint(l.order);
    j["doubled_in_lattice"] = l.doubled_in_lattice;
    j["maps_to_chern_class"] = l.maps_to_chern_class;
    j["certified"] = l.certified();
    return j;
}

}  // namespace chow
