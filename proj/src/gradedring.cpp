#include "chow/gradedring.hpp"

#include <algorithm>

namespace chow {

// ------------------------------------------------------- RingPresentation

RingPresentation::RingPresentation(ContextPtr ctx, std::vector<Polynomial> relations, std::string name)
    : state_(std::make_shared<State>()) {
    if (!ctx) throw ContextError("ring presentation requires a context");
    for (std::size_t i = 0; i < relations.size(); ++i) {
        const auto& r = relations[i];
        if (!same_context(r.context(), ctx))
            throw ContextError("relation " + std::to_string(i) + " is not in the presentation's context");
        if (r.is_zero()) throw HomogeneityError("relation " + std::to_string(i) + " is zero");
        auto d = r.homogeneous_degree();
        if (!d) throw HomogeneityError("relation " + std::to_string(i) + " is not homogeneous: " + r.to_string());
        if (*d == 0) throw HomogeneityError("relation " + std::to_string(i) + " has degree 0");
    }
    state_->ctx = std::move(ctx);
    state_->relations = std::move(relations);
    state_->name = std::move(name);
}

std::shared_ptr<const GradedPiece> RingPresentation::piece(unsigned m) const {
    {
        std::lock_guard lock(state_->mutex);
        if (auto it = state_->pieces.find(m); it != state_->pieces.end()) return it->second;
    }
    // Built outside the lock so distinct degrees can be computed concurrently;
    // a racing duplicate is discarded in favour of the first stored piece.
    auto built = std::make_shared<const GradedPiece>(*this, m);
    std::lock_guard lock(state_->mutex);
    return state_->pieces.emplace(m, std::move(built)).first->second;
}

// ------------------------------------------------------------ GradedPiece

GradedPiece::GradedPiece(const RingPresentation& ring, unsigned m)
    : ctx_(ring.context()), degree_(m), basis_(enumerate_monomials(*ctx_, m)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);

    std::vector<SparseVector> gens;
    for (const auto& rel : ring.relations()) {
        unsigned d = *rel.homogeneous_degree();
        if (d > m) continue;
        for (const auto& mu : enumerate_monomials(*ctx_, m - d)) {
            std::vector<std::pair<std::size_t, Integer>> entries;
            entries.reserve(rel.term_count());
            for (const auto& [mono, c] : rel.terms()) entries.emplace_back(index_.at(mono * mu), c);
            std::sort(entries.begin(), entries.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            SparseVector v;
            for (auto& [i, c] : entries) v.push_back(i, std::move(c));
            gens.push_back(std::move(v));
        }
    }
    lattice_ = QuotientPresentation(basis_.size(), std::move(gens));
}

std::optional<std::size_t> GradedPiece::index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SparseVector GradedPiece::coordinates(const Polynomial& f) const {
    if (!same_context(f.context(), ctx_)) throw ContextError("element is not in the piece's context");
    std::vector<std::pair<std::size_t, Integer>> entries;
    for (const auto& [mono, c] : f.terms()) {
        auto it = index_.find(mono);
        if (it == index_.end())
            throw HomogeneityError("term " + mono.to_string(*ctx_) + " does not have degree " +
                                   std::to_string(degree_));
        entries.emplace_back(it->second, c);
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector v;
    for (auto& [i, c] : entries) v.push_back(i, std::move(c));
    return v;
}

Polynomial GradedPiece::to_polynomial(const SparseVector& x) const {
    Polynomial p(ctx_);
    for (const auto& [i, c] : x.entries()) p.add_term(basis_.at(i), c);
    return p;
}

Polynomial GradedPiece::representative(std::span<const Integer> coords) const {
    return to_polynomial(decomposition().representative(coords));
}

std::vector<SparseVector> GradedPiece::torsion_generators() const {
    const auto& dec = decomposition();
    std::vector<SparseVector> out;
    for (std::size_t k = 0; k < dec.coordinate_count(); ++k)
        if (dec.modulus(k) != 0) out.push_back(dec.generator(k));
    return out;
}

std::vector<Integer> GradedPiece::torsion_orders() const {
    const auto& dec = decomposition();
    std::vector<Integer> out;
    for (std::size_t k = 0; k < dec.coordinate_count(); ++k)
        if (dec.modulus(k) != 0) out.push_back(dec.modulus(k));
    return out;
}

std::shared_ptr<const GradedPiece> graded_piece(const RingPresentation& p, unsigned m) { return p.piece(m); }

std::vector<Integer> element_class(const RingPresentation& p, const Polynomial& f) {
    if (f.is_zero()) return element_class(p, f, 0);
    auto d = f.homogeneous_degree();
    if (!d) throw HomogeneityError("element is not homogeneous: " + f.to_string());
    return element_class(p, f, *d);
}

std::vector<Integer> element_class(const RingPresentation& p, const Polynomial& f, unsigned m) {
    return p.piece(m)->class_of(f);
}

// ----------------------------------------------------------- RingMapSpec

RingMapSpec::RingMapSpec(RingPresentation source, RingPresentation target, std::vector<Polynomial> images)
    : state_(std::make_shared<State>(std::move(source), std::move(target), std::move(images))) {}

RingMapSpec RingMapSpec::from_names(RingPresentation source, RingPresentation target,
                                    const std::map<std::string, Polynomial>& images) {
    std::vector<Polynomial> ordered;
    for (const auto& var : source.context()->variables()) {
        auto it = images.find(var.name);
        if (it == images.end()) throw SubstitutionError("no image given for variable '" + var.name + "'");
        ordered.push_back(it->second);
    }
    return RingMapSpec(std::move(source), std::move(target), std::move(ordered));
}

void RingMapSpec::validate(unsigned max_degree) const {
    std::lock_guard lock(state_->mutex);
    if (state_->validated_through && *state_->validated_through >= max_degree) return;
    const auto& rels = source().relations();
    for (std::size_t i = 0; i < rels.size(); ++i) {
        unsigned d = *rels[i].homogeneous_degree();
        if (d > max_degree) continue;
        if (state_->validated_through && d <= *state_->validated_through) continue;
        Polynomial img = state_->subst.apply(rels[i]);
        if (!target().piece(d)->is_zero(img))
            throw IllDefinedMapError("relation " + std::to_string(i) + " (" + rels[i].to_string() +
                                         ") does not map to zero",
                                     i, img.to_string());
    }
    state_->validated_through = max_degree;
}

RingMapSpec compose(const RingMapSpec& second, const RingMapSpec& first) {
    if (!same_context(first.target().context(), second.source().context()))
        throw ContextError("composed maps do not match: first target differs from second source");
    std::vector<Polynomial> images;
    for (const auto& img : first.images()) images.push_back(second.apply(img));
    return RingMapSpec(first.source(), second.target(), std::move(images));
}

IntMatrix map_matrix(const RingMapSpec& phi, unsigned m) {
    auto src = phi.source().piece(m);
    auto dst = phi.target().piece(m);
    std::vector<SparseVector> cols;
    cols.reserve(src->basis().size());
    for (const auto& mono : src->basis()) cols.push_back(dst->coordinates(phi.apply(mono)));
    return IntMatrix::from_columns(dst->basis().size(), std::move(cols));
}

namespace {

InducedMap finish_induced(const GradedPiece& src, const GradedPiece& dst, IntMatrix matrix) {
    InducedKernel k = kernel_of_induced_map(src.lattice(), dst.lattice(), matrix);
    return InducedMap{std::move(matrix), std::move(k.kernel), std::move(k.image), std::move(k.preimage_basis),
                      std::move(k.kernel_generators)};
}

unsigned degree_of(const Polynomial& f) {
    if (f.is_zero()) return 0;
    auto d = f.homogeneous_degree();
    if (!d) throw HomogeneityError("multiplier is not homogeneous: " + f.to_string());
    return *d;
}

}  // namespace

InducedMap induced_map_in_degree(const RingMapSpec& phi, unsigned m) {
    phi.validate(m);
    return finish_induced(*phi.source().piece(m), *phi.target().piece(m), map_matrix(phi, m));
}

IntMatrix multiplication_matrix(const RingPresentation& p, const Polynomial& f, unsigned m) {
    if (!same_context(f.context(), p.context())) throw ContextError("multiplier is not in the ring's context");
    unsigned d = degree_of(f);
    auto src = p.piece(m);
    auto dst = p.piece(m + d);
    std::vector<SparseVector> cols;
    cols.reserve(src->basis().size());
    for (const auto& mono : src->basis())
        cols.push_back(dst->coordinates(f * Polynomial::term(p.context(), mono)));
    return IntMatrix::from_columns(dst->basis().size(), std::move(cols));
}

InducedMap multiplication_map(const RingPresentation& p, const Polynomial& f, unsigned m) {
    unsigned d = degree_of(f);
    return finish_induced(*p.piece(m), *p.piece(m + d), multiplication_matrix(p, f, m));
}

RingPresentation quotient_presentation(const RingPresentation& p, const Polynomial& f) {
    if (f.is_zero()) return p;
    if (!same_context(f.context(), p.context())) throw ContextError("element is not in the ring's context");
    auto rels = p.relations();
    rels.push_back(f);
    std::string name = p.name().empty() ? std::string() : p.name() + "/(" + f.to_string() + ")";
    return RingPresentation(p.context(), std::move(rels), std::move(name));
}

std::shared_ptr<const GradedPiece> quotient_piece(const RingPresentation& p, const Polynomial& f, unsigned m) {
    return quotient_presentation(p, f).piece(m);
}

TorsionSummary torsion_summary(const RingPresentation& p, unsigned max_degree) {
    TorsionSummary s;
    for (unsigned m = 0; m <= max_degree; ++m) {
        const auto& g = p.piece(m)->structure();
        s.entries.push_back({m, g.invariant_factors, g.torsion_cardinality()});
    }
    return s;
}

}  // namespace chow
