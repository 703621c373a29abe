#pragma once

// Finitely presented graded rings over Z, handled one degree at a time: each
// graded piece is the cokernel of the lattice spanned by relation multiples.

#include "chow/polycore.hpp"
#include "chow/zlattice.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chow {

/// A relation or element that must be homogeneous is not.
class HomogeneityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A ring map does not kill some source relation.
class IllDefinedMapError : public std::runtime_error {
public:
    IllDefinedMapError(const std::string& what, std::size_t relation, std::string image)
        : std::runtime_error(what), relation_(relation), image_(std::move(image)) {}
    std::size_t relation() const { return relation_; }
    /// Image of the offending relation, printed in the target context.
    const std::string& image() const { return image_; }

private:
    std::size_t relation_;
    std::string image_;
};

class GradedPiece;

/// Graded variables plus homogeneous relations of positive degree. Copies
/// share one memo of computed graded pieces.
class RingPresentation {
public:
    RingPresentation(ContextPtr ctx, std::vector<Polynomial> relations, std::string name = {});

    const ContextPtr& context() const { return state_->ctx; }
    const std::vector<Polynomial>& relations() const { return state_->relations; }
    const std::string& name() const { return state_->name; }

    /// Memoised graded piece in degree m.
    std::shared_ptr<const GradedPiece> piece(unsigned m) const;

private:
    struct State {
        ContextPtr ctx;
        std::vector<Polynomial> relations;
        std::string name;
        std::mutex mutex;
        std::map<unsigned, std::shared_ptr<const GradedPiece>> pieces;
    };
    std::shared_ptr<State> state_;
};

/// Degree-m piece: monomial basis, relation lattice and the resulting group.
class GradedPiece {
public:
    GradedPiece(const RingPresentation& ring, unsigned m);

    unsigned degree() const { return degree_; }
    const ContextPtr& context() const { return ctx_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    std::optional<std::size_t> index_of(const Monomial& m) const;
    const QuotientPresentation& lattice() const { return lattice_; }
    const CokernelDecomposition& decomposition() const { return lattice_.decomposition(); }
    const FGAbelianGroup& structure() const { return decomposition().group(); }

    /// Monomial coordinates of f; f must be zero or homogeneous of this degree.
    SparseVector coordinates(const Polynomial& f) const;
    Polynomial to_polynomial(const SparseVector& x) const;

    /// Structure coordinates (free first, then torsion reduced mod d).
    std::vector<Integer> class_of(const SparseVector& x) const { return decomposition().project(x); }
    std::vector<Integer> class_of(const Polynomial& f) const { return class_of(coordinates(f)); }
    bool is_zero(const SparseVector& x) const { return decomposition().contains(x); }
    bool is_zero(const Polynomial& f) const { return is_zero(coordinates(f)); }
    /// Additive order of the class; nullopt for infinite order.
    std::optional<Integer> order_of(const SparseVector& x) const {
        return element_order_in_quotient(lattice_, x);
    }

    /// A representative polynomial for structure coordinates.
    Polynomial representative(std::span<const Integer> coords) const;
    /// Ambient representatives of the torsion summand generators.
    std::vector<SparseVector> torsion_generators() const;
    std::vector<Integer> torsion_orders() const;

private:
    ContextPtr ctx_;
    unsigned degree_;
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t> index_;
    QuotientPresentation lattice_;
};

std::shared_ptr<const GradedPiece> graded_piece(const RingPresentation& p, unsigned m);

/// Structure coordinates of a homogeneous element (the zero polynomial is
/// taken in degree 0 unless a degree is given).
std::vector<Integer> element_class(const RingPresentation& p, const Polynomial& f);
std::vector<Integer> element_class(const RingPresentation& p, const Polynomial& f, unsigned m);

/// A graded ring map given by images of the source variables.
class RingMapSpec {
public:
    /// images[i] is the image of source variable i. Throws SubstitutionError
    /// on a missing, inhomogeneous or wrong-degree image.
    RingMapSpec(RingPresentation source, RingPresentation target, std::vector<Polynomial> images);
    static RingMapSpec from_names(RingPresentation source, RingPresentation target,
                                  const std::map<std::string, Polynomial>& images);

    const RingPresentation& source() const { return state_->source; }
    const RingPresentation& target() const { return state_->target; }
    const std::vector<Polynomial>& images() const { return state_->subst.images(); }

    Polynomial apply(const Polynomial& f) const { return state_->subst.apply(f); }
    Polynomial apply(const Monomial& m) const { return state_->subst.apply(m); }

    /// Checks that every source relation of degree <= max_degree maps to
    /// zero in the target. Throws IllDefinedMapError naming the relation.
    void validate(unsigned max_degree) const;

    /// `second` after `first`.
    friend RingMapSpec compose(const RingMapSpec& second, const RingMapSpec& first);

private:
    struct State {
        State(RingPresentation src, RingPresentation tgt, std::vector<Polynomial> images)
            : source(std::move(src)), target(std::move(tgt)),
              subst(source.context(), target.context(), std::move(images)) {}
        RingPresentation source;
        RingPresentation target;
        Substitution subst;
        std::mutex mutex;
        std::optional<unsigned> validated_through;
    };
    std::shared_ptr<State> state_;
};

struct InducedMap {
    /// target-basis x source-basis matrix in monomial coordinates.
    IntMatrix matrix;
    FGAbelianGroup kernel;
    FGAbelianGroup image;
    /// Basis of {x : Mx in L_target} in source monomial coordinates.
    std::vector<SparseVector> kernel_lattice_basis;
    /// Source representatives of the kernel's invariant-factor generators.
    std::vector<SparseVector> kernel_generators;
};

/// The map of degree-m pieces induced by phi (validated through degree m).
InducedMap induced_map_in_degree(const RingMapSpec& phi, unsigned m);

/// Matrix of phi on degree-m basis monomials, without the kernel computation.
IntMatrix map_matrix(const RingMapSpec& phi, unsigned m);

/// x -> f*x from degree m to degree m + deg f.
InducedMap multiplication_map(const RingPresentation& p, const Polynomial& f, unsigned m);
IntMatrix multiplication_matrix(const RingPresentation& p, const Polynomial& f, unsigned m);

/// P with f appended to the relations (P itself when f is zero).
RingPresentation quotient_presentation(const RingPresentation& p, const Polynomial& f);
std::shared_ptr<const GradedPiece> quotient_piece(const RingPresentation& p, const Polynomial& f, unsigned m);

struct TorsionEntry {
    unsigned degree = 0;
    std::vector<Integer> invariant_factors;
    Integer cardinality = 1;
};

struct TorsionSummary {
    std::vector<TorsionEntry> entries;
};

TorsionSummary torsion_summary(const RingPresentation& p, unsigned max_degree);

}  // namespace chow
