#pragma once

// Exact linear algebra over the integers: sparse matrices, Hermite and Smith
// normal forms, and finitely generated abelian groups presented as cokernels.

#include "chow/polycore.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chow {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A homomorphism of quotients was requested for a matrix that does not send
/// the source relations into the target relations.
class WellDefinednessError : public std::invalid_argument {
public:
    WellDefinednessError(const std::string& what, std::size_t generator)
        : std::invalid_argument(what), generator_(generator) {}
    /// Index of the first source relation generator whose image escapes.
    std::size_t generator() const { return generator_; }

private:
    std::size_t generator_;
};

/// Sorted (index, value) pairs with no stored zeros.
class SparseVector {
public:
    using Entry = std::pair<std::size_t, Integer>;

    SparseVector() = default;
    static SparseVector from_dense(std::span<const Integer> values);
    static SparseVector unit(std::size_t index, const Integer& value = 1);

    std::span<const Entry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    Integer get(std::size_t index) const;
    /// Index of the first nonzero entry; requires !empty().
    std::size_t leading_index() const { return entries_.front().first; }
    const Integer& leading_value() const { return entries_.front().second; }
    /// One past the largest index present (0 when empty).
    std::size_t extent() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

    /// Appends an entry with index larger than every stored index.
    void push_back(std::size_t index, Integer value);
    void set(std::size_t index, const Integer& value);

    /// this += factor * other.
    void add_scaled(const SparseVector& other, const Integer& factor);
    SparseVector& operator*=(const Integer& c);
    void negate();

    std::vector<Integer> to_dense(std::size_t length) const;

    friend bool operator==(const SparseVector&, const SparseVector&) = default;
    friend SparseVector operator+(SparseVector a, const SparseVector& b) {
        a.add_scaled(b, 1);
        return a;
    }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) {
        a.add_scaled(b, -1);
        return a;
    }

private:
    std::vector<Entry> entries_;
};

/// Integer matrix with sparse column storage.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
    /// Builds a rows x columns.size() matrix from column vectors.
    static IntMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Integer& value);
    const SparseVector& column(std::size_t j) const { return columns_.at(j); }
    const std::vector<SparseVector>& columns() const { return columns_; }

    /// Matrix-vector product; x.extent() must not exceed cols().
    SparseVector apply(const SparseVector& x) const;
    IntMatrix transpose() const;
    bool is_zero() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVector> columns_;
};

/// Free rank plus invariant factors d_1 | d_2 | ... with every d_i >= 2.
struct FGAbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> invariant_factors;

    /// Normalises any list of cyclic orders (entries 0 count as free
    /// summands, entries 1 are dropped) into invariant-factor form.
    static FGAbelianGroup from_cyclic_orders(std::span<const Integer> orders);

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool is_finite() const { return free_rank == 0; }
    /// Order of the torsion subgroup.
    Integer torsion_cardinality() const;
    /// Order of the group; requires is_finite().
    Integer cardinality() const;
    FGAbelianGroup torsion_part() const { return {0, invariant_factors}; }

    /// "0", "Z", "Z^2 + Z/2 + Z/2", ...
    std::string to_string() const;

    friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;
};

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b);

/// Row-style Hermite normal form of the lattice spanned by `generators`:
/// echelon rows with positive pivots and entries above each pivot reduced
/// into [0, pivot). Zero rows are dropped.
std::vector<SparseVector> hermite_basis(std::vector<SparseVector> generators);

/// Result of smith_normal_form: U * M * V = D.
struct SmithForm {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;
    /// Inverse of U; maps structure coordinates back to ambient ones.
    IntMatrix U_inverse;
    /// Diagonal of D up to min(rows, cols), nonnegative, divisibility chain.
    std::vector<Integer> diagonal;
    std::size_t rank = 0;
};

/// Smith normal form with unimodular transforms. The pivot at every stage is
/// the nonzero entry of least absolute value, ties broken by row then column.
SmithForm smith_normal_form(const IntMatrix& m);

/// Verifies U*M*V == D, unimodularity of U and V and the divisibility chain.
/// Returns an empty string on success, a description otherwise.
std::string check_smith_form(const IntMatrix& m, const SmithForm& s);

/// Coordinates of Z^a / L adapted to its invariant-factor decomposition.
/// Structure coordinates list the free summands first, then the torsion
/// summands in invariant-factor order.
class CokernelDecomposition {
public:
    CokernelDecomposition(std::size_t ambient_rank, const std::vector<SparseVector>& generators);

    const FGAbelianGroup& group() const { return group_; }
    std::size_t ambient_rank() const { return ambient_; }
    std::size_t lattice_rank() const { return lattice_rank_; }
    std::size_t coordinate_count() const { return modulus_.size(); }
    /// 0 for a free coordinate, the invariant factor for a torsion one.
    const Integer& modulus(std::size_t i) const { return modulus_.at(i); }
    std::span<const Integer> moduli() const { return modulus_; }

    /// Structure coordinates of x + L, torsion entries reduced into [0, d).
    std::vector<Integer> project(const SparseVector& x) const;
    /// An ambient representative of the given structure coordinates.
    SparseVector representative(std::span<const Integer> coords) const;
    /// Representative of the i-th structure generator.
    const SparseVector& generator(std::size_t i) const { return lifts_.at(i); }
    bool contains(const SparseVector& x) const;

    /// Echelon basis of L (reduced at unit pivots).
    const std::vector<SparseVector>& lattice_basis() const { return basis_; }

private:
    std::size_t ambient_ = 0;
    std::size_t lattice_rank_ = 0;
    FGAbelianGroup group_;
    std::vector<SparseVector> basis_;
    // unit-pivot rows: x_j is eliminated by x -= x_j * row.
    std::vector<std::size_t> unit_pivot_col_;
    std::vector<std::size_t> unit_row_;
    std::vector<char> is_unit_col_;
    std::vector<std::size_t> residual_cols_;  // ambient indices of residual coordinates
    std::vector<std::size_t> residual_pos_;   // ambient index -> residual position
    std::vector<SparseVector> proj_rows_;     // over residual positions
    std::vector<SparseVector> lifts_;         // ambient representatives
    std::vector<Integer> modulus_;
};

/// Z^ambient_rank / L with L the span of the relation generators.
class QuotientPresentation {
public:
    QuotientPresentation() : QuotientPresentation(0, {}) {}
    QuotientPresentation(std::size_t ambient_rank, std::vector<SparseVector> generators);
    /// L spanned by the columns of `relations` (rows = ambient_rank).
    static QuotientPresentation from_matrix(const IntMatrix& relations);

    std::size_t ambient_rank() const { return ambient_; }
    const std::vector<SparseVector>& generators() const;
    IntMatrix relation_generators() const;

    /// Same ambient space, extra generators appended after the existing ones.
    QuotientPresentation with_generators(const std::vector<SparseVector>& extra) const;

    /// Lazily computed, cached and shared between copies; thread-safe.
    const CokernelDecomposition& decomposition() const;

private:
    struct State;
    std::size_t ambient_ = 0;
    std::shared_ptr<State> state_;
};

/// Isomorphism type of Z^a / L.
FGAbelianGroup cokernel_structure(const QuotientPresentation& q);

/// Smallest N >= 1 with N*x in L; nullopt when x has infinite order.
std::optional<Integer> element_order_in_quotient(const QuotientPresentation& q,
                                                 const SparseVector& x);
std::optional<Integer> element_order_in_quotient(const QuotientPresentation& q,
                                                 std::span<const Integer> x);

struct InducedKernel {
    FGAbelianGroup kernel;
    FGAbelianGroup image;
    /// Basis of the preimage lattice {x : Mx in L_dst} in source ambient coordinates.
    std::vector<SparseVector> preimage_basis;
    /// Representatives of the invariant-factor generators of the kernel, in
    /// source ambient coordinates (free generators first).
    std::vector<SparseVector> kernel_generators;
};

/// Kernel and image of the map Z^a/L_src -> Z^b/L_dst induced by M (b x a).
/// Throws DimensionError or WellDefinednessError.
InducedKernel kernel_of_induced_map(const QuotientPresentation& src, const QuotientPresentation& dst,
                                    const IntMatrix& m);

/// Structure of A/B for lattices B within A, both given by generators.
/// Throws std::invalid_argument if B is not contained in A.
FGAbelianGroup subquotient_structure(std::size_t ambient_rank, const std::vector<SparseVector>& a,
                                     const std::vector<SparseVector>& b);

}  // namespace chow
