#pragma once

// Reference implementations used only by the tests. Nothing here calls into
// the library; the point is to have a second, deliberately naive, route to
// the same answers.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace oracle {

using Int = mpz_class;
using Matrix = std::vector<std::vector<Int>>;  // row-major

struct Group {
    std::size_t free_rank = 0;
    std::vector<Int> factors;  // invariant factors >= 2, divisibility order

    std::string str() const;
    bool operator==(const Group& o) const { return free_rank == o.free_rank && factors == o.factors; }
};

Matrix zeros(std::size_t rows, std::size_t cols);

/// Rank over Q by fraction-free elimination.
std::size_t rank(Matrix a);
Int det(Matrix a);

/// Diagonal of the Smith form by row/column Euclid steps (no pivot search).
std::vector<Int> smith_diagonal(Matrix a);
/// Invariant factors as ratios of gcds of k x k minors. Exponential; tiny inputs only.
std::vector<Int> determinantal_invariants(const Matrix& a);

/// Z^rows / (column span of a).
Group cokernel(const Matrix& a, std::size_t rows);
Group cokernel_determinantal(const Matrix& a, std::size_t rows);
/// Same group, found by counting homomorphisms to Z/q, i.e. by enumerating
/// the box (Z/q)^rows for the relevant prime powers q. rows <= 3 or so.
Group cokernel_by_enumeration(const Matrix& a, std::size_t rows);

/// x in the column span of a, decided by comparing cokernels (a finitely
/// generated abelian group is never isomorphic to a proper quotient).
bool in_span(const Matrix& a, const std::vector<Int>& x);

/// Pascal-triangle binomial, 0 outside 0 <= b <= a.
Int binom(long a, long b);

/// Exponent vectors with sum(e_i * degrees[i]) == m, by scanning a box.
std::vector<std::vector<unsigned>> exponent_vectors(const std::vector<unsigned>& degrees, unsigned m);
std::size_t count_monomials(const std::vector<unsigned>& degrees, unsigned m);

/// Monomials of degree m in c1..c_{2n} involving some c_i with i odd.
std::size_t count_with_odd_chern(unsigned n, unsigned m);

/// The degree-m relation matrix of the GO presentation built straight from
/// the defining formula. Variables: l, c1..c2n. Columns are relation multiples.
struct GoPiece {
    std::vector<std::vector<unsigned>> basis;
    Matrix relations;  // basis.size() rows
};
GoPiece go_piece(unsigned n, unsigned m);
/// Same with l added as a relation (the quotient by l).
GoPiece go_piece_mod_lambda(unsigned n, unsigned m);

/// A polynomial lies in (2 c_odd) in Z[c1..ck] iff monomials with an odd
/// index have even coefficients and the others have coefficient 0.
bool in_two_c_odd_ideal(const std::vector<std::pair<std::vector<unsigned>, Int>>& terms);

}  // namespace oracle
