#pragma once

// Dense integer matrices for the small residual problems left after sparse
// echelon reduction. Internal to the library.

#include "chow/zlattice.hpp"

#include <optional>
#include <span>
#include <vector>

namespace chow::detail {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_sparse(const IntMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMatrix to_sparse() const;
    DenseMatrix transpose() const;

    // Elementary operations.
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& q);  // row dst += q*row src
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& q);  // col dst += q*col src
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    std::vector<Integer> row(std::size_t i) const;
    std::vector<Integer> col(std::size_t j) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> a_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

/// Row echelon form H = T * A with T unimodular. Pivots are positive; rows
/// from `rank` on are zero.
struct Echelon {
    DenseMatrix H;
    DenseMatrix T;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

Echelon echelon_with_transform(const DenseMatrix& a);

/// Basis of {w in Z^cols : A w = 0}.
std::vector<std::vector<Integer>> integer_kernel(const DenseMatrix& a);

/// Some integer solution of A w = b, or nullopt when none exists.
std::optional<std::vector<Integer>> solve_integer(const DenseMatrix& a, std::span<const Integer> b);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(DenseMatrix a);

}  // namespace chow::detail
