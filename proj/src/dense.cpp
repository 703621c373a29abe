#include "dense.hpp"

#include <utility>

namespace chow::detail {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

DenseMatrix DenseMatrix::from_sparse(const IntMatrix& s) {
    DenseMatrix m(s.rows(), s.cols());
    for (std::size_t j = 0; j < s.cols(); ++j)
        for (const auto& [i, v] : s.column(j).entries()) m(i, j) = v;
    return m;
}

IntMatrix DenseMatrix::to_sparse() const {
    std::vector<SparseVector> cols(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, j) != 0) cols[j].push_back(i, (*this)(i, j));
    return IntMatrix::from_columns(rows_, std::move(cols));
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

void DenseMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    Integer* d = &a_[dst * cols_];
    const Integer* s = &a_[src * cols_];
    for (std::size_t j = 0; j < cols_; ++j)
        if (s[j] != 0) mpz_addmul(d[j].get_mpz_t(), q.get_mpz_t(), s[j].get_mpz_t());
}

void DenseMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) {
        const Integer& s = (*this)(i, src);
        if (s != 0) mpz_addmul((*this)(i, dst).get_mpz_t(), q.get_mpz_t(), s.get_mpz_t());
    }
}

void DenseMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void DenseMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void DenseMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void DenseMatrix::negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
}

std::vector<Integer> DenseMatrix::row(std::size_t i) const {
    return {a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Integer> DenseMatrix::col(std::size_t j) const {
    std::vector<Integer> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("dense multiply: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Integer& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
        }
    return c;
}

Echelon echelon_with_transform(const DenseMatrix& a) {
    Echelon e{a, DenseMatrix::identity(a.rows()), 0, {}};
    auto& H = e.H;
    auto& T = e.T;
    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& q) {
        H.add_row_multiple(dst, src, q);
        T.add_row_multiple(dst, src, q);
    };
    std::size_t r = 0;
    Integer q;
    for (std::size_t j = 0; j < H.cols() && r < H.rows(); ++j) {
        // Euclid down the column until a single nonzero entry remains.
        while (true) {
            std::size_t best = H.rows();
            for (std::size_t i = r; i < H.rows(); ++i)
                if (H(i, j) != 0 && (best == H.rows() || abs(H(i, j)) < abs(H(best, j)))) best = i;
            if (best == H.rows()) break;
            H.swap_rows(r, best);
            T.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < H.rows(); ++i) {
                if (H(i, j) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(r, j).get_mpz_t());
                row_op(i, r, -q);
                if (H(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H(r, j) == 0) continue;
        if (H(r, j) < 0) {
            H.negate_row(r);
            T.negate_row(r);
        }
        e.pivot_cols.push_back(j);
        ++r;
    }
    e.rank = r;
    return e;
}

std::vector<std::vector<Integer>> integer_kernel(const DenseMatrix& a) {
    Echelon e = echelon_with_transform(a.transpose());
    std::vector<std::vector<Integer>> basis;
    for (std::size_t k = e.rank; k < e.T.rows(); ++k) basis.push_back(e.T.row(k));
    return basis;
}

std::optional<std::vector<Integer>> solve_integer(const DenseMatrix& a, std::span<const Integer> b) {
    if (b.size() != a.rows()) throw DimensionError("solve_integer: right-hand side length mismatch");
    // T * A^T = H, so A * T^T = H^T; solve H^T u = b by forward substitution.
    Echelon e = echelon_with_transform(a.transpose());
    std::vector<Integer> rem(b.begin(), b.end());
    std::vector<Integer> u(e.rank);
    Integer r;
    for (std::size_t k = 0; k < e.rank; ++k) {
        std::size_t p = e.pivot_cols[k];
        if (rem[p] == 0) continue;
        mpz_tdiv_qr(u[k].get_mpz_t(), r.get_mpz_t(), rem[p].get_mpz_t(), e.H(k, p).get_mpz_t());
        if (r != 0) return std::nullopt;
        for (std::size_t i = 0; i < rem.size(); ++i)
            if (e.H(k, i) != 0) rem[i] -= u[k] * e.H(k, i);
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    std::vector<Integer> w(a.cols());
    for (std::size_t k = 0; k < e.rank; ++k) {
        if (u[k] == 0) continue;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (e.T(k, i) != 0) w[i] += u[k] * e.T(k, i);
    }
    return w;
}

Integer determinant(DenseMatrix a) {
    if (a.rows() != a.cols()) throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0) ++s;
            if (s == n) return 0;
            a.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace chow::detail
