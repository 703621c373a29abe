#include "chow/zlattice.hpp"

#include "dense.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace chow {

using detail::DenseMatrix;

// ------------------------------------------------------------ SparseVector

SparseVector SparseVector::from_dense(std::span<const Integer> values) {
    SparseVector v;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0) v.entries_.emplace_back(i, values[i]);
    return v;
}

SparseVector SparseVector::unit(std::size_t index, const Integer& value) {
    SparseVector v;
    if (value != 0) v.entries_.emplace_back(index, value);
    return v;
}

Integer SparseVector::get(std::size_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    return (it != entries_.end() && it->first == index) ? it->second : Integer(0);
}

void SparseVector::push_back(std::size_t index, Integer value) {
    if (!entries_.empty() && entries_.back().first >= index)
        throw std::invalid_argument("SparseVector::push_back: indices must increase");
    if (value != 0) entries_.emplace_back(index, std::move(value));
}

void SparseVector::set(std::size_t index, const Integer& value) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) {
        if (value == 0)
            entries_.erase(it);
        else
            it->second = value;
    } else if (value != 0) {
        entries_.emplace(it, index, value);
    }
}

void SparseVector::add_scaled(const SparseVector& other, const Integer& factor) {
    if (factor == 0 || other.entries_.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == entries_.end() || b->first < a->first) {
            out.emplace_back(b->first, factor * b->second);
            ++b;
        } else {
            mpz_addmul(a->second.get_mpz_t(), factor.get_mpz_t(), b->second.get_mpz_t());
            if (a->second != 0) out.push_back(std::move(*a));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

SparseVector& SparseVector::operator*=(const Integer& c) {
    if (c == 0) {
        entries_.clear();
        return *this;
    }
    for (auto& e : entries_) e.second *= c;
    return *this;
}

void SparseVector::negate() {
    for (auto& e : entries_) e.second = -e.second;
}

std::vector<Integer> SparseVector::to_dense(std::size_t length) const {
    if (extent() > length) throw DimensionError("sparse vector longer than requested length");
    std::vector<Integer> d(length);
    for (const auto& [i, v] : entries_) d[i] = v;
    return d;
}

// --------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVector::unit(i);
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            if (rows[i][j] != 0) m.columns_[j].push_back(i, Integer(rows[i][j]));
    }
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, std::vector<SparseVector> columns) {
    for (const auto& c : columns)
        if (c.extent() > rows) throw DimensionError("column longer than matrix height");
    IntMatrix m(rows, columns.size());
    m.columns_ = std::move(columns);
    return m;
}

Integer IntMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
    return columns_[j].get(i);
}

void IntMatrix::set(std::size_t i, std::size_t j, const Integer& value) {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
    columns_[j].set(i, value);
}

SparseVector IntMatrix::apply(const SparseVector& x) const {
    if (x.extent() > cols_) throw DimensionError("vector longer than matrix width");
    SparseVector y;
    for (const auto& [j, v] : x.entries()) y.add_scaled(columns_[j], v);
    return y;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : columns_[j].entries()) t.columns_[i].push_back(j, v);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) c.columns_[j] = a.apply(b.columns_[j]);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference: shapes differ");
    IntMatrix c = a;
    for (std::size_t j = 0; j < a.cols_; ++j) c.columns_[j].add_scaled(b.columns_[j], -1);
    return c;
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        out << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << at(i, j).get_str();
    }
    out << ']';
    return out.str();
}

// ---------------------------------------------------------- FGAbelianGroup

FGAbelianGroup FGAbelianGroup::from_cyclic_orders(std::span<const Integer> orders) {
    FGAbelianGroup g;
    std::vector<Integer> finite;
    for (const auto& o : orders) {
        if (o == 0)
            ++g.free_rank;
        else if (abs(o) != 1)
            finite.push_back(abs(o));
    }
    // Pairwise (gcd, lcm) replacement settles into a divisibility chain.
    for (std::size_t i = 0; i < finite.size(); ++i)
        for (std::size_t j = i + 1; j < finite.size(); ++j) {
            Integer gg = gcd(finite[i], finite[j]);
            Integer ll = lcm(finite[i], finite[j]);
            finite[i] = gg;
            finite[j] = ll;
        }
    for (auto& f : finite)
        if (f != 1) g.invariant_factors.push_back(f);
    return g;
}

Integer FGAbelianGroup::torsion_cardinality() const {
    Integer c = 1;
    for (const auto& d : invariant_factors) c *= d;
    return c;
}

Integer FGAbelianGroup::cardinality() const {
    if (free_rank != 0) throw std::logic_error("cardinality of an infinite group");
    return torsion_cardinality();
}

std::string FGAbelianGroup::to_string() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.emplace_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& d : invariant_factors) parts.push_back("Z/" + d.get_str());
    if (parts.empty()) return "0";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b) {
    std::vector<Integer> orders(a.free_rank + b.free_rank, Integer(0));
    orders.insert(orders.end(), a.invariant_factors.begin(), a.invariant_factors.end());
    orders.insert(orders.end(), b.invariant_factors.begin(), b.invariant_factors.end());
    return FGAbelianGroup::from_cyclic_orders(orders);
}

// ------------------------------------------------------------------ Hermite

namespace {

// Echelon rows keyed by pivot column, kept reduced: every entry sitting in
// another row's pivot column lies in [0, that pivot).
class ReducedEchelon {
public:
    void insert(SparseVector v) {
        reduce(v, 0);
        while (!v.empty()) {
            std::size_t j = v.leading_index();
            auto it = rows_.find(j);
            if (it == rows_.end()) {
                if (v.leading_value() < 0) v.negate();
                rows_.emplace(j, std::move(v));
                settle(j);
                return;
            }
            SparseVector& row = it->second;
            const Integer p = row.leading_value();
            const Integer a = v.leading_value();
            if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
                v.add_scaled(row, Integer(-a / p));
            } else {
                // s*p + t*a = g: the stored row becomes the gcd combination and
                // the leftover, whose leading entry cancels, is reduced further.
                mpz_gcdext(g_.get_mpz_t(), s_.get_mpz_t(), t_.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
                SparseVector combined = row;
                combined *= s_;
                combined.add_scaled(v, t_);
                SparseVector rest = v;
                rest *= Integer(p / g_);
                rest.add_scaled(row, Integer(-a / g_));
                row = std::move(combined);
                settle(j);
                v = std::move(rest);
            }
            reduce(v, 0);
        }
    }

    std::vector<SparseVector> take() {
        std::vector<SparseVector> out;
        out.reserve(rows_.size());
        for (auto& [j, row] : rows_) out.push_back(std::move(row));
        return out;
    }

private:
    // Reduces every entry of v in a pivot column >= from into [0, pivot).
    void reduce(SparseVector& v, std::size_t from) {
        std::size_t k = from;
        while (true) {
            auto entries = v.entries();
            auto it = std::find_if(entries.begin(), entries.end(),
                                   [&](const SparseVector::Entry& e) { return e.first >= k && rows_.count(e.first); });
            if (it == entries.end()) return;
            const std::size_t col = it->first;
            const SparseVector& row = rows_.find(col)->second;
            mpz_fdiv_q(q_.get_mpz_t(), it->second.get_mpz_t(), row.leading_value().get_mpz_t());
            if (q_ != 0) v.add_scaled(row, Integer(-q_));
            k = col + 1;
        }
    }

    // Row j changed: normalise its sign, reduce its tail, then re-reduce the
    // rows above it from column j on (subtracting row j disturbs their later
    // pivot columns too).
    void settle(std::size_t j) {
        SparseVector& row = rows_.at(j);
        if (row.leading_value() < 0) row.negate();
        reduce(row, j + 1);
        for (auto& [k, other] : rows_) {
            if (k >= j) break;
            reduce(other, j);
        }
    }

    std::map<std::size_t, SparseVector> rows_;
    Integer g_, s_, t_, q_;
};

}  // namespace

std::vector<SparseVector> hermite_basis(std::vector<SparseVector> generators) {
    ReducedEchelon e;
    for (auto& gen : generators) e.insert(std::move(gen));
    return e.take();
}

// -------------------------------------------------------------------- Smith

namespace {

struct SmithTracker {
    DenseMatrix A, U, Uinv, V, Vinv;

    void row_add(std::size_t dst, std::size_t src, const Integer& q) {
        A.add_row_multiple(dst, src, q);
        U.add_row_multiple(dst, src, q);
        Uinv.add_col_multiple(src, dst, -q);
    }
    void col_add(std::size_t dst, std::size_t src, const Integer& q) {
        A.add_col_multiple(dst, src, q);
        V.add_col_multiple(dst, src, q);
        Vinv.add_row_multiple(src, dst, -q);
    }
    void row_swap(std::size_t i, std::size_t j) {
        A.swap_rows(i, j);
        U.swap_rows(i, j);
        Uinv.swap_cols(i, j);
    }
    void col_swap(std::size_t i, std::size_t j) {
        A.swap_cols(i, j);
        V.swap_cols(i, j);
        Vinv.swap_rows(i, j);
    }
    void row_negate(std::size_t i) {
        A.negate_row(i);
        U.negate_row(i);
        Uinv.negate_col(i);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    SmithTracker tr{DenseMatrix::from_sparse(m), DenseMatrix::identity(R), DenseMatrix::identity(R),
                    DenseMatrix::identity(C), DenseMatrix::identity(C)};
    auto& A = tr.A;
    Integer q;
    std::size_t t = 0;
    for (; t < std::min(R, C); ++t) {
        // Least |entry| of the trailing block, first in row-major order.
        std::size_t pi = R, pj = C;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (A(i, j) != 0 && (pi == R || abs(A(i, j)) < abs(A(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == R) break;
        tr.row_swap(t, pi);
        tr.col_swap(t, pj);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (A(i, t) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
                tr.row_add(i, t, -q);
                if (A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (A(t, j) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
                tr.col_add(j, t, -q);
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder is now smaller than the pivot; move the least one in.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < R; ++i)
                    if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) bi = i, bj = t;
                for (std::size_t j = t + 1; j < C; ++j)
                    if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) bi = t, bj = j;
                tr.row_swap(t, bi);
                tr.col_swap(t, bj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder.
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (A(i, j) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == R) break;
            tr.row_add(t, bad, 1);
        }
        if (A(t, t) < 0) tr.row_negate(t);
    }

    SmithForm s;
    s.rank = t;
    s.diagonal.resize(std::min(R, C));
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) s.diagonal[i] = A(i, i);
    s.D = A.to_sparse();
    s.U = tr.U.to_sparse();
    s.V = tr.V.to_sparse();
    s.U_inverse = tr.Uinv.to_sparse();
    return s;
}

std::string check_smith_form(const IntMatrix& m, const SmithForm& s) {
    if (s.U.rows() != m.rows() || s.U.cols() != m.rows()) return "U has wrong shape";
    if (s.V.rows() != m.cols() || s.V.cols() != m.cols()) return "V has wrong shape";
    if (!(s.U * m * s.V == s.D)) return "U*M*V differs from D";
    for (std::size_t j = 0; j < s.D.cols(); ++j)
        for (const auto& [i, v] : s.D.column(j).entries())
            if (i != j) return "D is not diagonal";
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
        if (s.diagonal[i] < 0) return "negative diagonal entry";
        if (i + 1 < s.diagonal.size()) {
            const Integer& a = s.diagonal[i];
            const Integer& b = s.diagonal[i + 1];
            bool divides = (a == 0) ? (b == 0) : mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
            if (!divides) return "divisibility chain broken at " + std::to_string(i);
        }
    }
    if (!(s.U * s.U_inverse == IntMatrix::identity(m.rows()))) return "U_inverse is not the inverse of U";
    auto unimodular = [](const IntMatrix& x) {
        Integer d = detail::determinant(DenseMatrix::from_sparse(x));
        return abs(d) == 1;
    };
    if (!unimodular(s.U)) return "U is not unimodular";
    if (!unimodular(s.V)) return "V is not unimodular";
    return {};
}

// --------------------------------------------------- CokernelDecomposition

CokernelDecomposition::CokernelDecomposition(std::size_t ambient_rank,
                                             const std::vector<SparseVector>& generators)
    : ambient_(ambient_rank) {
    for (const auto& g : generators)
        if (g.extent() > ambient_) throw DimensionError("relation generator longer than ambient rank");
    basis_ = hermite_basis(generators);
    lattice_rank_ = basis_.size();

    is_unit_col_.assign(ambient_, 0);
    std::vector<const SparseVector*> residual_rows;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (basis_[k].leading_value() == 1) {
            unit_pivot_col_.push_back(basis_[k].leading_index());
            unit_row_.push_back(k);
            is_unit_col_[basis_[k].leading_index()] = 1;
        } else {
            residual_rows.push_back(&basis_[k]);
        }
    }
    residual_pos_.assign(ambient_, ambient_);
    for (std::size_t j = 0; j < ambient_; ++j)
        if (!is_unit_col_[j]) {
            residual_pos_[j] = residual_cols_.size();
            residual_cols_.push_back(j);
        }

    // Reduced echelon form leaves the non-unit rows supported on residual columns.
    const std::size_t S = residual_cols_.size();
    std::vector<SparseVector> cols;
    cols.reserve(residual_rows.size());
    for (const auto* row : residual_rows) {
        SparseVector c;
        for (const auto& [j, v] : row->entries()) c.push_back(residual_pos_[j], v);
        cols.push_back(std::move(c));
    }
    IntMatrix residual = IntMatrix::from_columns(S, std::move(cols));
    SmithForm sf = smith_normal_form(residual);
#ifdef CHOW_VERIFY_SNF
    if (auto err = check_smith_form(residual, sf); !err.empty())
        throw std::logic_error("Smith normal form postcondition failed: " + err);
#endif
    lattice_rank_ = unit_row_.size() + sf.rank;

    std::vector<std::size_t> order;
    for (std::size_t i = sf.rank; i < S; ++i) order.push_back(i);
    for (std::size_t i = 0; i < sf.rank; ++i)
        if (sf.diagonal[i] != 1) order.push_back(i);

    IntMatrix Ut = sf.U.transpose();  // columns of U^T are rows of U
    std::vector<Integer> orders;
    for (std::size_t i : order) {
        proj_rows_.push_back(Ut.column(i));
        SparseVector lift;
        for (const auto& [pos, v] : sf.U_inverse.column(i).entries()) lift.push_back(residual_cols_[pos], v);
        lifts_.push_back(std::move(lift));
        modulus_.push_back(i < sf.rank ? sf.diagonal[i] : Integer(0));
        orders.push_back(modulus_.back());
    }
    group_ = FGAbelianGroup::from_cyclic_orders(orders);
}

std::vector<Integer> CokernelDecomposition::project(const SparseVector& x) const {
    if (x.extent() > ambient_) throw DimensionError("vector longer than ambient rank");
    // Eliminate unit-pivot coordinates, leaving a vector on residual columns.
    SparseVector reduced = x;
    for (std::size_t k = 0; k < unit_row_.size(); ++k) {
        Integer c = reduced.get(unit_pivot_col_[k]);
        if (c != 0) reduced.add_scaled(basis_[unit_row_[k]], -c);
    }
    std::vector<Integer> res(residual_cols_.size());
    for (const auto& [j, v] : reduced.entries()) res[residual_pos_[j]] = v;

    std::vector<Integer> coords(modulus_.size());
    for (std::size_t k = 0; k < proj_rows_.size(); ++k) {
        Integer acc = 0;
        for (const auto& [pos, v] : proj_rows_[k].entries())
            if (res[pos] != 0) mpz_addmul(acc.get_mpz_t(), v.get_mpz_t(), res[pos].get_mpz_t());
        if (modulus_[k] != 0) mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), modulus_[k].get_mpz_t());
        coords[k] = std::move(acc);
    }
    return coords;
}

SparseVector CokernelDecomposition::representative(std::span<const Integer> coords) const {
    if (coords.size() != modulus_.size()) throw DimensionError("wrong number of structure coordinates");
    SparseVector x;
    for (std::size_t k = 0; k < coords.size(); ++k) x.add_scaled(lifts_[k], coords[k]);
    return x;
}

bool CokernelDecomposition::contains(const SparseVector& x) const {
    auto c = project(x);
    return std::all_of(c.begin(), c.end(), [](const Integer& v) { return v == 0; });
}

// ---------------------------------------------------- QuotientPresentation

struct QuotientPresentation::State {
    std::vector<SparseVector> generators;
    std::once_flag once;
    std::unique_ptr<CokernelDecomposition> decomposition;
};

const std::vector<SparseVector>& QuotientPresentation::generators() const { return state_->generators; }


QuotientPresentation::QuotientPresentation(std::size_t ambient_rank, std::vector<SparseVector> generators)
    : ambient_(ambient_rank), state_(std::make_shared<State>()) {
    for (const auto& g : generators)
        if (g.extent() > ambient_rank) throw DimensionError("relation generator longer than ambient rank");
    state_->generators = std::move(generators);
}

QuotientPresentation QuotientPresentation::from_matrix(const IntMatrix& relations) {
    return {relations.rows(), relations.columns()};
}

IntMatrix QuotientPresentation::relation_generators() const {
    return IntMatrix::from_columns(ambient_, state_->generators);
}

QuotientPresentation QuotientPresentation::with_generators(const std::vector<SparseVector>& extra) const {
    auto gens = state_->generators;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return {ambient_, std::move(gens)};
}

const CokernelDecomposition& QuotientPresentation::decomposition() const {
    std::call_once(state_->once, [this] {
        state_->decomposition = std::make_unique<CokernelDecomposition>(ambient_, state_->generators);
    });
    return *state_->decomposition;
}

FGAbelianGroup cokernel_structure(const QuotientPresentation& q) { return q.decomposition().group(); }

std::optional<Integer> element_order_in_quotient(const QuotientPresentation& q, const SparseVector& x) {
    if (x.extent() > q.ambient_rank()) throw DimensionError("element longer than ambient rank");
    const auto& dec = q.decomposition();
    auto coords = dec.project(x);
    // Free coordinates vanish exactly when x lies in L tensor Q, i.e. when
    // adjoining x does not raise the rank.
    Integer order = 1;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        const Integer& d = dec.modulus(k);
        if (d == 0) {
            if (coords[k] != 0) return std::nullopt;
            continue;
        }
        Integer o = d / gcd(coords[k], d);
        order = lcm(order, o);
    }
    return order;
}

std::optional<Integer> element_order_in_quotient(const QuotientPresentation& q, std::span<const Integer> x) {
    if (x.size() != q.ambient_rank()) throw DimensionError("element length differs from ambient rank");
    return element_order_in_quotient(q, SparseVector::from_dense(x));
}

// ------------------------------------------------------------ subquotients

namespace {

struct Subquotient {
    std::vector<SparseVector> a_basis;
    std::unique_ptr<CokernelDecomposition> decomposition;

    /// Generator i of A/B in ambient coordinates.
    SparseVector generator(std::size_t i) const {
        SparseVector x;
        for (const auto& [k, c] : decomposition->generator(i).entries()) x.add_scaled(a_basis[k], c);
        return x;
    }
};

/// Coefficients of b in an echelon basis, or nullopt if b is outside its span.
std::optional<SparseVector> echelon_coefficients(const std::vector<SparseVector>& basis, SparseVector b) {
    SparseVector coeffs;
    Integer q, r;
    for (std::size_t k = 0; k < basis.size() && !b.empty(); ++k) {
        std::size_t p = basis[k].leading_index();
        if (b.leading_index() < p) return std::nullopt;
        Integer e = b.get(p);
        if (e == 0) continue;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), basis[k].leading_value().get_mpz_t());
        if (r != 0) return std::nullopt;
        b.add_scaled(basis[k], -q);
        coeffs.push_back(k, q);
    }
    if (!b.empty()) return std::nullopt;
    return coeffs;
}

Subquotient make_subquotient(const std::vector<SparseVector>& a, const std::vector<SparseVector>& b) {
    Subquotient s;
    s.a_basis = hermite_basis(a);
    std::vector<SparseVector> rel;
    rel.reserve(b.size());
    for (const auto& v : b) {
        auto c = echelon_coefficients(s.a_basis, v);
        if (!c) throw std::invalid_argument("subquotient: B is not contained in A");
        rel.push_back(std::move(*c));
    }
    s.decomposition = std::make_unique<CokernelDecomposition>(s.a_basis.size(), rel);
    return s;
}

}  // namespace

FGAbelianGroup subquotient_structure(std::size_t ambient_rank, const std::vector<SparseVector>& a,
                                     const std::vector<SparseVector>& b) {
    for (const auto& v : a)
        if (v.extent() > ambient_rank) throw DimensionError("generator longer than ambient rank");
    return make_subquotient(a, b).decomposition->group();
}

// ----------------------------------------------------------- induced maps

InducedKernel kernel_of_induced_map(const QuotientPresentation& src, const QuotientPresentation& dst,
                                    const IntMatrix& m) {
    if (m.cols() != src.ambient_rank() || m.rows() != dst.ambient_rank())
        throw DimensionError("map matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             ", expected " + std::to_string(dst.ambient_rank()) + "x" +
                             std::to_string(src.ambient_rank()));
    const auto& ds = src.decomposition();
    const auto& dt = dst.decomposition();
    for (std::size_t k = 0; k < src.generators().size(); ++k)
        if (!dt.contains(m.apply(src.generators()[k])))
            throw WellDefinednessError(
                "map does not send source relation " + std::to_string(k) + " into the target relations", k);

    const std::size_t ss = ds.coordinate_count();
    const std::size_t st = dt.coordinate_count();
    std::vector<std::size_t> tgt_torsion;
    for (std::size_t i = 0; i < st; ++i)
        if (dt.modulus(i) != 0) tgt_torsion.push_back(i);

    // [Phi | D_t]: y is in the preimage iff Phi y + D_t z = 0 for some z.
    DenseMatrix stacked(st, ss + tgt_torsion.size());
    std::vector<SparseVector> phi_cols(ss);
    for (std::size_t j = 0; j < ss; ++j) {
        auto img = dt.project(m.apply(ds.generator(j)));
        phi_cols[j] = SparseVector::from_dense(img);
        for (std::size_t i = 0; i < st; ++i) stacked(i, j) = img[i];
    }
    for (std::size_t k = 0; k < tgt_torsion.size(); ++k) stacked(tgt_torsion[k], ss + k) = dt.modulus(tgt_torsion[k]);

    std::vector<SparseVector> preimage;
    for (const auto& w : detail::integer_kernel(stacked)) {
        SparseVector y;
        for (std::size_t j = 0; j < ss; ++j)
            if (w[j] != 0) y.push_back(j, w[j]);
        if (!y.empty()) preimage.push_back(std::move(y));
    }
    std::vector<SparseVector> src_lattice;
    for (std::size_t j = 0; j < ss; ++j)
        if (ds.modulus(j) != 0) src_lattice.push_back(SparseVector::unit(j, ds.modulus(j)));
    // The preimage always contains the source relations.
    preimage.insert(preimage.end(), src_lattice.begin(), src_lattice.end());

    InducedKernel out;
    Subquotient ker = make_subquotient(preimage, src_lattice);
    out.kernel = ker.decomposition->group();

    auto to_ambient = [&](const SparseVector& y) {
        SparseVector x;
        for (const auto& [j, c] : y.entries()) x.add_scaled(ds.generator(j), c);
        return x;
    };
    std::vector<SparseVector> lifted;
    for (const auto& y : ker.a_basis) lifted.push_back(to_ambient(y));
    lifted.insert(lifted.end(), src.generators().begin(), src.generators().end());
    out.preimage_basis = hermite_basis(std::move(lifted));
    for (std::size_t i = 0; i < ker.decomposition->coordinate_count(); ++i)
        out.kernel_generators.push_back(to_ambient(ker.generator(i)));

    std::vector<SparseVector> tgt_lattice;
    for (std::size_t i : tgt_torsion) tgt_lattice.push_back(SparseVector::unit(i, dt.modulus(i)));
    std::vector<SparseVector> image_gens = phi_cols;
    image_gens.insert(image_gens.end(), tgt_lattice.begin(), tgt_lattice.end());
    out.image = make_subquotient(image_gens, tgt_lattice).decomposition->group();
    return out;
}

}  // namespace chow
