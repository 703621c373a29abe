#include "oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace oracle {

std::string Group::str() const {
    std::string s;
    if (free_rank == 1) s = "Z";
    if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (const auto& d : factors) s += (s.empty() ? "" : " + ") + ("Z/" + d.get_str());
    return s.empty() ? "0" : s;
}

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, std::vector<Int>(cols, 0)); }

std::size_t rank(Matrix a) {
    if (a.empty()) return 0;
    const std::size_t R = a.size(), C = a[0].size();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && a[p][c] == 0) ++p;
        if (p == R) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

Int det(Matrix a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<Int> smith_diagonal(Matrix a) {
    const std::size_t R = a.size(), C = R ? a[0].size() : 0;
    std::vector<Int> diag;
    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        // First nonzero in column-major order.
        bool found = false;
        for (std::size_t j = t; j < C && !found; ++j)
            for (std::size_t i = t; i < R && !found; ++i)
                if (a[i][j] != 0) {
                    std::swap(a[i], a[t]);
                    for (auto& row : a) std::swap(row[j], row[t]);
                    found = true;
                }
        if (!found) break;
        while (true) {
            for (std::size_t i = t + 1; i < R; ++i)
                while (a[i][t] != 0) {
                    Int q = a[i][t] / a[t][t];
                    for (std::size_t j = t; j < C; ++j) a[i][j] -= q * a[t][j];
                    if (a[i][t] != 0) std::swap(a[i], a[t]);
                }
            bool row_clear = true;
            for (std::size_t j = t + 1; j < C; ++j)
                while (a[t][j] != 0) {
                    Int q = a[t][j] / a[t][t];
                    for (std::size_t i = t; i < R; ++i) a[i][j] -= q * a[i][t];
                    if (a[t][j] != 0) {
                        for (auto& row : a) std::swap(row[j], row[t]);
                        row_clear = false;
                    }
                }
            if (!row_clear) continue;  // column swaps may have refilled column t
            bool col_clear = true;
            for (std::size_t i = t + 1; i < R; ++i) col_clear = col_clear && a[i][t] == 0;
            if (!col_clear) continue;
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == R) break;
            for (std::size_t j = t; j < C; ++j) a[t][j] += a[bad][j];
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

namespace {

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Group from_diagonal(const std::vector<Int>& diag, std::size_t rows) {
    Group g;
    std::size_t nonzero = 0;
    for (const auto& d : diag) {
        if (d == 0) continue;
        ++nonzero;
        if (d != 1) g.factors.push_back(d);
    }
    g.free_rank = rows - nonzero;
    std::sort(g.factors.begin(), g.factors.end());
    return g;
}

}  // namespace

std::vector<Int> determinantal_invariants(const Matrix& a) {
    const std::size_t R = a.size(), C = R ? a[0].size() : 0;
    std::vector<Int> d{1};  // d_0
    for (std::size_t k = 1; k <= std::min(R, C); ++k) {
        Int g = 0;
        subsets(R, k, [&](const std::vector<std::size_t>& rs) {
            subsets(C, k, [&](const std::vector<std::size_t>& cs) {
                Matrix m = zeros(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = a[rs[i]][cs[j]];
                g = gcd(g, det(m));
            });
        });
        if (g == 0) break;
        d.push_back(g);
    }
    std::vector<Int> inv;
    for (std::size_t k = 1; k < d.size(); ++k) inv.push_back(d[k] / d[k - 1]);
    return inv;
}

Group cokernel(const Matrix& a, std::size_t rows) {
    if (a.empty() || a[0].empty()) return Group{rows, {}};
    return from_diagonal(smith_diagonal(a), rows);
}

Group cokernel_determinantal(const Matrix& a, std::size_t rows) {
    if (a.empty() || a[0].empty()) return Group{rows, {}};
    return from_diagonal(determinantal_invariants(a), rows);
}

namespace {

// Number of v in (Z/q)^rows with v . column == 0 mod q for every column.
std::uint64_t hom_count(const Matrix& a, std::size_t rows, std::int64_t q) {
    const std::size_t C = rows ? a[0].size() : 0;
    std::vector<std::vector<std::int64_t>> cols(C, std::vector<std::int64_t>(rows));
    for (std::size_t j = 0; j < C; ++j)
        for (std::size_t i = 0; i < rows; ++i) cols[j][i] = a[i][j].get_si();
    std::uint64_t count = 0;
    std::vector<std::int64_t> v(rows, 0);
    while (true) {
        bool ok = true;
        for (std::size_t j = 0; j < C && ok; ++j) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < rows; ++i) s += v[i] * cols[j][i];
            ok = s % q == 0;
        }
        count += ok;
        std::size_t i = 0;
        while (i < rows && ++v[i] == q) v[i++] = 0;
        if (i == rows) break;
    }
    return count;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

unsigned log_exact(std::uint64_t x, std::uint64_t base) {
    unsigned e = 0;
    while (x > 1) {
        if (x % base) throw std::logic_error("hom count is not a prime power");
        x /= base;
        ++e;
    }
    return e;
}

}  // namespace

Group cokernel_by_enumeration(const Matrix& a, std::size_t rows) {
    if (rows == 0) return {};
    if (a.empty() || a[0].empty()) return Group{rows, {}};
    const std::size_t r = rank(a);
    // Torsion order = gcd of the r x r minors; it bounds the boxes searched.
    Int t = 0;
    const std::size_t C = a[0].size();
    subsets(rows, r, [&](const std::vector<std::size_t>& rs) {
        subsets(C, r, [&](const std::vector<std::size_t>& cs) {
            Matrix m = zeros(r, r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) m[i][j] = a[rs[i]][cs[j]];
            t = gcd(t, det(m));
        });
    });
    if (r == 0) t = 1;
    Group g;
    g.free_rank = rows - r;

    // Free rank again, from a prime not dividing t: |Hom(G, Z/p)| = p^free.
    auto is_prime = [](std::int64_t x) {
        for (std::int64_t d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    };
    std::int64_t p0 = 2;
    while (t % p0 == 0 || !is_prime(p0)) ++p0;
    if (log_exact(hom_count(a, rows, p0), p0) != g.free_rank) throw std::logic_error("free rank mismatch");

    // For p | t: |Hom(G, Z/p^e)| = p^(e*free + sum_i min(v_p(d_i), e)).
    std::map<std::int64_t, std::vector<unsigned>> at_least;  // p -> N_e, e = 1..
    std::int64_t rest = t.get_si();
    for (std::int64_t p = 2; p <= rest; ++p) {
        if (rest % p) continue;
        unsigned v = 0;
        while (rest % p == 0) rest /= p, ++v;
        unsigned prev = 0;
        for (unsigned e = 1; e <= v; ++e) {
            std::uint64_t q = ipow(p, e);
            unsigned s = log_exact(hom_count(a, rows, static_cast<std::int64_t>(q)), p) - e * g.free_rank;
            at_least[p].push_back(s - prev);
            prev = s;
        }
    }
    // Assemble invariant factors: the k-th largest takes the k-th largest power of each prime.
    std::size_t count = 0;
    for (const auto& [p, n] : at_least)
        if (!n.empty()) count = std::max<std::size_t>(count, n[0]);
    std::vector<Int> factors(count, 1);
    for (const auto& [p, n] : at_least)
        for (std::size_t e = 0; e < n.size(); ++e)
            for (std::size_t k = 0; k < n[e]; ++k) factors[count - 1 - k] *= p;
    g.factors = factors;
    return g;
}

bool in_span(const Matrix& a, const std::vector<Int>& x) {
    const std::size_t rows = x.size();
    Matrix b = a.empty() ? zeros(rows, 0) : a;
    for (std::size_t i = 0; i < rows; ++i) b[i].push_back(x[i]);
    return cokernel(a.empty() || a[0].empty() ? zeros(rows, 0) : a, rows) == cokernel(b, rows);
}

Int binom(long a, long b) {
    if (a < 0 || b < 0 || b > a) return 0;
    std::vector<Int> row{1};
    for (long i = 1; i <= a; ++i) {
        std::vector<Int> next(row.size() + 1, 0);
        for (std::size_t j = 0; j < next.size(); ++j)
            next[j] = (j < row.size() ? row[j] : Int(0)) + (j > 0 ? row[j - 1] : Int(0));
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(b)];
}

std::vector<std::vector<unsigned>> exponent_vectors(const std::vector<unsigned>& degrees, unsigned m) {
    std::vector<std::vector<unsigned>> out;
    const std::size_t k = degrees.size();
    if (k == 0) {
        if (m == 0) out.push_back({});
        return out;
    }
    std::vector<unsigned> e(k, 0);
    while (true) {
        unsigned d = 0;
        for (std::size_t i = 0; i < k; ++i) d += e[i] * degrees[i];
        if (d == m) out.push_back(e);
        std::size_t i = 0;
        while (i < k && ++e[i] > m / degrees[i]) e[i++] = 0;
        if (i == k) break;
    }
    return out;
}

std::size_t count_monomials(const std::vector<unsigned>& degrees, unsigned m) {
    return exponent_vectors(degrees, m).size();
}

std::size_t count_with_odd_chern(unsigned n, unsigned m) {
    std::vector<unsigned> degs;
    for (unsigned i = 1; i <= 2 * n; ++i) degs.push_back(i);
    std::size_t c = 0;
    for (const auto& e : exponent_vectors(degs, m)) {
        bool odd = false;
        for (std::size_t i = 0; i < e.size(); i += 2) odd = odd || e[i] > 0;  // index i is c_{i+1}
        c += odd;
    }
    return c;
}

namespace {

using Poly = std::map<std::vector<unsigned>, Int>;

GoPiece build(unsigned n, unsigned m, bool with_lambda) {
    std::vector<unsigned> degs{1};
    for (unsigned i = 1; i <= 2 * n; ++i) degs.push_back(i);
    GoPiece out;
    out.basis = exponent_vectors(degs, m);
    std::map<std::vector<unsigned>, std::size_t> index;
    for (std::size_t i = 0; i < out.basis.size(); ++i) index[out.basis[i]] = i;

    std::vector<std::pair<unsigned, Poly>> rels;
    for (unsigned p = 1; p <= 2 * n; ++p) {
        Poly r;
        std::vector<unsigned> cp(degs.size(), 0);
        cp[p] = 1;
        r[cp] -= 1;
        for (unsigned i = 0; i <= p; ++i) {
            Int c = binom(2 * n - i, p - i);
            if (i % 2) c = -c;
            std::vector<unsigned> mono(degs.size(), 0);
            mono[0] = p - i;
            if (i > 0) mono[i] += 1;
            r[mono] += c;
        }
        rels.emplace_back(p, std::move(r));
    }
    if (with_lambda) {
        std::vector<unsigned> l(degs.size(), 0);
        l[0] = 1;
        rels.emplace_back(1, Poly{{l, 1}});
    }

    std::vector<std::vector<Int>> cols;
    for (const auto& [d, r] : rels) {
        if (d > m) continue;
        for (const auto& mu : exponent_vectors(degs, m - d)) {
            std::vector<Int> col(out.basis.size(), 0);
            for (const auto& [mono, c] : r) {
                if (c == 0) continue;
                std::vector<unsigned> prod = mono;
                for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += mu[i];
                col[index.at(prod)] += c;
            }
            cols.push_back(std::move(col));
        }
    }
    out.relations = zeros(out.basis.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < out.basis.size(); ++i) out.relations[i][j] = cols[j][i];
    return out;
}

}  // namespace

GoPiece go_piece(unsigned n, unsigned m) { return build(n, m, false); }
GoPiece go_piece_mod_lambda(unsigned n, unsigned m) { return build(n, m, true); }

bool in_two_c_odd_ideal(const std::vector<std::pair<std::vector<unsigned>, Int>>& terms) {
    for (const auto& [e, c] : terms) {
        bool odd = false;
        for (std::size_t i = 0; i < e.size(); i += 2) odd = odd || e[i] > 0;
        if (odd ? (c % 2 != 0) : (c != 0)) return false;
    }
    return true;
}

}  // namespace oracle
