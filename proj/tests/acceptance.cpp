// One line per acceptance criterion. Exit status is nonzero if any line fails.
#include "chow/catalog.hpp"
#include "chow/verifier.hpp"

#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace chow;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Collects the first few mismatches; later ones only flip the flag.
class Log {
public:
    void fail(const std::string& what) {
        if (count_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
        ok_ = false;
    }
    Outcome outcome(std::string summary) const {
        if (ok_) return {true, std::move(summary)};
        return {false, first_ + (count_ > 3 ? " (+" + std::to_string(count_ - 3) + " more)" : "")};
    }

private:
    bool ok_ = true;
    int count_ = 0;
    std::string first_;
};

std::vector<unsigned> even_degrees(unsigned n) {
    std::vector<unsigned> d{1};
    for (unsigned k = 2; k <= 2 * n; k += 2) d.push_back(k);
    return d;
}

Outcome structure_table() {
    Log log;
    const char* expected[] = {"Z", "Z + Z/2", "Z^2 + Z/2", "Z^2 + Z/2 + Z/2"};
    auto r = go_presentation(1);
    for (unsigned m = 0; m <= 3; ++m) {
        auto got = r.piece(m)->structure().to_string();
        auto p = oracle::go_piece(1, m);
        auto dense = oracle::cokernel(p.relations, p.basis.size()).str();
        if (got != expected[m] || dense != expected[m])
            log.fail("m=" + std::to_string(m) + " library " + got + ", oracle " + dense);
    }
    return log.outcome("n=1, m=0..3: Z, Z + Z/2, Z^2 + Z/2, Z^2 + Z/2 + Z/2");
}

Outcome free_rank_law() {
    Log log;
    for (unsigned n = 1; n <= 3; ++n) {
        auto r = go_presentation(n);
        for (unsigned m = 0; m <= 2 * n + 6; ++m) {
            std::size_t got = r.piece(m)->structure().free_rank;
            std::size_t want = oracle::count_monomials(even_degrees(n), m);
            if (got != want)
                log.fail("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + std::to_string(got) +
                         " vs " + std::to_string(want));
        }
    }
    return log.outcome("free rank = #monomials in l, c_even for n=1..3, m <= 2n+6");
}

Outcome checks(std::initializer_list<CheckId> ids, unsigned n_max, const std::function<unsigned(unsigned)>& bound) {
    Log log;
    std::size_t degrees = 0;
    for (unsigned n = 1; n <= n_max; ++n) {
        for (auto id : ids) {
            auto rep = run_check(id, n, bound(n));
            degrees += rep.per_degree.size();
            if (!rep.passed) {
                std::string where;
                for (const auto& d : rep.per_degree)
                    if (!d.passed) where += " m=" + std::to_string(d.m);
                log.fail(to_string(id) + " n=" + std::to_string(n) + where);
            }
        }
    }
    std::string names;
    for (auto id : ids) names += (names.empty() ? "" : ",") + to_string(id);
    return log.outcome(names + " for n=1.." + std::to_string(n_max) + ", " + std::to_string(degrees) +
                       " degree results");
}

Outcome kernel_lambda_counts() {
    Log log;
    for (unsigned n = 1; n <= 3; ++n) {
        auto rep = run_check(CheckId::C9, n, 2 * n + 5);
        if (!rep.passed) log.fail("C9 n=" + std::to_string(n));
        auto r = go_presentation(n);
        auto o = o_presentation(2 * n);
        auto l = Polynomial::variable(r.context(), "l");
        for (unsigned m = 0; m <= 2 * n + 5; ++m) {
            Integer want = Integer(1) << oracle::count_with_odd_chern(n, m);
            Integer t_o = o.piece(m)->structure().torsion_cardinality();
            auto ker = multiplication_map(r, l, m).kernel;
            Integer k = ker.is_finite() ? ker.cardinality() : Integer(-1);
            if (t_o != want || k != want)
                log.fail("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": #ker " + k.get_str() + ", #T_O " +
                         t_o.get_str() + ", count " + want.get_str());
        }
    }
    return log.outcome("#ker(l)_m = #(T_O)_m = 2^(odd-index monomial count), n=1..3, m <= 2n+5");
}

Outcome lifts() {
    Log log;
    int count = 0;
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned p = 1; p < 2 * n; p += 2) {
            ++count;
            std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p);
            TorsionLift lift = find_torsion_lift(n, p);
            if (!lift.certified()) log.fail(tag + " not certified by the library");

            // 2*beta in the relation lattice, decided by the oracle.
            auto piece = oracle::go_piece(n, p);
            std::vector<oracle::Int> twice(piece.basis.size(), 0);
            std::vector<std::pair<std::vector<unsigned>, oracle::Int>> reduced;  // beta with l -> 0, minus c_p
            for (const auto& [mono, c] : lift.element.terms()) {
                std::vector<unsigned> e(mono.exponents().begin(), mono.exponents().end());
                auto it = std::find(piece.basis.begin(), piece.basis.end(), e);
                if (it == piece.basis.end()) {
                    log.fail(tag + " term outside degree p");
                    continue;
                }
                twice[it - piece.basis.begin()] = 2 * c;
                if (e[0] == 0) reduced.emplace_back(std::vector<unsigned>(e.begin() + 1, e.end()), c);
            }
            if (!oracle::in_span(piece.relations, twice)) log.fail(tag + " 2*beta not in the lattice");
            std::vector<unsigned> cp(2 * n, 0);
            cp[p - 1] = 1;
            bool merged = false;
            for (auto& [e, c] : reduced)
                if (e == cp) c -= 1, merged = true;
            if (!merged) reduced.emplace_back(cp, -1);
            if (!oracle::in_two_c_odd_ideal(reduced)) log.fail(tag + " image differs from c_p mod 2c_odd");
            // beta itself must not be zero in R_p, else it maps to 0, not c_p.
            std::vector<oracle::Int> once(twice.size());
            for (std::size_t i = 0; i < once.size(); ++i) once[i] = twice[i] / 2;
            if (oracle::in_span(piece.relations, once)) log.fail(tag + " beta is zero in R");
        }
    }
    return log.outcome(std::to_string(count) + " lifts for odd p < 2n, n=1..3, re-verified by the oracle");
}

Outcome enumeration_agreement() {
    Log log;
    std::mt19937 rng(20240607);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 3, cols = rng() % 4;
        oracle::Matrix a = oracle::zeros(rows, cols);
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                int v = entry(rng);
                a[i][j] = v;
                m.set(i, j, v);
            }
        std::string got = cokernel_structure(QuotientPresentation::from_matrix(m)).to_string();
        std::string want = oracle::cokernel_by_enumeration(a, rows).str();
        if (got != want) log.fail("trial " + std::to_string(trial) + ": " + got + " vs " + want);
    }
    return log.outcome("200 random matrices, ambient rank <= 3, entries in [-4, 4]");
}

Outcome kunneth() {
    Log log;
    std::vector<RingPresentation> rings{load_presentation(CHOW_TEST_DATA "/so3.pres"),
                                        load_presentation(CHOW_TEST_DATA "/mixed.pres")};
    for (const auto& p : rings) {
        auto ext = kunneth_extend(p);
        for (unsigned m = 0; m <= 8; ++m) {
            FGAbelianGroup sum;
            for (unsigned k = 0; k <= m; ++k) sum = direct_sum(sum, p.piece(k)->structure());
            auto got = ext.piece(m)->structure();
            if (got != sum)
                log.fail(p.name() + " m=" + std::to_string(m) + ": " + got.to_string() + " vs " + sum.to_string());
        }
    }
    return log.outcome("(P tensor Z[l])_m = sum_k P_k for so3.pres and mixed.pres, m <= 8");
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        double limit_seconds;  // 0: no bound stated
        std::function<Outcome()> run;
    };
    auto default_bound = [](unsigned n) { return default_degree_bound(n); };
    std::vector<Criterion> all{
        {1, 1, structure_table},
        {2, 60, free_rank_law},
        {3, 5, [&] { return checks({CheckId::C1}, 3, default_bound); }},
        {4, 120, [&] { return checks({CheckId::C5, CheckId::C6, CheckId::C7, CheckId::C10}, 3, default_bound); }},
        {5, 0, kernel_lambda_counts},
        {6, 0, lifts},
        {7, 0, [] { return checks({CheckId::C12}, 2, [](unsigned n) { return 2 * n + 4; }); }},
        {8, 10, enumeration_agreement},
        {9, 0, kunneth},
    };

    bool all_ok = true;
    for (const auto& c : all) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
        bool ok = o.ok && in_time;
        all_ok = all_ok && ok;
        char timing[64];
        if (c.limit_seconds > 0)
            std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.limit_seconds);
        else
            std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << "criterion " << c.number << "  " << (ok ? "PASS" : "FAIL") << "  " << o.detail << "  ["
                  << timing << "]" << (in_time ? "" : " over time limit") << "\n";
    }
    return all_ok ? 0 : 1;
}
