// The oracles check each other before anything is compared against them.
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using oracle::Int;
using oracle::Matrix;

static Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix a = oracle::zeros(rows, cols);
    for (auto& r : a)
        for (auto& x : r) x = d(rng);
    return a;
}

TEST_CASE("euclid smith diagonal agrees with determinantal divisors") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        Matrix a = random_matrix(rng, r, c, -6, 6);
        CHECK(oracle::cokernel(a, r) == oracle::cokernel_determinantal(a, r));
    }
}

TEST_CASE("hom counting enumeration agrees with smith diagonal") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t r = 1 + rng() % 3, c = rng() % 4;
        Matrix a = random_matrix(rng, r, c, -4, 4);
        INFO("trial " << trial);
        CHECK(oracle::cokernel_by_enumeration(a, r) == oracle::cokernel(a, r));
    }
}

TEST_CASE("oracle groups on hand examples") {
    // diag(2, 6) plus a zero row.
    Matrix a = {{2, 0}, {0, 6}, {0, 0}};
    CHECK(oracle::cokernel(a, 3).str() == "Z + Z/2 + Z/6");
    CHECK(oracle::cokernel_by_enumeration(a, 3).str() == "Z + Z/2 + Z/6");
    Matrix b = {{4, 6}};
    CHECK(oracle::cokernel(b, 1).str() == "Z/2");
    CHECK(oracle::in_span(b, {Int(2)}));
    CHECK_FALSE(oracle::in_span(b, {Int(1)}));
}

TEST_CASE("pascal binomials and box enumeration") {
    CHECK(oracle::binom(4, 2) == 6);
    CHECK(oracle::binom(3, 5) == 0);
    CHECK(oracle::binom(2, -1) == 0);
    CHECK(oracle::count_monomials({1, 1}, 3) == 4);
    CHECK(oracle::count_monomials({1, 2, 4}, 4) == 4);  // l^4, l^2 c2, c2^2, c4
    CHECK(oracle::count_with_odd_chern(1, 2) == 1);     // c1^2
}

TEST_CASE("oracle relation matrix for n=1 in degree 1") {
    auto p = oracle::go_piece(1, 1);
    REQUIRE(p.basis.size() == 2);
    REQUIRE(p.relations[0].size() == 1);
    // 2l - 2c1 in the basis (l, c1) as enumerated by the box scan (c1 first).
    CHECK(oracle::cokernel(p.relations, 2).str() == "Z + Z/2");
}
