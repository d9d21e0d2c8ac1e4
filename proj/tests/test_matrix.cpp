#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "bkc/matrix.hpp"

using namespace bkc;

using M2 = Matrix<PrimeField>;
using MQ = Matrix<RationalField>;

static M2 random_f2(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    PrimeField f2(2);
    M2 m(f2, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng() & 1;
    return m;
}

// Brute-force oracle: the row space of an F_2 matrix as a set of vectors.
static std::set<std::vector<std::uint64_t>> row_space_f2(const M2& m) {
    std::set<std::vector<std::uint64_t>> space;
    std::size_t r = m.rows();
    REQUIRE(r <= 16);
    for (std::size_t mask = 0; mask < (1u << r); ++mask) {
        std::vector<std::uint64_t> v(m.cols(), 0);
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (1u << i))
                for (std::size_t j = 0; j < m.cols(); ++j) v[j] ^= m.at(i, j);
        space.insert(v);
    }
    return space;
}

TEST_CASE("field axioms and inverses") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 101ull}) {
        PrimeField f(p);
        for (std::uint64_t a = 1; a < p; ++a) {
            CHECK(f.mul(a, f.inv(a)) == f.one());
            CHECK(f.add(a, f.neg(a)) == f.zero());
        }
    }
    CHECK_THROWS(PrimeField(4));
    CHECK_THROWS(PrimeField(1));
    RationalField q;
    auto a = q.from_int(-3);
    CHECK(q.eq(q.mul(a, q.inv(a)), q.one()));
}

TEST_CASE("known ranks over F_2 and Q") {
    PrimeField f2(2);
    // frozen: 3x3 with rows r0, r1, r0+r1 has rank 2
    M2 a = M2::from_ints(f2, 3, 3, {1, 0, 1, 0, 1, 1, 1, 1, 0});
    CHECK(rank(a) == 2);
    CHECK(kernel_basis(a).cols() == 1);
    RationalField q;
    MQ b = MQ::from_ints(q, 3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(rank(b) == 2);  // over Q; classic singular integer matrix
    MQ c = MQ::from_ints(q, 2, 2, {2, 0, 0, 5});
    CHECK(rank(c) == 2);
}

TEST_CASE("rref agrees with the brute-force row-space oracle over F_2") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
        M2 m = random_f2(rng, r, c);
        auto red = rref(m);
        auto space = row_space_f2(m);
        CHECK(space == row_space_f2(red.mat));
        // |row space| = 2^rank
        CHECK((std::size_t{1} << red.pivot_cols.size()) == space.size());
    }
}

TEST_CASE("rank plus nullity equals column count") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        M2 m = random_f2(rng, r, c);
        M2 ker = kernel_basis(m);
        CHECK(rank(m) + ker.cols() == c);
        if (ker.cols() > 0) CHECK((m * ker).is_zero());
        CHECK(rank(ker) == ker.cols());
    }
}

TEST_CASE("dense and sparse elimination agree bit for bit") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 10, c = 1 + rng() % 12;
        M2 m = random_f2(rng, r, c);
        auto dense = detail::rref_dense(m);
        auto sparse = detail::rref_sparse(m);
        REQUIRE(dense.mat == sparse.mat);
        REQUIRE(dense.pivot_cols == sparse.pivot_cols);
    }
    // also over a bigger prime and the rationals
    PrimeField f7(7);
    std::mt19937_64 rng2(43);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix<PrimeField> m(f7, 5, 6);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 6; ++j) m.at(i, j) = rng2() % 7;
        auto dense = detail::rref_dense(m);
        auto sparse = detail::rref_sparse(m);
        REQUIRE(dense.mat == sparse.mat);
        REQUIRE(dense.pivot_cols == sparse.pivot_cols);
    }
}

TEST_CASE("solve returns solutions exactly when consistent") {
    std::mt19937_64 rng(99);
    PrimeField f2(2);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        M2 a = random_f2(rng, r, c);
        M2 x = random_f2(rng, c, 2);
        M2 b = a * x;
        auto sol = solve(a, b);
        REQUIRE(sol.has_value());
        CHECK(a * *sol == b);
    }
    // an inconsistent system
    M2 a = M2::from_ints(f2, 2, 1, {1, 1});
    M2 b = M2::from_ints(f2, 2, 1, {1, 0});
    CHECK(!solve(a, b).has_value());
}

TEST_CASE("subspace arithmetic: sums, intersections, span membership") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t dim = 2 + rng() % 5;
        M2 u = random_f2(rng, dim, 1 + rng() % 4);
        M2 v = random_f2(rng, dim, 1 + rng() % 4);
        M2 s = sum_basis(u, v);
        M2 i = intersect_basis(u, v);
        // inclusion-exclusion on dimensions
        CHECK(rank(u) + rank(v) == rank(s) + i.cols());
        // every intersection vector lies in both spans
        for (std::size_t j = 0; j < i.cols(); ++j) {
            CHECK(in_span(u, i.column(j)));
            CHECK(in_span(v, i.column(j)));
        }
        CHECK(rank(i) == i.cols());
        // extension columns bring big's span into the current span
        auto ext = extension_columns(u, v);
        M2 joined = u;
        for (std::size_t j : ext) joined = joined.hstack(v.column(j));
        CHECK(rank(joined) == rank(s));
    }
}

TEST_CASE("sparse threshold routing does not change results") {
    std::mt19937_64 rng(2718);
    M2 m = random_f2(rng, 20, 80);
    std::size_t saved = sparse_threshold();
    sparse_threshold() = 64;  // 80 cols -> sparse
    auto a = rref(m);
    sparse_threshold() = 1000;  // dense
    auto b = rref(m);
    sparse_threshold() = saved;
    CHECK(a.mat == b.mat);
    CHECK(a.pivot_cols == b.pivot_cols);
}

TEST_CASE("kronecker and direct sum shapes and ranks") {
    PrimeField f2(2);
    M2 a = M2::from_ints(f2, 2, 2, {1, 1, 0, 1});
    M2 b = M2::from_ints(f2, 2, 3, {1, 0, 1, 0, 1, 0});
    M2 k = a.kron(b);
    CHECK(k.rows() == 4);
    CHECK(k.cols() == 6);
    CHECK(rank(k) == rank(a) * rank(b));
    M2 d = a.direct_sum(b);
    CHECK(rank(d) == rank(a) + rank(b));
}
