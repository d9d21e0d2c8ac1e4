#include <catch2/catch_amalgamated.hpp>

#include "bkc/ordinal.hpp"

using namespace bkc;

static std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

TEST_CASE("coface and codegeneracy have the expected values") {
    CHECK(coface(0, 1).values == std::vector<std::size_t>{1, 2});
    CHECK(coface(1, 1).values == std::vector<std::size_t>{0, 2});
    CHECK(coface(2, 1).values == std::vector<std::size_t>{0, 1});
    CHECK(codegeneracy(0, 1).values == std::vector<std::size_t>{0, 0, 1});
    CHECK(codegeneracy(1, 1).values == std::vector<std::size_t>{0, 1, 1});
    // s^0 d^1 = id on [0]
    CHECK(compose(coface(1, 0), codegeneracy(0, 0)) == ordinal_identity(0));
}

TEST_CASE("cosimplicial identities hold for ordinals up to 5") {
    for (std::size_t n = 0; n <= 5; ++n) {
        // d^j d^i = d^i d^{j-1}, i < j (maps [n] -> [n+2])
        for (std::size_t i = 0; i <= n + 2; ++i)
            for (std::size_t j = i + 1; j <= n + 2; ++j)
                CHECK(compose(coface(i, n), coface(j, n + 1)) ==
                      compose(coface(j - 1, n), coface(i, n + 1)));
        // s^j s^i = s^i s^{j+1}, i <= j (maps [n+2] -> [n])
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i; j <= n; ++j)
                CHECK(compose(codegeneracy(i, n + 1), codegeneracy(j, n)) ==
                      compose(codegeneracy(j + 1, n + 1), codegeneracy(i, n)));
        // s^j d^i: identity if i = j or i = j+1, d s otherwise
        for (std::size_t i = 0; i <= n + 1; ++i)
            for (std::size_t j = 0; j <= n; ++j) {
                OrdinalMap lhs = compose(coface(i, n), codegeneracy(j, n));
                if (i == j || i == j + 1) {
                    CHECK(lhs == ordinal_identity(n));
                } else if (i < j) {
                    CHECK(lhs == compose(codegeneracy(j - 1, n - 1), coface(i, n - 1)));
                } else {
                    CHECK(lhs == compose(codegeneracy(j, n - 1), coface(i - 1, n - 1)));
                }
            }
    }
}

TEST_CASE("composition is associative, exhaustively for ordinals up to 3") {
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t m = 0; m <= 3; ++m)
            for (std::size_t p = 0; p <= 3; ++p)
                for (std::size_t q = 0; q <= 3; ++q)
                    for (const auto& f : enumerate_monotone(n, m))
                        for (const auto& g : enumerate_monotone(m, p))
                            for (const auto& h : enumerate_monotone(p, q))
                                REQUIRE(compose(compose(f, g), h) == compose(f, compose(g, h)));
}

TEST_CASE("enumerate_monotone is complete and lex ordered") {
    for (std::size_t n = 0; n <= 5; ++n)
        for (std::size_t m = 0; m <= 5; ++m) {
            auto maps = enumerate_monotone(n, m);
            CHECK(maps.size() == binom(n + m + 1, n + 1));
            CHECK(maps.front().values == std::vector<std::size_t>(n + 1, 0));
            CHECK(maps.back().values == std::vector<std::size_t>(n + 1, m));
            for (std::size_t i = 1; i < maps.size(); ++i)
                CHECK(maps[i - 1].values < maps[i].values);
        }
}

TEST_CASE("epi-mono factorization is a normal form and round-trips") {
    for (std::size_t n = 0; n <= 5; ++n)
        for (std::size_t m = 0; m <= 5; ++m)
            for (const auto& f : enumerate_monotone(n, m)) {
                EpiMonoWord w = epi_mono_factor(f);
                for (std::size_t i = 1; i < w.degeneracies.size(); ++i)
                    REQUIRE(w.degeneracies[i - 1] < w.degeneracies[i]);
                for (std::size_t i = 1; i < w.faces.size(); ++i)
                    REQUIRE(w.faces[i - 1] > w.faces[i]);
                REQUIRE(w.recompose() == f);
            }
}

TEST_CASE("validation rejects malformed maps") {
    CHECK_THROWS(OrdinalMap(1, 1, {1, 0}));
    CHECK_THROWS(OrdinalMap(1, 1, {0, 2}));
    CHECK_THROWS(OrdinalMap(1, 1, {0}));
    CHECK_THROWS(SubdivisionSpec(2, 3));
    CHECK_THROWS(SubdivisionSpec(0, 0));
}

TEST_CASE("edgewise subdivision is a functor and multiplicative in the fold count") {
    for (std::size_t k = 1; k <= 3; ++k) {
        for (std::size_t n = 0; n <= 3; ++n)
            CHECK(edgewise_map(k, ordinal_identity(n)) == ordinal_identity(edgewise_object(k, n)));
        for (std::size_t n = 0; n <= 3; ++n)
            for (std::size_t m = 0; m <= 3; ++m)
                for (std::size_t p = 0; p <= 3; ++p)
                    for (const auto& f : enumerate_monotone(n, m))
                        for (const auto& g : enumerate_monotone(m, p))
                            REQUIRE(edgewise_map(k, compose(f, g)) ==
                                    compose(edgewise_map(k, f), edgewise_map(k, g)));
    }
    // composite of subdivisions equals the subdivision by the product
    for (std::size_t k1 = 1; k1 <= 3; ++k1)
        for (std::size_t k2 = 1; k2 <= 3; ++k2)
            for (std::size_t n = 0; n <= 3; ++n) {
                CHECK(edgewise_object(k1, edgewise_object(k2, n)) ==
                      edgewise_object(k1 * k2, n));
                for (std::size_t m = 0; m <= 3; ++m)
                    for (const auto& f : enumerate_monotone(n, m))
                        REQUIRE(edgewise_map(k1, edgewise_map(k2, f)) ==
                                edgewise_map(k1 * k2, f));
            }
}

TEST_CASE("copy-selection maps are natural") {
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t l = 1; l <= k; ++l) {
            SubdivisionSpec spec(k, l);
            for (std::size_t n = 0; n <= 3; ++n)
                for (std::size_t m = 0; m <= 3; ++m)
                    for (const auto& phi : enumerate_monotone(n, m))
                        REQUIRE(compose(u_component(spec, n), edgewise_map(k, phi)) ==
                                compose(phi, u_component(spec, m)));
        }
}

TEST_CASE("interpolating structure maps specialize to the copy selections") {
    // constant phi = l-1 recovers the l-th copy selection
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t l = 1; l <= k; ++l)
            for (std::size_t n = 0; n <= 3; ++n) {
                OrdinalMap phi(n, k - 1, std::vector<std::size_t>(n + 1, l - 1));
                CHECK(h_structure_map(k, phi) == u_component(SubdivisionSpec(k, l), n));
            }
    // frozen instance: k = 2, phi = (0,1) on [1] gives (0, 3)
    CHECK(h_structure_map(2, OrdinalMap(1, 1, {0, 1})).values ==
          std::vector<std::size_t>{0, 3});
    // monotonicity is preserved for every phi
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t n = 0; n <= 3; ++n)
            for (const auto& phi : enumerate_monotone(n, k - 1))
                CHECK_NOTHROW(h_structure_map(k, phi));
}
