#include <catch2/catch_amalgamated.hpp>

#include "bkc/simplicial_set.hpp"

using namespace bkc;

static std::size_t nondegenerate_count(const FiniteSimplicialSet& X, std::size_t level) {
    std::size_t c = 0;
    for (std::size_t x = 0; x < X.size(level); ++x)
        if (!X.is_degenerate(level, x)) ++c;
    return c;
}

TEST_CASE("standard simplices have the expected simplex counts") {
    // |Delta[n]_m| = C(n+m+1, n+1)
    auto d2 = standard_simplex(2, 4);
    CHECK(d2.cx.size(0) == 3);
    CHECK(d2.cx.size(1) == 6);
    CHECK(d2.cx.size(2) == 10);
    CHECK(d2.cx.size(3) == 15);
    CHECK(d2.cx.size(4) == 21);
    CHECK(d2.cx.check_identities().empty());
    // nondegenerate simplices: the injective maps
    CHECK(nondegenerate_count(d2.cx, 0) == 3);
    CHECK(nondegenerate_count(d2.cx, 1) == 3);
    CHECK(nondegenerate_count(d2.cx, 2) == 1);
    CHECK(nondegenerate_count(d2.cx, 3) == 0);
}

TEST_CASE("boundary and horn subcomplexes") {
    auto b2 = boundary_simplex(2, 3);
    CHECK(b2.cx.check_identities().empty());
    CHECK(b2.cx.size(0) == 3);
    CHECK(b2.cx.size(1) == 6);   // all weakly monotone non-surjective [1]->[2]
    CHECK(nondegenerate_count(b2.cx, 1) == 3);
    CHECK(nondegenerate_count(b2.cx, 2) == 0);  // the top cell is gone

    for (std::size_t k = 0; k <= 2; ++k) {
        auto h = horn(2, k, 3);
        CHECK(h.cx.check_identities().empty());
        CHECK(h.cx.size(0) == 3);
        CHECK(nondegenerate_count(h.cx, 1) == 2);  // one edge missing
        CHECK(nondegenerate_count(h.cx, 2) == 0);
    }
    CHECK_THROWS(horn(2, 3, 3));

    // empty boundary of a point
    auto b0 = boundary_simplex(0, 2);
    CHECK(b0.cx.total_size() == 0);
}

TEST_CASE("products multiply vertex counts and triangulate the square") {
    auto p = simplex_product(1, 1, 3);
    CHECK(p.cx.check_identities().empty());
    CHECK(p.cx.size(0) == 4);
    CHECK(p.cx.size(1) == 9);
    CHECK(nondegenerate_count(p.cx, 1) == 5);  // 4 sides + 1 diagonal
    CHECK(nondegenerate_count(p.cx, 2) == 2);  // two triangles
    CHECK(nondegenerate_count(p.cx, 3) == 0);
}

TEST_CASE("structure-map action agrees with labels on standard simplices") {
    auto d3 = standard_simplex(3, 3);
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t n = 0; n <= 3; ++n)
            for (const auto& phi : enumerate_monotone(n, m))
                for (std::size_t x = 0; x < d3.cx.size(m); ++x) {
                    // phi*(alpha) = alpha o phi
                    std::size_t got = d3.cx.act(phi, x);
                    std::size_t want = d3.find(n, {compose(phi, d3.labels[m][x][0])});
                    REQUIRE(got == want);
                }
}

TEST_CASE("hand-built complexes generate degeneracies automatically") {
    // a circle: one vertex, one nondegenerate edge
    FiniteSimplicialSet s1(3);
    std::size_t v = s1.add_cell(0, {});
    std::size_t e = s1.add_cell(1, {v, v});
    CHECK(s1.check_identities().empty());
    CHECK(s1.size(0) == 1);
    CHECK(s1.size(1) == 2);  // e and s_0(v)
    CHECK(s1.size(2) == 3);  // s_0 e, s_1 e, s_0 s_0 v
    CHECK(s1.is_degenerate(1, s1.degeneracy(0, v, 0)));
    CHECK(!s1.is_degenerate(1, e));
    auto [j, y] = s1.degeneracy_witness(2, s1.degeneracy(1, e, 1));
    CHECK(j == 1);
    CHECK(y == e);
}

TEST_CASE("simplicial set maps validate and compose") {
    auto d1 = standard_simplex(1, 2);
    auto d2 = standard_simplex(2, 2);
    // the map Delta[1] -> Delta[2] induced by d^0 : [1] -> [2]
    SimplicialSetMap f;
    f.source = &d1.cx;
    f.target = &d2.cx;
    f.images.resize(3);
    for (std::size_t n = 0; n <= 2; ++n) {
        f.images[n].resize(d1.cx.size(n));
        for (std::size_t x = 0; x < d1.cx.size(n); ++x)
            f.images[n][x] = d2.find(n, {compose(d1.labels[n][x][0], coface(0, 1))});
    }
    CHECK(f.check().empty());
    CHECK(compose(f, identity_map(d2.cx)).images == f.images);
    CHECK(identity_map(d1.cx).check().empty());

    // negative control: corrupt one vertex image
    SimplicialSetMap bad = f;
    bad.images[0][0] = (bad.images[0][0] + 1) % d2.cx.size(0);
    CHECK(!bad.check().empty());
}
