#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bkc/cosimplicial.hpp"
#include "bkc/simplicial_module.hpp"

using namespace bkc;

using Cat = ModuleCat<PrimeField>;
using Cos = CosimplicialObject<Cat>;
using Sim = SimplicialObjectIn<Cat>;

// Dualize a simplicial module into a cosimplicial module by transposing all
// structure matrices; simplicial identities turn into cosimplicial ones.
static Cos dualize(const SimplicialModule<PrimeField>& m) {
    Cos y;
    y.cat = Cat{m.field};
    y.levels = m.dims;
    y.coface.resize(m.dims.size());
    y.codegen.resize(m.dims.size());
    for (std::size_t n = 1; n < m.dims.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i) y.coface[n].push_back(m.d(n, i).transposed());
    for (std::size_t n = 0; n + 1 < m.dims.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i) y.codegen[n].push_back(m.s(n, i).transposed());
    return y;
}

static Sim to_generic(const SimplicialModule<PrimeField>& m) {
    Sim x;
    x.cat = Cat{m.field};
    x.levels = m.dims;
    x.face = m.face;
    x.degen = m.degen;
    return x;
}

static SimplicialModule<PrimeField> random_module(PrimeField f, std::mt19937_64& rng,
                                                  std::size_t n_max) {
    ChainComplex<PrimeField> c;
    c.field = f;
    c.dims.resize(n_max + 1);
    for (auto& d : c.dims) d = 1 + rng() % 2;
    c.diff.resize(n_max + 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        Matrix<PrimeField> ker = (n == 1) ? Matrix<PrimeField>::identity(f, c.dims[0])
                                          : kernel_basis(c.diff[n - 1]);
        Matrix<PrimeField> coeff(f, ker.cols(), c.dims[n]);
        for (std::size_t i = 0; i < coeff.rows(); ++i)
            for (std::size_t j = 0; j < coeff.cols(); ++j) coeff.at(i, j) = rng() & 1;
        c.diff[n] = ker * coeff;
    }
    return dold_kan(c, n_max);
}

TEST_CASE("dualized modules satisfy the cosimplicial identities") {
    PrimeField f2(2);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 5; ++t) {
        Cos y = dualize(random_module(f2, rng, 3));
        REQUIRE(y.check().empty());
        // negative control
        Cos bad = y;
        bad.coface[1][0].at(0, 0) = f2.add(bad.coface[1][0].at(0, 0), f2.one());
        CHECK(!bad.check().empty());
    }
}

TEST_CASE("apply respects composition") {
    PrimeField f2(2);
    std::mt19937_64 rng(8);
    Cos y = dualize(random_module(f2, rng, 4));
    for (std::size_t n = 0; n <= 2; ++n)
        for (std::size_t m = 0; m <= 3; ++m)
            for (std::size_t p = 0; p <= 4; ++p)
                for (const auto& f : enumerate_monotone(n, m))
                    for (const auto& g : enumerate_monotone(m, p))
                        REQUIRE(y.cat.eq(y.apply(compose(f, g)),
                                         y.cat.compose(y.apply(f), y.apply(g))));
}

TEST_CASE("tensor with a simplicial set multiplies dimensions") {
    PrimeField f2(2);
    std::mt19937_64 rng(9);
    Sim x = to_generic(random_module(f2, rng, 3));

    auto d0 = standard_simplex(0, 3);
    Sim xd0 = tensor_with(x, d0.cx);
    CHECK(xd0.levels == x.levels);  // X (x) Delta[0] = X
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t i = 0; i <= n; ++i) CHECK(xd0.d(n, i) == x.d(n, i));

    auto d1 = standard_simplex(1, 3);
    Sim xd1 = tensor_with(x, d1.cx);
    for (std::size_t n = 0; n <= 3; ++n)
        CHECK(xd1.level(n) == (n + 2) * x.level(n));  // |Delta[1]_n| = n+2
}

TEST_CASE("power by a simplicial set multiplies dimensions") {
    PrimeField f2(2);
    std::mt19937_64 rng(10);
    Cos y = dualize(random_module(f2, rng, 3));

    auto d0 = standard_simplex(0, 3);
    Cos yd0 = power_by(y, d0.cx);
    CHECK(yd0.levels == y.levels);
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t i = 0; i <= n; ++i) CHECK(yd0.d(n, i) == y.d(n, i));

    auto d1 = standard_simplex(1, 3);
    Cos yd1 = power_by(y, d1.cx);
    for (std::size_t n = 0; n <= 3; ++n) CHECK(yd1.level(n) == (n + 2) * y.level(n));
}

TEST_CASE("constant homotopy certifies f ~ f") {
    PrimeField f2(2);
    std::mt19937_64 rng(11);
    Cos y = dualize(random_module(f2, rng, 3));
    CosimplicialMap<Cat> id;
    id.source = id.target = &y;
    for (std::size_t n = 0; n <= 3; ++n) id.components.push_back(y.cat.identity(y.level(n)));
    REQUIRE(id.check().empty());
    auto H = constant_homotopy<Cat>(id, HomotopyWitness<Cat>::Direction::cosimplicial);
    CHECK(check_homotopy(id, id, H).empty());

    // corrupting one component must be detected
    auto bad = H;
    auto& mtx = bad.components[2][1];
    mtx.at(0, 0) = f2.add(mtx.at(0, 0), f2.one());
    CHECK(!check_homotopy(id, id, bad).empty());
}

TEST_CASE("the interval contracts: hand-built simplicial witness") {
    PrimeField f2(2);
    auto d1 = standard_simplex(1, 3);
    Sim x = to_generic(SimplicialModule<PrimeField>::linearize(f2, d1.cx));

    // f collapses everything to the vertex 0; g is the identity
    SimplicialMapIn<Cat> f, g;
    f.source = f.target = &x;
    g.source = g.target = &x;
    for (std::size_t n = 0; n <= 3; ++n) {
        g.components.push_back(x.cat.identity(x.level(n)));
        Matrix<PrimeField> c(f2, x.level(n), x.level(n));
        std::size_t v0 = d1.find(n, {OrdinalMap(n, 1, std::vector<std::size_t>(n + 1, 0))});
        for (std::size_t j = 0; j < x.level(n); ++j) c.at(v0, j) = f2.one();
        f.components.push_back(c);
    }
    REQUIRE(f.check().empty());
    REQUIRE(g.check().empty());

    // H_n^alpha sends the basis simplex beta to min(beta, alpha) pointwise
    HomotopyWitness<Cat> H;
    H.direction = HomotopyWitness<Cat>::Direction::simplicial;
    H.components.resize(4);
    for (std::size_t n = 0; n <= 3; ++n)
        for (const auto& alpha : enumerate_monotone(n, 1)) {
            Matrix<PrimeField> m(f2, x.level(n), x.level(n));
            for (std::size_t j = 0; j < x.level(n); ++j) {
                const OrdinalMap& beta = d1.labels[n][j][0];
                std::vector<std::size_t> mn(n + 1);
                for (std::size_t i = 0; i <= n; ++i) mn[i] = std::min(beta(i), alpha(i));
                m.at(d1.find(n, {OrdinalMap(n, 1, mn)}), j) = f2.one();
            }
            H.components[n].push_back(m);
        }
    CHECK(check_homotopy(f, g, H).empty());

    // negative control: zero out one component entry
    auto bad = H;
    bad.components[1][1] = Matrix<PrimeField>(f2, x.level(1), x.level(1));
    CHECK(!check_homotopy(f, g, bad).empty());
}

TEST_CASE("functor application preserves homotopy witnesses") {
    PrimeField f2(2);
    auto d1 = standard_simplex(1, 2);
    Sim x = to_generic(SimplicialModule<PrimeField>::linearize(f2, d1.cx));

    SimplicialMapIn<Cat> f, g;
    f.source = f.target = &x;
    g.source = g.target = &x;
    for (std::size_t n = 0; n <= 2; ++n) {
        g.components.push_back(x.cat.identity(x.level(n)));
        Matrix<PrimeField> c(f2, x.level(n), x.level(n));
        std::size_t v0 = d1.find(n, {OrdinalMap(n, 1, std::vector<std::size_t>(n + 1, 0))});
        for (std::size_t j = 0; j < x.level(n); ++j) c.at(v0, j) = f2.one();
        f.components.push_back(c);
    }
    HomotopyWitness<Cat> H;
    H.direction = HomotopyWitness<Cat>::Direction::simplicial;
    H.components.resize(3);
    for (std::size_t n = 0; n <= 2; ++n)
        for (const auto& alpha : enumerate_monotone(n, 1)) {
            Matrix<PrimeField> m(f2, x.level(n), x.level(n));
            for (std::size_t j = 0; j < x.level(n); ++j) {
                const OrdinalMap& beta = d1.labels[n][j][0];
                std::vector<std::size_t> mn(n + 1);
                for (std::size_t i = 0; i <= n; ++i) mn[i] = std::min(beta(i), alpha(i));
                m.at(d1.find(n, {OrdinalMap(n, 1, mn)}), j) = f2.one();
            }
            H.components[n].push_back(m);
        }
    REQUIRE(check_homotopy(f, g, H).empty());

    // the doubling functor V -> V + V, applied levelwise
    Sim x2;
    x2.cat = x.cat;
    for (auto v : x.levels) x2.levels.push_back(2 * v);
    x2.face.resize(x.face.size());
    x2.degen.resize(x.degen.size());
    for (std::size_t n = 1; n <= 2; ++n)
        for (auto& mtx : x.face[n]) x2.face[n].push_back(mtx.direct_sum(mtx));
    for (std::size_t n = 0; n + 1 <= 2; ++n)
        for (auto& mtx : x.degen[n]) x2.degen[n].push_back(mtx.direct_sum(mtx));
    REQUIRE(x2.check().empty());
    SimplicialMapIn<Cat> f2m, g2m;
    f2m.source = f2m.target = &x2;
    g2m.source = g2m.target = &x2;
    for (std::size_t n = 0; n <= 2; ++n) {
        f2m.components.push_back(f.components[n].direct_sum(f.components[n]));
        g2m.components.push_back(g.components[n].direct_sum(g.components[n]));
    }
    HomotopyWitness<Cat> H2;
    H2.direction = H.direction;
    H2.components.resize(3);
    for (std::size_t n = 0; n <= 2; ++n)
        for (auto& mtx : H.components[n])
            H2.components[n].push_back(mtx.direct_sum(mtx));
    CHECK(check_homotopy(f2m, g2m, H2).empty());
}

TEST_CASE("edgewise copy maps are pairwise homotopic") {
    PrimeField f2(2);
    std::mt19937_64 rng(13);
    for (int fixture = 0; fixture < 3; ++fixture) {
        Cos y = dualize(random_module(f2, rng, 8));
        REQUIRE(y.check().empty());
        for (std::size_t k = 2; k <= 3; ++k) {
            Cos sub = subdiv_pullback(y, k);
            REQUIRE(sub.check().empty());
            Cos ytr = truncate_cosimplicial(y, sub.s_max());
            for (std::size_t l = 1; l <= k; ++l)
                for (std::size_t lp = l + 1; lp <= k; ++lp) {
                    auto f = subdiv_copy_map(y, ytr, sub, SubdivisionSpec(k, l));
                    auto g = subdiv_copy_map(y, ytr, sub, SubdivisionSpec(k, lp));
                    REQUIRE(f.check().empty());
                    REQUIRE(g.check().empty());
                    auto H = subdiv_copy_homotopy(y, k, l, lp, sub.s_max() + 1);
                    INFO("k=" << k << " l=" << l << " l'=" << lp);
                    CHECK(check_homotopy(f, g, H).empty());
                }
        }
    }
}
