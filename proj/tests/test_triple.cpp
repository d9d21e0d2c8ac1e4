#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bkc/triple.hpp"

using namespace bkc;

using F = PrimeField;
using Cat = ModuleCat<F>;

namespace {

Matrix<F> eye(F f, std::size_t n) { return Matrix<F>::identity(f, n); }

/// Direct tensor-shuffle assembly of the cobar coface/codegeneracy for the
/// A (x) - triple: insert the unit (resp. multiply) at position i inside
/// A^{(x)(n+1)} (x) X.
Matrix<F> direct_coface(const AlgebraData<F>& a, std::size_t x_dim, std::size_t n,
                        std::size_t i) {
    F f = a.field;
    std::size_t left = 1, right = x_dim;
    for (std::size_t j = 0; j < i; ++j) left *= a.dim;
    for (std::size_t j = 0; j < n - i; ++j) right *= a.dim;
    return eye(f, left).kron(a.unit.kron(eye(f, right)));
}

Matrix<F> direct_codegen(const AlgebraData<F>& a, std::size_t x_dim, std::size_t n,
                         std::size_t i) {
    F f = a.field;
    std::size_t left = 1, right = x_dim;
    for (std::size_t j = 0; j < i; ++j) left *= a.dim;
    for (std::size_t j = 0; j < n - i; ++j) right *= a.dim;
    return eye(f, left).kron(a.mult.kron(eye(f, right)));
}

} // namespace

TEST_CASE("identity triple and cotriple satisfy all axioms") {
    F f2(2);
    Cat cat{f2};
    auto r = identity_triple(cat);
    auto s = identity_cotriple(cat);
    std::vector<std::size_t> objs{0, 1, 3};
    CHECK(verify_triple(r, objs).all_pass());
    CHECK(verify_cotriple(s, objs).all_pass());
}

TEST_CASE("tensor triples satisfy the axioms, a corrupted multiplication fails") {
    F f2(2);
    for (auto a : {algebra_dual_numbers(f2), algebra_product(f2, 2), algebra_product(f2, 3)}) {
        REQUIRE(a.check().empty());
        auto r = tensor_triple(a);
        std::vector<std::size_t> objs{1, 2};
        std::mt19937_64 rng(31);
        Matrix<F> u(f2, 2, 1);
        u.at(0, 0) = f2.one();
        CHECK(verify_triple(r, objs, {u}).all_pass());
    }
    // a genuinely non-associative unital table on basis {1, u, v}:
    // u*u = v, v*v = u, u*v = v*u = 0, so (u*u)*v = u but u*(u*v) = 0
    AlgebraData<F> bad;
    bad.field = f2;
    bad.dim = 3;
    bad.unit = Matrix<F>(f2, 3, 1);
    bad.unit.at(0, 0) = f2.one();
    bad.mult = Matrix<F>(f2, 3, 9);
    for (std::size_t j = 0; j < 3; ++j) {
        bad.mult.at(j, 0 * 3 + j) = f2.one();              // 1 * e_j
        if (j > 0) bad.mult.at(j, j * 3 + 0) = f2.one();   // e_j * 1
    }
    bad.mult.at(2, 1 * 3 + 1) = f2.one();  // u*u = v
    bad.mult.at(1, 2 * 3 + 2) = f2.one();  // v*v = u
    CHECK(bad.check() == "algebra: associativity");
    CHECK_THROWS_AS(tensor_triple(bad), std::invalid_argument);
    // bypass the algebra check to see the triple verifier catch it directly
    auto r = tensor_triple(algebra_product(f2, 3));
    r.unit = [bad, f2](const std::size_t& d) { return bad.unit.kron(eye(f2, d)); };
    r.mult = [bad, f2](const std::size_t& d) { return bad.mult.kron(eye(f2, d)); };
    auto rep = verify_triple(r, {1});
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.first_failure().find("associativity") != std::string::npos);
}

TEST_CASE("cotriple verifier rejects a corrupted comultiplication") {
    F f2(2);
    Cat cat{f2};
    auto s = identity_cotriple(cat);
    s.comult = [cat](const std::size_t& x) { return cat.zero(x, x); };
    CHECK_FALSE(verify_cotriple(s, {2}).all_pass());
}

TEST_CASE("standard resolution of the identity triple is the constant object") {
    F f3(3);
    Cat cat{f3};
    auto r = identity_triple(cat);
    auto res = standard_resolution(r, std::size_t(2), 3);
    for (std::size_t n = 0; n <= 3; ++n) CHECK(res.object.level(n) == 2);
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t i = 0; i <= n; ++i) CHECK(res.object.d(n, i) == eye(f3, 2));
}

TEST_CASE("cobar resolution matches direct tensor assembly") {
    F f2(2);
    for (auto a : {algebra_dual_numbers(f2), algebra_product(f2, 2)}) {
        auto r = tensor_triple(a);
        const std::size_t x = 1;
        auto res = standard_resolution(r, x, 3);
        REQUIRE(res.object.check().empty());
        std::size_t expect = a.dim;
        for (std::size_t n = 0; n <= 3; ++n) {
            CHECK(res.object.level(n) == expect);
            expect *= a.dim;
        }
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                CHECK(res.object.d(n, i) == direct_coface(a, x, n, i));
        for (std::size_t n = 0; n + 1 <= 3; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                CHECK(res.object.s(n, i) == direct_codegen(a, x, n, i));
        // the two cofaces out of level 0 equalize the augmentation
        CHECK(res.object.d(1, 0) * res.augmentation == res.object.d(1, 1) * res.augmentation);
    }
}

TEST_CASE("mixed resolution with the identity cotriple equals the standard resolution") {
    F f2(2);
    Cat cat{f2};
    auto s = identity_cotriple(cat);
    for (auto a : {algebra_dual_numbers(f2), algebra_product(f2, 3)}) {
        auto r = tensor_triple(a);
        for (std::size_t x : {1u, 2u}) {
            auto std_res = standard_resolution(r, std::size_t(x), 3);
            auto mix_res = mixed_resolution(s, r, std::size_t(x), 3);
            CHECK(mix_res.object.levels == std_res.object.levels);
            CHECK(mix_res.object.coface == std_res.object.coface);
            CHECK(mix_res.object.codegen == std_res.object.codegen);
            CHECK(mix_res.augmentation == std_res.augmentation);
        }
    }
}

TEST_CASE("resolution of a free object contracts onto the augmentation") {
    F f2(2);
    Cat cat{f2};
    auto s = identity_cotriple(cat);
    for (auto a : {algebra_dual_numbers(f2), algebra_product(f2, 2)}) {
        auto r = tensor_triple(a);
        const std::size_t y = 2;  // resolve X = RY
        auto res = mixed_resolution(s, r, r.ob(y), 3);
        auto con = contraction_witness_right(s, r, res, y);
        CosimplicialMap<Cat> id_map, collapse;
        id_map.source = collapse.source = &res.object;
        id_map.target = collapse.target = &res.object;
        for (std::size_t n = 0; n <= 3; ++n) id_map.components.push_back(cat.identity(res.object.level(n)));
        collapse.components = con.collapse;
        REQUIRE(id_map.check().empty());
        REQUIRE(collapse.check().empty());
        REQUIRE(con.identity_first);
        CHECK(check_homotopy(id_map, collapse, con.witness).empty());

        // negative control: perturbing one interior witness component breaks it
        auto broken = con.witness;
        broken.components[2][1] = cat.zero(res.object.level(2), res.object.level(2));
        CHECK_FALSE(check_homotopy(id_map, collapse, broken).empty());

        // cochain cohomology therefore collapses onto the augmentation object
        CosimplicialSimplicialModule<F> grid;
        grid.field = f2;
        grid.cols.resize(4);
        grid.coface.resize(4);
        grid.codegen.resize(4);
        for (std::size_t n = 0; n <= 3; ++n) {
            grid.cols[n] = SimplicialModule<F>::constant(f2, res.object.level(n), 0);
            if (n >= 1)
                for (std::size_t i = 0; i <= n; ++i)
                    grid.coface[n].push_back({res.object.d(n, i)});
            if (n + 1 <= 3)
                for (std::size_t i = 0; i <= n; ++i)
                    grid.codegen[n].push_back({res.object.s(n, i)});
        }
        auto row = grid.row(0);
        auto cc = conormalized_cochain(row);
        CHECK(cc.cohomology_dim(0) == res.aug_obj);  // = dim of S R Y
        for (std::size_t k = 1; k + 1 <= 3; ++k) CHECK(cc.cohomology_dim(k) == 0);
    }
}

TEST_CASE("free cover of a resolution contracts from the other side") {
    F f2(2);
    Cat cat{f2};
    auto s = identity_cotriple(cat);
    auto a = algebra_product(f2, 2);
    auto r = tensor_triple(a);
    const std::size_t x = 1;
    auto res = mixed_resolution(s, r, x, 3);
    auto rres = apply_r_levelwise(r, res);
    auto con = contraction_witness_left(s, r, rres, x);
    CosimplicialMap<Cat> id_map, collapse;
    id_map.source = collapse.source = &rres.object;
    id_map.target = collapse.target = &rres.object;
    for (std::size_t n = 0; n <= 3; ++n)
        id_map.components.push_back(cat.identity(rres.object.level(n)));
    collapse.components = con.collapse;
    REQUIRE(id_map.check().empty());
    REQUIRE(collapse.check().empty());
    REQUIRE_FALSE(con.identity_first);
    // the extra codegeneracy sits at the bottom, so the collapse is on the
    // alpha = 0 side of the witness
    CHECK(check_homotopy(collapse, id_map, con.witness).empty());
}

TEST_CASE("triple maps from algebra homomorphisms verify; a non-map fails") {
    F f2(2);
    auto a = algebra_product(f2, 2);
    auto b = algebra_product(f2, 3);
    auto ra = tensor_triple(a);
    auto rb = tensor_triple(b);
    // (u, v) -> (u, v, v)
    Matrix<F> phi(f2, 3, 2);
    phi.at(0, 0) = phi.at(1, 1) = phi.at(2, 1) = f2.one();
    // (u, v) -> (u, u, v)
    Matrix<F> psi(f2, 3, 2);
    psi.at(0, 0) = psi.at(1, 0) = psi.at(2, 1) = f2.one();
    auto f = algebra_triple_map(ra, rb, phi);
    auto g = algebra_triple_map(ra, rb, psi);
    std::vector<std::size_t> objs{1, 2};
    Matrix<F> u(f2, 2, 1);
    u.at(0, 0) = f2.one();
    CHECK(verify_triple_map(f, objs, {u}).all_pass());
    CHECK(verify_triple_map(g, objs, {u}).all_pass());
    // not an algebra map: kills the unit
    Matrix<F> chi(f2, 3, 2);
    chi.at(0, 0) = f2.one();
    auto h = algebra_triple_map(ra, rb, chi);
    CHECK_FALSE(verify_triple_map(h, objs).all_pass());
}

TEST_CASE("juxtaposition words give a homotopy between induced resolution maps") {
    F f2(2);
    auto a = algebra_product(f2, 2);
    auto b = algebra_product(f2, 3);
    auto ra = tensor_triple(a);
    auto rb = tensor_triple(b);
    Matrix<F> phi(f2, 3, 2);
    phi.at(0, 0) = phi.at(1, 1) = phi.at(2, 1) = f2.one();
    Matrix<F> psi(f2, 3, 2);
    psi.at(0, 0) = psi.at(1, 0) = psi.at(2, 1) = f2.one();
    auto f = algebra_triple_map(ra, rb, phi);
    auto g = algebra_triple_map(ra, rb, psi);
    const std::size_t x = 1;
    auto res_a = standard_resolution(ra, x, 3);
    auto res_b = standard_resolution(rb, x, 3);
    CosimplicialMap<Cat> fm, gm;
    fm.source = gm.source = &res_a.object;
    fm.target = gm.target = &res_b.object;
    fm.components = resolution_map_components(f, x, 3);
    gm.components = resolution_map_components(g, x, 3);
    REQUIRE(fm.check().empty());
    REQUIRE(gm.check().empty());
    CHECK(fm.components[1] != gm.components[1]);  // genuinely distinct maps
    auto h = triple_map_homotopy(f, g, x, 3);
    CHECK(check_homotopy(fm, gm, h).empty());
}

TEST_CASE("completion of a module along a product algebra recovers the module") {
    F f2(2);
    Cat cat{f2};
    auto s = identity_cotriple(cat);
    auto a = algebra_product(f2, 2);
    auto r = tensor_triple(a);
    auto [lin_ob, lin_mor] = module_linearization(f2, 2);
    auto rep = completion<Cat, F>(s, r, std::size_t(1), 3, 2, 2, lin_ob, lin_mor);
    // homotopy of the completion equals the homotopy of X itself
    REQUIRE(rep.homology.size() == 3);
    CHECK(rep.homology[0] == 1);
    CHECK(rep.homology[1] == 0);
    CHECK(rep.reliable[0]);
    // the spectral sequence is concentrated in filtration 0
    const auto& p2 = rep.ss.page(2);
    for (std::size_t si = 0; si < p2.entries.size(); ++si)
        for (std::size_t t = 0; t < p2.entries[si].size(); ++t)
            if (p2.entries[si][t].reliable && p2.entries[si][t].in_mask)
                CHECK(p2.entries[si][t].dim == ((si == 0 && t == 0) ? 1u : 0u));
    // the unit map pi_0(X) -> H_0 of the completion is an isomorphism
    CHECK(rep.completion_iso[0]);
    CHECK(rep.completion_map[0].rows() == 1);
    CHECK(rank(rep.completion_map[0]) == 1);
}

TEST_CASE("completion of the zero module is zero") {
    F f2(2);
    Cat cat{f2};
    auto s = identity_cotriple(cat);
    auto r = tensor_triple(algebra_dual_numbers(f2));
    auto [lin_ob, lin_mor] = module_linearization(f2, 2);
    auto rep = completion<Cat, F>(s, r, std::size_t(0), 3, 2, 2, lin_ob, lin_mor);
    for (auto h : rep.homology) CHECK(h == 0);
    CHECK(rep.completion_iso[0]);  // 0 -> 0 is an isomorphism
}

TEST_CASE("distinct triple maps induce the same map on completion homology") {
    F f2(2);
    auto a = algebra_product(f2, 2);
    auto b = algebra_product(f2, 3);
    auto ra = tensor_triple(a);
    auto rb = tensor_triple(b);
    Matrix<F> phi(f2, 3, 2);
    phi.at(0, 0) = phi.at(1, 1) = phi.at(2, 1) = f2.one();
    Matrix<F> psi(f2, 3, 2);
    psi.at(0, 0) = psi.at(1, 0) = psi.at(2, 1) = f2.one();
    auto f = algebra_triple_map(ra, rb, phi);
    auto g = algebra_triple_map(ra, rb, psi);
    auto [lin_ob, lin_mor] = module_linearization(f2, 0);
    auto rep = completion_naturality<Cat, F>(f, g, std::size_t(1), 3, 0, lin_ob, lin_mor);
    CHECK(rep.maps_verified);
    CHECK(rep.witness_ok);
    CHECK(rep.equal_on_homology);
    // the degree carrying the completion itself is inside the compared window
    CHECK(rep.compared[3]);
    CHECK(rep.left[3] == rep.right[3]);
    // the comparison has power: against the zero cochain map it detects a
    // difference in the degree where the completion is nonzero
    bool left_nonzero = false;
    for (const auto& m : rep.left)
        if (m.rows() > 0 && rank(m) > 0) left_nonzero = true;
    CHECK(left_nonzero);
}
