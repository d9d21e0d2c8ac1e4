#ifndef BKC_TRIPLE_HPP
#define BKC_TRIPLE_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkc/chain.hpp"
#include "bkc/cosimplicial.hpp"
#include "bkc/matrix.hpp"
#include "bkc/simplicial_module.hpp"
#include "bkc/spectral.hpp"

namespace bkc {

// ---------------------------------------------------------------------------
// Triples and cotriples on a concrete category handle, with axiom checks
// quantified over declared fixture objects (the categories are infinite, so
// universal quantification is replaced by reachable-fixture verification).
// ---------------------------------------------------------------------------

template <class Cat>
struct TripleDescriptor {
    Cat cat{};
    std::function<typename Cat::Obj(const typename Cat::Obj&)> ob;
    std::function<typename Cat::Mor(const typename Cat::Mor&)> mor;
    std::function<typename Cat::Mor(const typename Cat::Obj&)> unit;  // X -> RX
    std::function<typename Cat::Mor(const typename Cat::Obj&)> mult;  // RRX -> RX
};

template <class Cat>
struct CotripleDescriptor {
    Cat cat{};
    std::function<typename Cat::Obj(const typename Cat::Obj&)> ob;
    std::function<typename Cat::Mor(const typename Cat::Mor&)> mor;
    std::function<typename Cat::Mor(const typename Cat::Obj&)> counit;  // SX -> X
    std::function<typename Cat::Mor(const typename Cat::Obj&)> comult;  // SX -> SSX
};

struct AxiomReport {
    struct Item {
        std::string axiom;
        std::size_t fixture = 0;
        bool pass = true;
    };
    std::vector<Item> items;
    bool all_pass() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& i : items)
            if (!i.pass) return i.axiom + " on fixture " + std::to_string(i.fixture);
        return "";
    }
};

template <class Cat>
AxiomReport verify_triple(const TripleDescriptor<Cat>& r,
                          const std::vector<typename Cat::Obj>& objects,
                          const std::vector<typename Cat::Mor>& morphisms = {}) {
    const Cat& c = r.cat;
    AxiomReport rep;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& x = objects[i];
        auto rx = r.ob(x);
        auto idr = c.identity(rx);
        rep.items.push_back({"unit law M(unit R) = id", i,
                             c.eq(c.compose(r.unit(rx), r.mult(x)), idr)});
        rep.items.push_back({"unit law M(R unit) = id", i,
                             c.eq(c.compose(r.mor(r.unit(x)), r.mult(x)), idr)});
        rep.items.push_back({"associativity M(M R) = M(R M)", i,
                             c.eq(c.compose(r.mult(rx), r.mult(x)),
                                  c.compose(r.mor(r.mult(x)), r.mult(x)))});
    }
    for (std::size_t i = 0; i < morphisms.size(); ++i) {
        const auto& u = morphisms[i];
        auto x = c.source(u);
        auto y = c.target(u);
        rep.items.push_back({"unit naturality", i,
                             c.eq(c.compose(u, r.unit(y)), c.compose(r.unit(x), r.mor(u)))});
        rep.items.push_back({"multiplication naturality", i,
                             c.eq(c.compose(r.mor(r.mor(u)), r.mult(y)),
                                  c.compose(r.mult(x), r.mor(u)))});
    }
    return rep;
}

template <class Cat>
AxiomReport verify_cotriple(const CotripleDescriptor<Cat>& s,
                            const std::vector<typename Cat::Obj>& objects) {
    const Cat& c = s.cat;
    AxiomReport rep;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& x = objects[i];
        auto sx = s.ob(x);
        auto ids = c.identity(sx);
        rep.items.push_back({"counit law (counit S)Delta = id", i,
                             c.eq(c.compose(s.comult(x), s.counit(sx)), ids)});
        rep.items.push_back({"counit law (S counit)Delta = id", i,
                             c.eq(c.compose(s.comult(x), s.mor(s.counit(x))), ids)});
        rep.items.push_back({"coassociativity", i,
                             c.eq(c.compose(s.comult(x), s.mor(s.comult(x))),
                                  c.compose(s.comult(x), s.comult(sx)))});
    }
    return rep;
}

template <class Cat>
TripleDescriptor<Cat> identity_triple(Cat cat) {
    TripleDescriptor<Cat> r;
    r.cat = cat;
    r.ob = [](const typename Cat::Obj& x) { return x; };
    r.mor = [](const typename Cat::Mor& f) { return f; };
    r.unit = [cat](const typename Cat::Obj& x) { return cat.identity(x); };
    r.mult = [cat](const typename Cat::Obj& x) { return cat.identity(x); };
    return r;
}

template <class Cat>
CotripleDescriptor<Cat> identity_cotriple(Cat cat) {
    CotripleDescriptor<Cat> s;
    s.cat = cat;
    s.ob = [](const typename Cat::Obj& x) { return x; };
    s.mor = [](const typename Cat::Mor& f) { return f; };
    s.counit = [cat](const typename Cat::Obj& x) { return cat.identity(x); };
    s.comult = [cat](const typename Cat::Obj& x) { return cat.identity(x); };
    return s;
}

// ---------------------------------------------------------------------------
// Finite-dimensional algebras and the A (x) - triple on modules.
// ---------------------------------------------------------------------------

template <class F>
struct AlgebraData {
    F field{};
    std::size_t dim = 0;
    Matrix<F> unit;  // dim x 1, coordinates of 1
    Matrix<F> mult;  // dim x dim^2, columns indexed by i*dim+j for e_i e_j

    std::string check() const {
        auto eye = Matrix<F>::identity(field, dim);
        if (unit.rows() != dim || unit.cols() != 1) return "algebra: unit shape";
        if (mult.rows() != dim || mult.cols() != dim * dim) return "algebra: mult shape";
        if (mult * unit.kron(eye) != eye) return "algebra: left unit law";
        if (mult * eye.kron(unit) != eye) return "algebra: right unit law";
        if (mult * mult.kron(eye) != mult * eye.kron(mult)) return "algebra: associativity";
        return "";
    }
};

/// The product algebra F x F x ... x F (k factors).
template <class F>
AlgebraData<F> algebra_product(F field, std::size_t k) {
    AlgebraData<F> a;
    a.field = field;
    a.dim = k;
    a.unit = Matrix<F>(field, k, 1);
    a.mult = Matrix<F>(field, k, k * k);
    for (std::size_t i = 0; i < k; ++i) {
        a.unit.at(i, 0) = field.one();
        a.mult.at(i, i * k + i) = field.one();
    }
    return a;
}

/// The dual numbers F[x]/(x^2), basis {1, x}.
template <class F>
AlgebraData<F> algebra_dual_numbers(F field) {
    AlgebraData<F> a;
    a.field = field;
    a.dim = 2;
    a.unit = Matrix<F>(field, 2, 1);
    a.unit.at(0, 0) = field.one();
    a.mult = Matrix<F>(field, 2, 4);
    a.mult.at(0, 0) = field.one();  // 1*1 = 1
    a.mult.at(1, 1) = field.one();  // 1*x = x
    a.mult.at(1, 2) = field.one();  // x*1 = x
    return a;
}

template <class F>
TripleDescriptor<ModuleCat<F>> tensor_triple(const AlgebraData<F>& a) {
    if (std::string e = a.check(); !e.empty()) throw std::invalid_argument("tensor_triple: " + e);
    TripleDescriptor<ModuleCat<F>> r;
    r.cat = ModuleCat<F>{a.field};
    F f = a.field;
    r.ob = [a](const std::size_t& d) { return a.dim * d; };
    r.mor = [a, f](const Matrix<F>& m) {
        return Matrix<F>::identity(f, a.dim).kron(m);
    };
    r.unit = [a, f](const std::size_t& d) { return a.unit.kron(Matrix<F>::identity(f, d)); };
    r.mult = [a, f](const std::size_t& d) { return a.mult.kron(Matrix<F>::identity(f, d)); };
    return r;
}

// ---------------------------------------------------------------------------
// Standard and mixed resolutions.
// ---------------------------------------------------------------------------

template <class Cat>
struct AugmentedCosimplicial {
    CosimplicialObject<Cat> object;
    typename Cat::Obj aug_obj{};
    typename Cat::Mor augmentation{};  // aug_obj -> level 0
};

/// Levels R^{n+1}X with cofaces inserting the unit and codegeneracies
/// applying the multiplication; augmented by the unit X -> RX.
template <class Cat>
AugmentedCosimplicial<Cat> standard_resolution(const TripleDescriptor<Cat>& r,
                                               const typename Cat::Obj& x, std::size_t s_max) {
    AugmentedCosimplicial<Cat> out;
    auto& y = out.object;
    y.cat = r.cat;
    std::vector<typename Cat::Obj> pow{x};  // pow[k] = R^k X
    for (std::size_t k = 0; k <= s_max + 2; ++k) pow.push_back(r.ob(pow.back()));
    auto iterate = [&](std::size_t i, typename Cat::Mor m) {
        for (std::size_t j = 0; j < i; ++j) m = r.mor(m);
        return m;
    };
    y.levels.resize(s_max + 1);
    y.coface.resize(s_max + 1);
    y.codegen.resize(s_max + 1);
    for (std::size_t n = 0; n <= s_max; ++n) y.levels[n] = pow[n + 1];
    for (std::size_t n = 1; n <= s_max; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            y.coface[n].push_back(iterate(i, r.unit(pow[n - i])));
    for (std::size_t n = 0; n + 1 <= s_max; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            y.codegen[n].push_back(iterate(i, r.mult(pow[n - i])));
    if (std::string e = y.check(); !e.empty())
        throw std::logic_error("standard_resolution: " + e);
    out.aug_obj = x;
    out.augmentation = r.unit(x);
    return out;
}

namespace detail {

/// Object (RS)^m X.
template <class Cat>
typename Cat::Obj rs_power(const CotripleDescriptor<Cat>& s, const TripleDescriptor<Cat>& r,
                           typename Cat::Obj x, std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) x = r.ob(s.ob(x));
    return x;
}

/// Morphism (SR)^i f.
template <class Cat>
typename Cat::Mor sr_iterate(const CotripleDescriptor<Cat>& s, const TripleDescriptor<Cat>& r,
                             std::size_t i, typename Cat::Mor f) {
    for (std::size_t j = 0; j < i; ++j) f = s.mor(r.mor(f));
    return f;
}

/// The coface core S(unit at SZ) Delta_Z : SZ -> SRSZ.
template <class Cat>
typename Cat::Mor coface_core(const CotripleDescriptor<Cat>& s, const TripleDescriptor<Cat>& r,
                              const typename Cat::Obj& z) {
    return s.cat.compose(s.comult(z), s.mor(r.unit(s.ob(z))));
}

/// The codegeneracy core M_W R(counit at RW) : RSRW -> RW.
template <class Cat>
typename Cat::Mor codegen_core(const CotripleDescriptor<Cat>& s, const TripleDescriptor<Cat>& r,
                               const typename Cat::Obj& w) {
    return s.cat.compose(r.mor(s.counit(r.ob(w))), r.mult(w));
}

} // namespace detail

/// Levels (SR)^{n+1} S X; cofaces (SR)^i [S unit S . Delta] (RS)^{n-i};
/// codegeneracies (SR)^i S [M . R counit R] S (RS)^{n-i}. With S the identity
/// cotriple this coincides with standard_resolution map for map.
///
/// coface_core optionally replaces the default S(unit at SZ) . Delta_Z
/// assembly with a fused implementation; categories whose comultiplication
/// targets are much larger than the composite's source and target (free
/// algebras) supply one to keep the intermediates bounded. The override must
/// agree with the default wherever both are computable.
template <class Cat>
AugmentedCosimplicial<Cat> mixed_resolution(
    const CotripleDescriptor<Cat>& s, const TripleDescriptor<Cat>& r,
    const typename Cat::Obj& x, std::size_t s_max,
    const std::function<typename Cat::Mor(const typename Cat::Obj&)>& coface_core = nullptr) {
    AugmentedCosimplicial<Cat> out;
    auto& y = out.object;
    y.cat = r.cat;
    y.levels.resize(s_max + 1);
    y.coface.resize(s_max + 1);
    y.codegen.resize(s_max + 1);
    for (std::size_t n = 0; n <= s_max; ++n) {
        auto o = s.ob(x);
        for (std::size_t j = 0; j <= n; ++j) o = s.ob(r.ob(o));
        y.levels[n] = o;
    }
    auto core = [&](const typename Cat::Obj& z) {
        return coface_core ? coface_core(z) : detail::coface_core(s, r, z);
    };
    for (std::size_t n = 1; n <= s_max; ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            auto z = detail::rs_power(s, r, x, n - i);
            y.coface[n].push_back(detail::sr_iterate(s, r, i, core(z)));
        }
    for (std::size_t n = 0; n + 1 <= s_max; ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            auto w = s.ob(detail::rs_power(s, r, x, n - i));
            y.codegen[n].push_back(
                detail::sr_iterate(s, r, i, s.mor(detail::codegen_core(s, r, w))));
        }
    if (std::string e = y.check(); !e.empty()) throw std::logic_error("mixed_resolution: " + e);
    out.aug_obj = s.ob(x);
    out.augmentation = core(x);
    return out;
}

// ---------------------------------------------------------------------------
// Contraction witnesses: an augmented cosimplicial object with an extra
// codegeneracy on one side is homotopy equivalent to the constant object at
// the augmentation. The witness components are explicit coface/extra-map
// composites, one per monotone [n] -> [1].
// ---------------------------------------------------------------------------

template <class Cat>
struct ContractionData {
    /// collapse[n] : Y^n -> Y^n through the augmentation object
    std::vector<typename Cat::Mor> collapse;
    HomotopyWitness<Cat> witness;
    /// true: witness runs from the identity (alpha = 0 side) to the collapse;
    /// false: from the collapse to the identity
    bool identity_first = true;
};

/// extra[j] : Y^j -> Y^{j-1} for j >= 1 and extra[0] : Y^0 -> aug_obj.
/// extra_at_top selects which side of the cosimplicial structure the extra
/// codegeneracy extends (top: the paper's s^{n+1}; bottom: s^{-1}).
template <class Cat>
ContractionData<Cat> contraction_homotopy(const CosimplicialObject<Cat>& y,
                                          const typename Cat::Mor& aug,
                                          const std::vector<typename Cat::Mor>& extra,
                                          bool extra_at_top) {
    const Cat& c = y.cat;
    const std::size_t S = y.s_max();
    ContractionData<Cat> out;
    out.identity_first = extra_at_top;
    out.witness.direction = HomotopyWitness<Cat>::Direction::cosimplicial;
    out.witness.components.resize(S + 1);
    out.collapse.resize(S + 1);
    for (std::size_t n = 0; n <= S; ++n) {
        for (const auto& alpha : enumerate_monotone(n, 1)) {
            std::size_t zeros = 0;
            for (std::size_t i = 0; i <= n; ++i)
                if (alpha(i) == 0) ++zeros;
            // with the extra map at the bottom the roles of 0 and 1 flip
            std::size_t k = extra_at_top ? zeros : (n + 1 - zeros);
            typename Cat::Mor h;
            if (k == n + 1) {
                h = c.identity(y.level(n));
            } else {
                h = c.identity(y.level(n));
                for (std::size_t j = n + 1; j-- > k;) h = c.compose(h, extra[j]);
                for (std::size_t l = k; l <= n; ++l) {
                    if (l == 0)
                        h = c.compose(h, aug);
                    else if (extra_at_top)
                        h = c.compose(h, y.d(l, std::min(k, l)));
                    else
                        h = c.compose(h, y.d(l, l - k));
                }
            }
            out.witness.components[n].push_back(h);
            if (k == 0) out.collapse[n] = h;
        }
    }
    return out;
}

/// Contraction of the mixed resolution of RY: the extra codegeneracy
/// s^{n+1} = (SR)^{n+1} S [M . R counit R] at Y.
template <class Cat>
ContractionData<Cat> contraction_witness_right(const CotripleDescriptor<Cat>& s,
                                               const TripleDescriptor<Cat>& r,
                                               const AugmentedCosimplicial<Cat>& res_of_ry,
                                               const typename Cat::Obj& y_base) {
    const std::size_t S = res_of_ry.object.s_max();
    std::vector<typename Cat::Mor> extra(S + 1);
    for (std::size_t j = 0; j <= S; ++j)
        extra[j] = detail::sr_iterate(s, r, j, s.mor(detail::codegen_core(s, r, y_base)));
    return contraction_homotopy(res_of_ry.object, res_of_ry.augmentation, extra, true);
}

/// R applied levelwise to a mixed resolution, with its bottom contraction
/// s^{-1} = [M . R counit R] S (RS)^{n+1}.
template <class Cat>
AugmentedCosimplicial<Cat> apply_r_levelwise(const TripleDescriptor<Cat>& r,
                                             const AugmentedCosimplicial<Cat>& res) {
    AugmentedCosimplicial<Cat> out;
    out.object.cat = res.object.cat;
    const std::size_t S = res.object.s_max();
    out.object.coface.resize(S + 1);
    out.object.codegen.resize(S + 1);
    for (std::size_t n = 0; n <= S; ++n) {
        out.object.levels.push_back(r.ob(res.object.level(n)));
        if (n >= 1)
            for (std::size_t i = 0; i <= n; ++i)
                out.object.coface[n].push_back(r.mor(res.object.d(n, i)));
        if (n + 1 <= S)
            for (std::size_t i = 0; i <= n; ++i)
                out.object.codegen[n].push_back(r.mor(res.object.s(n, i)));
    }
    if (std::string e = out.object.check(); !e.empty())
        throw std::logic_error("apply_r_levelwise: " + e);
    out.aug_obj = r.ob(res.aug_obj);
    out.augmentation = r.mor(res.augmentation);
    return out;
}

template <class Cat>
ContractionData<Cat> contraction_witness_left(const CotripleDescriptor<Cat>& s,
                                              const TripleDescriptor<Cat>& r,
                                              const AugmentedCosimplicial<Cat>& r_res,
                                              const typename Cat::Obj& x_base) {
    const std::size_t S = r_res.object.s_max();
    std::vector<typename Cat::Mor> extra(S + 1);
    for (std::size_t j = 0; j <= S; ++j)
        extra[j] = detail::codegen_core(s, r, s.ob(detail::rs_power(s, r, x_base, j)));
    return contraction_homotopy(r_res.object, r_res.augmentation, extra, false);
}

// ---------------------------------------------------------------------------
// Triple maps, induced resolution maps and the juxtaposition homotopy.
// ---------------------------------------------------------------------------

template <class Cat>
struct TripleMap {
    const TripleDescriptor<Cat>* src = nullptr;  // R
    const TripleDescriptor<Cat>* dst = nullptr;  // T
    std::function<typename Cat::Mor(const typename Cat::Obj&)> comp;  // RX -> TX
};

template <class Cat>
AxiomReport verify_triple_map(const TripleMap<Cat>& f,
                              const std::vector<typename Cat::Obj>& objects,
                              const std::vector<typename Cat::Mor>& morphisms = {}) {
    const Cat& c = f.src->cat;
    const auto& r = *f.src;
    const auto& t = *f.dst;
    AxiomReport rep;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& x = objects[i];
        rep.items.push_back({"triple map unit square", i,
                             c.eq(c.compose(r.unit(x), f.comp(x)), t.unit(x))});
        auto path1 = c.compose(r.mult(x), f.comp(x));
        auto path2 = c.compose(c.compose(r.mor(f.comp(x)), f.comp(t.ob(x))), t.mult(x));
        rep.items.push_back({"triple map multiplication square", i, c.eq(path1, path2)});
    }
    for (std::size_t i = 0; i < morphisms.size(); ++i) {
        const auto& u = morphisms[i];
        rep.items.push_back({"triple map naturality", i,
                             c.eq(c.compose(r.mor(u), f.comp(c.target(u))),
                                  c.compose(f.comp(c.source(u)), t.mor(u)))});
    }
    return rep;
}

/// An algebra homomorphism phi : A -> B induces the triple map
/// phi (x) id : A (x) X -> B (x) X.
template <class F>
TripleMap<ModuleCat<F>> algebra_triple_map(const TripleDescriptor<ModuleCat<F>>& ra,
                                           const TripleDescriptor<ModuleCat<F>>& rb,
                                           const Matrix<F>& phi) {
    TripleMap<ModuleCat<F>> f;
    f.src = &ra;
    f.dst = &rb;
    F fld = phi.field();
    f.comp = [phi, fld](const std::size_t& d) {
        return phi.kron(Matrix<F>::identity(fld, d));
    };
    return f;
}

namespace detail {

/// The juxtaposition map R^{n+1}X -> T^{n+1}X selecting f or g at each
/// position according to the word w (w[i] = 0 means f).
template <class Cat>
typename Cat::Mor juxtaposition(const TripleMap<Cat>& f, const TripleMap<Cat>& g,
                                const typename Cat::Obj& x, std::size_t n,
                                const std::vector<std::size_t>& w) {
    const Cat& c = f.src->cat;
    const auto& r = *f.src;
    const auto& t = *f.dst;
    std::vector<typename Cat::Obj> rpow{x};
    for (std::size_t j = 0; j < n + 1; ++j) rpow.push_back(r.ob(rpow.back()));
    typename Cat::Mor m = c.identity(rpow[n + 1]);
    for (std::size_t i = 0; i <= n; ++i) {
        auto step = (w[i] == 0) ? f.comp(rpow[n - i]) : g.comp(rpow[n - i]);
        for (std::size_t j = 0; j < i; ++j) step = t.mor(step);
        m = c.compose(m, step);
    }
    return m;
}

} // namespace detail

/// Cosimplicial map between standard resolutions induced by a triple map.
template <class Cat>
std::vector<typename Cat::Mor> resolution_map_components(const TripleMap<Cat>& f,
                                                         const typename Cat::Obj& x,
                                                         std::size_t s_max) {
    std::vector<typename Cat::Mor> out;
    for (std::size_t n = 0; n <= s_max; ++n)
        out.push_back(detail::juxtaposition(f, f, x, n, std::vector<std::size_t>(n + 1, 0)));
    return out;
}

/// Homotopy between the resolution maps of two triple maps f, g : R => T,
/// with component at alpha the juxtaposition word alpha (0 selects f).
template <class Cat>
HomotopyWitness<Cat> triple_map_homotopy(const TripleMap<Cat>& f, const TripleMap<Cat>& g,
                                         const typename Cat::Obj& x, std::size_t s_max) {
    HomotopyWitness<Cat> h;
    h.direction = HomotopyWitness<Cat>::Direction::cosimplicial;
    h.components.resize(s_max + 1);
    for (std::size_t n = 0; n <= s_max; ++n)
        for (const auto& alpha : enumerate_monotone(n, 1)) {
            std::vector<std::size_t> w(n + 1);
            for (std::size_t i = 0; i <= n; ++i) w[i] = alpha(i);
            h.components[n].push_back(detail::juxtaposition(f, g, x, n, w));
        }
    return h;
}

// ---------------------------------------------------------------------------
// Completion: linearize the mixed resolution, conormalize, and take the
// total complex and its spectral sequence. The linearization hooks provide
// the underlying simplicial module of an object and the levelwise matrices
// of a morphism.
// ---------------------------------------------------------------------------

template <class F>
struct CompletionReport {
    Bicomplex<F> bicomplex;
    TotalComplex<F> tot;
    SSReport<F> ss;
    std::vector<std::size_t> homology;       // dims of H_m(tot), m = 0..t_max
    std::vector<bool> reliable;              // truncation-safety flag per m
    std::vector<Matrix<F>> completion_map;   // pi_t(SX) -> H_t(tot)
    std::vector<bool> completion_iso;        // is the map an isomorphism
};

template <class Cat, class F>
CompletionReport<F> completion(
    const CotripleDescriptor<Cat>& s, const TripleDescriptor<Cat>& r,
    const typename Cat::Obj& x, std::size_t s_max, std::size_t t_max, std::size_t r_max,
    const std::function<SimplicialModule<F>(const typename Cat::Obj&)>& lin_ob,
    const std::function<std::vector<Matrix<F>>(const typename Cat::Mor&)>& lin_mor,
    const std::function<typename Cat::Mor(const typename Cat::Obj&)>& coface_core = nullptr) {
    auto res = mixed_resolution(s, r, x, s_max, coface_core);
    CosimplicialSimplicialModule<F> grid;
    grid.field = lin_ob(x).field;
    grid.cols.resize(s_max + 1);
    grid.coface.resize(s_max + 1);
    grid.codegen.resize(s_max + 1);
    for (std::size_t n = 0; n <= s_max; ++n) {
        grid.cols[n] = lin_ob(res.object.level(n));
        if (grid.cols[n].n_max() != t_max)
            throw std::invalid_argument("completion: linearization truncation mismatch");
        if (n >= 1)
            for (std::size_t i = 0; i <= n; ++i)
                grid.coface[n].push_back(lin_mor(res.object.d(n, i)));
        if (n + 1 <= s_max)
            for (std::size_t i = 0; i <= n; ++i)
                grid.codegen[n].push_back(lin_mor(res.object.s(n, i)));
    }
    CompletionReport<F> rep;
    rep.bicomplex = conormalize_bicomplex(grid);
    rep.tot = total_complex(rep.bicomplex, s_max);
    rep.ss = spectral_sequence(rep.bicomplex, r_max);
    for (std::size_t m = 0; m <= t_max; ++m) {
        rep.homology.push_back(rep.tot.homology_dim_at((long)m));
        // all summands on the diagonals m and m+1 must fit under the s-bound,
        // and the simplicial truncation must see degree m+1
        rep.reliable.push_back(s_max + m >= t_max + 1 && m + 1 <= t_max);
    }
    // completion map: Moore complex of the linearized SX, padded into the
    // chain grading of the total complex, included via the augmentation
    SimplicialModule<F> sx = lin_ob(res.aug_obj);
    auto moore = moore_complex(sx);
    auto aug = lin_mor(res.augmentation);
    ChainComplex<F> padded;
    padded.field = grid.field;
    padded.dims.assign(rep.tot.complex.dims.size(), 0);
    padded.diff.resize(rep.tot.complex.dims.size());
    for (std::size_t t = 0; t <= t_max; ++t) padded.dims[t + s_max] = moore.complex.dims[t];
    for (std::size_t k = 1; k < padded.dims.size(); ++k) {
        if (k > s_max && k - s_max <= t_max)
            padded.diff[k] = moore.complex.diff[k - s_max];
        else
            padded.diff[k] = Matrix<F>(grid.field, padded.dims[k - 1], padded.dims[k]);
    }
    ChainMap<F> unit_map;
    unit_map.source = &padded;
    unit_map.target = &rep.tot.complex;
    for (std::size_t k = 0; k < padded.dims.size(); ++k) {
        Matrix<F> c(grid.field, rep.tot.complex.dims[k], padded.dims[k]);
        if (k >= s_max && k - s_max <= t_max) {
            std::size_t t = k - s_max;
            auto sol = solve(rep.bicomplex.incl[0][t], aug[t] * moore.inclusion[t]);
            if (!sol) throw std::logic_error("completion: augmentation leaves normalized part");
            const auto* sm = rep.tot.find(k, 0, t);
            if (sm)
                for (std::size_t i = 0; i < sol->rows(); ++i)
                    for (std::size_t j = 0; j < sol->cols(); ++j)
                        c.at(sm->start + i, j) = sol->at(i, j);
        }
        unit_map.components.push_back(c);
    }
    if (std::string e = unit_map.check(); !e.empty())
        throw std::logic_error("completion: unit map " + e);
    for (std::size_t t = 0; t <= t_max; ++t) {
        Matrix<F> m = unit_map.induced_homology_map(t + s_max);
        bool iso = (m.rows() == m.cols()) && rank(m) == m.rows();
        rep.completion_map.push_back(std::move(m));
        rep.completion_iso.push_back(iso);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Naturality of the completion in the triple: two triple maps R => T induce
// equal maps on the homology of the total complexes.
// ---------------------------------------------------------------------------

template <class F>
struct NaturalityReport {
    bool maps_verified = false;
    bool witness_ok = false;
    bool equal_on_homology = false;
    std::vector<Matrix<F>> left, right;  // induced homology maps per degree
    // degrees whose summands all sit below the filtration truncation; only
    // there does the homotopy force equality (the chain-homotopy correction
    // at the top filtration row would need one level beyond the truncation)
    std::vector<bool> compared;
};

template <class Cat, class F>
NaturalityReport<F> completion_naturality(
    const TripleMap<Cat>& f, const TripleMap<Cat>& g, const typename Cat::Obj& x,
    std::size_t s_max, std::size_t t_max,
    const std::function<SimplicialModule<F>(const typename Cat::Obj&)>& lin_ob,
    const std::function<std::vector<Matrix<F>>(const typename Cat::Mor&)>& lin_mor) {
    NaturalityReport<F> rep;
    std::vector<typename Cat::Obj> fixtures;
    {
        auto o = x;
        for (std::size_t j = 0; j <= s_max; ++j) {
            fixtures.push_back(o);
            o = f.src->ob(o);
        }
    }
    rep.maps_verified =
        verify_triple_map(f, fixtures).all_pass() && verify_triple_map(g, fixtures).all_pass();

    auto res_r = standard_resolution(*f.src, x, s_max);
    auto res_t = standard_resolution(*f.dst, x, s_max);
    CosimplicialMap<Cat> fm, gm;
    fm.source = gm.source = &res_r.object;
    fm.target = gm.target = &res_t.object;
    fm.components = resolution_map_components(f, x, s_max);
    gm.components = resolution_map_components(g, x, s_max);
    if (!fm.check().empty() || !gm.check().empty()) return rep;
    auto h = triple_map_homotopy(f, g, x, s_max);
    rep.witness_ok = check_homotopy(fm, gm, h).empty();

    // linearize both resolutions and compare induced maps on total homology
    auto to_grid = [&](const CosimplicialObject<Cat>& y) {
        CosimplicialSimplicialModule<F> grid;
        grid.cols.resize(y.s_max() + 1);
        grid.coface.resize(y.s_max() + 1);
        grid.codegen.resize(y.s_max() + 1);
        for (std::size_t n = 0; n <= y.s_max(); ++n) {
            grid.cols[n] = lin_ob(y.level(n));
            if (n >= 1)
                for (std::size_t i = 0; i <= n; ++i) grid.coface[n].push_back(lin_mor(y.d(n, i)));
            if (n + 1 <= y.s_max())
                for (std::size_t i = 0; i <= n; ++i)
                    grid.codegen[n].push_back(lin_mor(y.s(n, i)));
        }
        grid.field = grid.cols[0].field;
        return grid;
    };
    auto gs = to_grid(res_r.object);
    auto gt = to_grid(res_t.object);
    auto bs = conormalize_bicomplex(gs);
    auto bt = conormalize_bicomplex(gt);
    auto tots = total_complex(bs, s_max);
    auto tott = total_complex(bt, s_max);
    std::vector<std::vector<Matrix<F>>> fc, gc;
    for (std::size_t n = 0; n <= s_max; ++n) {
        fc.push_back(lin_mor(fm.components[n]));
        gc.push_back(lin_mor(gm.components[n]));
    }
    auto bigf = induced_total_map(bs, tots, bt, tott, fc);
    auto bigg = induced_total_map(bs, tots, bt, tott, gc);
    rep.equal_on_homology = true;
    for (std::size_t k = 0; k < tots.complex.dims.size(); ++k) {
        rep.left.push_back(bigf.induced_homology_map(k));
        rep.right.push_back(bigg.induced_homology_map(k));
        // degree k contains a summand in filtration s_max iff k <= t_max
        rep.compared.push_back(k > t_max);
        if (rep.compared.back() && rep.left.back() != rep.right.back())
            rep.equal_on_homology = false;
    }
    return rep;
}

/// Linearization hooks for the module category: a module is the constant
/// simplicial module at itself, truncated at t_max.
template <class F>
std::pair<std::function<SimplicialModule<F>(const std::size_t&)>,
          std::function<std::vector<Matrix<F>>(const Matrix<F>&)>>
module_linearization(F field, std::size_t t_max) {
    auto ob = [field, t_max](const std::size_t& d) {
        return SimplicialModule<F>::constant(field, d, t_max);
    };
    auto mor = [t_max](const Matrix<F>& m) {
        return std::vector<Matrix<F>>(t_max + 1, m);
    };
    return {ob, mor};
}

} // namespace bkc

#endif // BKC_TRIPLE_HPP
