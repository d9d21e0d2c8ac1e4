#ifndef BKC_COSIMPLICIAL_HPP
#define BKC_COSIMPLICIAL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkc/matrix.hpp"
#include "bkc/ordinal.hpp"
#include "bkc/simplicial_set.hpp"

namespace bkc {

/// The module category over an exact field: objects are dimensions,
/// morphisms are matrices. compose(f, g) means "g after f". This is the
/// concrete-category handle used by the generic (co)simplicial machinery;
/// any type with the same member set can be substituted.
template <class F>
struct ModuleCat {
    using Obj = std::size_t;
    using Mor = Matrix<F>;

    F field{};

    Mor identity(Obj v) const { return Mor::identity(field, v); }
    Mor compose(const Mor& f, const Mor& g) const {
        if (g.cols() != f.rows())
            throw std::invalid_argument("ModuleCat::compose: shape mismatch");
        return g * f;
    }
    bool eq(const Mor& f, const Mor& g) const { return f == g; }
    Obj source(const Mor& f) const { return f.cols(); }
    Obj target(const Mor& f) const { return f.rows(); }
    Mor zero(Obj src, Obj dst) const { return Mor(field, dst, src); }
};

/// A cosimplicial object in Cat, truncated at s_max. coface[n][i] is
/// d^i : Y^{n-1} -> Y^n (1 <= n <= s_max); codegen[n][i] is
/// s^i : Y^{n+1} -> Y^n (n+1 <= s_max).
template <class Cat>
struct CosimplicialObject {
    using Obj = typename Cat::Obj;
    using Mor = typename Cat::Mor;

    Cat cat{};
    std::vector<Obj> levels;
    std::vector<std::vector<Mor>> coface;
    std::vector<std::vector<Mor>> codegen;

    std::size_t s_max() const { return levels.empty() ? 0 : levels.size() - 1; }
    const Obj& level(std::size_t n) const { return levels.at(n); }
    const Mor& d(std::size_t n, std::size_t i) const { return coface.at(n).at(i); }
    const Mor& s(std::size_t n, std::size_t i) const { return codegen.at(n).at(i); }

    /// Y(phi) : Y^m -> Y^n for phi : [m] -> [n], assembled from the epi-mono
    /// factorization (codegeneracies first, then cofaces).
    Mor apply(const OrdinalMap& phi) const {
        EpiMonoWord w = epi_mono_factor(phi);
        std::size_t lvl = phi.source;
        Mor cur = cat.identity(level(lvl));
        for (auto it = w.degeneracies.rbegin(); it != w.degeneracies.rend(); ++it) {
            cur = cat.compose(cur, s(lvl - 1, *it));
            --lvl;
        }
        for (auto it = w.faces.rbegin(); it != w.faces.rend(); ++it) {
            cur = cat.compose(cur, d(lvl + 1, *it));
            ++lvl;
        }
        if (lvl != phi.target) throw std::logic_error("CosimplicialObject::apply: bookkeeping");
        return cur;
    }

    std::string check() const {
        const std::size_t S = s_max();
        for (std::size_t n = 1; n <= S; ++n) {
            if (coface.size() <= n || coface[n].size() != n + 1)
                return "cosimplicial: coface count at level " + std::to_string(n);
            for (std::size_t i = 0; i <= n; ++i)
                if (!(cat.source(d(n, i)) == level(n - 1)) || !(cat.target(d(n, i)) == level(n)))
                    return "cosimplicial: coface shape at level " + std::to_string(n);
        }
        for (std::size_t n = 0; n + 1 <= S; ++n) {
            if (codegen.size() <= n || codegen[n].size() != n + 1)
                return "cosimplicial: codegeneracy count at level " + std::to_string(n);
            for (std::size_t i = 0; i <= n; ++i)
                if (!(cat.source(s(n, i)) == level(n + 1)) || !(cat.target(s(n, i)) == level(n)))
                    return "cosimplicial: codegeneracy shape at level " + std::to_string(n);
        }
        // d^j d^i = d^i d^{j-1} for i < j
        for (std::size_t n = 2; n <= S; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j)
                    if (!cat.eq(cat.compose(d(n - 1, i), d(n, j)),
                                cat.compose(d(n - 1, j - 1), d(n, i))))
                        return "cosimplicial: d^j d^i at level " + std::to_string(n);
        // s^j s^i = s^i s^{j+1} for i <= j
        for (std::size_t n = 0; n + 2 <= S; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = i; j <= n; ++j)
                    if (!cat.eq(cat.compose(s(n + 1, i), s(n, j)),
                                cat.compose(s(n + 1, j + 1), s(n, i))))
                        return "cosimplicial: s^j s^i at level " + std::to_string(n);
        // s^j d^i relations
        for (std::size_t n = 0; n + 1 <= S; ++n)
            for (std::size_t i = 0; i <= n + 1; ++i)
                for (std::size_t j = 0; j <= n; ++j) {
                    Mor lhs = cat.compose(d(n + 1, i), s(n, j));
                    Mor rhs = (i == j || i == j + 1)
                                  ? cat.identity(level(n))
                                  : (i < j) ? cat.compose(s(n - 1, j - 1), d(n, i))
                                            : cat.compose(s(n - 1, j), d(n, i - 1));
                    if (!cat.eq(lhs, rhs))
                        return "cosimplicial: s^j d^i at level " + std::to_string(n);
                }
        return "";
    }
};

/// A simplicial object in Cat, truncated at n_max. face[n][i] is
/// d_i : X_n -> X_{n-1}; degen[n][i] is s_i : X_n -> X_{n+1}.
template <class Cat>
struct SimplicialObjectIn {
    using Obj = typename Cat::Obj;
    using Mor = typename Cat::Mor;

    Cat cat{};
    std::vector<Obj> levels;
    std::vector<std::vector<Mor>> face;   // face[n][i], n >= 1
    std::vector<std::vector<Mor>> degen;  // degen[n][i] : X_n -> X_{n+1}, n+1 <= n_max

    std::size_t n_max() const { return levels.empty() ? 0 : levels.size() - 1; }
    const Obj& level(std::size_t n) const { return levels.at(n); }
    const Mor& d(std::size_t n, std::size_t i) const { return face.at(n).at(i); }
    const Mor& s(std::size_t n, std::size_t i) const { return degen.at(n).at(i); }

    /// X(phi) : X_n -> X_m for phi : [m] -> [n] (contravariant; faces act
    /// first, largest index first, then degeneracies smallest first).
    Mor apply(const OrdinalMap& phi) const {
        EpiMonoWord w = epi_mono_factor(phi);
        std::size_t lvl = phi.target;
        Mor cur = cat.identity(level(lvl));
        for (std::size_t i : w.faces) {
            cur = cat.compose(cur, d(lvl, i));
            --lvl;
        }
        for (std::size_t j : w.degeneracies) {
            cur = cat.compose(cur, s(lvl, j));
            ++lvl;
        }
        if (lvl != phi.source) throw std::logic_error("SimplicialObjectIn::apply: bookkeeping");
        return cur;
    }

    std::string check() const {
        const std::size_t N = n_max();
        for (std::size_t n = 1; n <= N; ++n) {
            if (face.size() <= n || face[n].size() != n + 1)
                return "simplicial: face count at level " + std::to_string(n);
            for (std::size_t i = 0; i <= n; ++i)
                if (!(cat.source(d(n, i)) == level(n)) || !(cat.target(d(n, i)) == level(n - 1)))
                    return "simplicial: face shape at level " + std::to_string(n);
        }
        for (std::size_t n = 0; n + 1 <= N; ++n) {
            if (degen.size() <= n || degen[n].size() != n + 1)
                return "simplicial: degeneracy count at level " + std::to_string(n);
            for (std::size_t i = 0; i <= n; ++i)
                if (!(cat.source(s(n, i)) == level(n)) || !(cat.target(s(n, i)) == level(n + 1)))
                    return "simplicial: degeneracy shape at level " + std::to_string(n);
        }
        for (std::size_t n = 2; n <= N; ++n)
            for (std::size_t i = 0; i + 1 <= n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j)
                    if (!cat.eq(cat.compose(d(n, j), d(n - 1, i)),
                                cat.compose(d(n, i), d(n - 1, j - 1))))
                        return "simplicial: d_i d_j at level " + std::to_string(n);
        for (std::size_t n = 0; n + 2 <= N; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = i; j <= n; ++j)
                    if (!cat.eq(cat.compose(s(n, j), s(n + 1, i)),
                                cat.compose(s(n, i), s(n + 1, j + 1))))
                        return "simplicial: s_i s_j at level " + std::to_string(n);
        for (std::size_t n = 0; n + 1 <= N; ++n)
            for (std::size_t j = 0; j <= n; ++j)
                for (std::size_t i = 0; i <= n + 1; ++i) {
                    Mor lhs = cat.compose(s(n, j), d(n + 1, i));
                    Mor rhs = (i == j || i == j + 1)
                                  ? cat.identity(level(n))
                                  : (i < j) ? cat.compose(d(n, i), s(n - 1, j - 1))
                                            : cat.compose(d(n, i - 1), s(n - 1, j));
                    if (!cat.eq(lhs, rhs))
                        return "simplicial: d_i s_j at level " + std::to_string(n);
                }
        return "";
    }
};

/// A levelwise morphism of cosimplicial objects, checked for naturality.
template <class Cat>
struct CosimplicialMap {
    const CosimplicialObject<Cat>* source = nullptr;
    const CosimplicialObject<Cat>* target = nullptr;
    std::vector<typename Cat::Mor> components;

    std::string check() const {
        const Cat& cat = source->cat;
        const std::size_t S = source->s_max();
        if (components.size() != S + 1) return "cosimplicial map: component count";
        for (std::size_t n = 0; n <= S; ++n)
            if (!(cat.source(components[n]) == source->level(n)) ||
                !(cat.target(components[n]) == target->level(n)))
                return "cosimplicial map: shape at level " + std::to_string(n);
        for (std::size_t n = 1; n <= S; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                if (!cat.eq(cat.compose(components[n - 1], target->d(n, i)),
                            cat.compose(source->d(n, i), components[n])))
                    return "cosimplicial map: coface naturality at level " + std::to_string(n);
        for (std::size_t n = 0; n + 1 <= S; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                if (!cat.eq(cat.compose(components[n + 1], target->s(n, i)),
                            cat.compose(source->s(n, i), components[n])))
                    return "cosimplicial map: codegeneracy naturality at level " + std::to_string(n);
        return "";
    }
};

/// A levelwise morphism of simplicial objects.
template <class Cat>
struct SimplicialMapIn {
    const SimplicialObjectIn<Cat>* source = nullptr;
    const SimplicialObjectIn<Cat>* target = nullptr;
    std::vector<typename Cat::Mor> components;

    std::string check() const {
        const Cat& cat = source->cat;
        const std::size_t N = source->n_max();
        if (components.size() != N + 1) return "simplicial map: component count";
        for (std::size_t n = 0; n <= N; ++n)
            if (!(cat.source(components[n]) == source->level(n)) ||
                !(cat.target(components[n]) == target->level(n)))
                return "simplicial map: shape at level " + std::to_string(n);
        for (std::size_t n = 1; n <= N; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                if (!cat.eq(cat.compose(components[n], target->d(n, i)),
                            cat.compose(source->d(n, i), components[n - 1])))
                    return "simplicial map: face naturality at level " + std::to_string(n);
        for (std::size_t n = 0; n + 1 <= N; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                if (!cat.eq(cat.compose(components[n], target->s(n, i)),
                            cat.compose(source->s(n, i), components[n + 1])))
                    return "simplicial map: degeneracy naturality at level " + std::to_string(n);
        return "";
    }
};

// ---------------------------------------------------------------------------
// The homotopy relation with explicit witnesses.
//
// A homotopy from f to g (maps X -> Y of cosimplicial objects) is a map
// H : X -> Y^{Delta[1]}; level n of the target is a product over the n+2
// monotone maps alpha : [n] -> [1], in lexicographic order. We store H by
// its components H^n_alpha and never build the product object. The
// simplicial direction stores the adjoint X (x) Delta[1] -> Y the same way.
// alpha constant 0 recovers f, alpha constant 1 recovers g.
// ---------------------------------------------------------------------------

template <class Cat>
struct HomotopyWitness {
    enum class Direction { cosimplicial, simplicial };
    Direction direction = Direction::cosimplicial;
    // components[n][a]: a indexes enumerate_monotone(n, 1) lexicographically
    std::vector<std::vector<typename Cat::Mor>> components;

    const typename Cat::Mor& at(std::size_t n, const OrdinalMap& alpha) const {
        auto all = enumerate_monotone(n, 1);
        for (std::size_t a = 0; a < all.size(); ++a)
            if (all[a] == alpha) return components.at(n).at(a);
        throw std::invalid_argument("HomotopyWitness::at: not a map to [1]");
    }
};

/// Verify a homotopy witness between f and g. Checks component shapes, the
/// two boundary conditions, and (co)simplicial naturality in Delta[1]
/// direction within the truncation.
template <class Cat>
std::string check_homotopy(const CosimplicialMap<Cat>& f, const CosimplicialMap<Cat>& g,
                           const HomotopyWitness<Cat>& H) {
    const Cat& cat = f.source->cat;
    if (f.source != g.source || f.target != g.target) return "homotopy: f, g not parallel";
    if (H.direction != HomotopyWitness<Cat>::Direction::cosimplicial)
        return "homotopy: wrong direction";
    const auto* X = f.source;
    const auto* Y = f.target;
    const std::size_t S = X->s_max();
    if (H.components.size() != S + 1) return "homotopy: level count";
    for (std::size_t n = 0; n <= S; ++n) {
        auto alphas = enumerate_monotone(n, 1);
        if (H.components[n].size() != alphas.size()) return "homotopy: component count";
        for (const auto& m : H.components[n])
            if (!(cat.source(m) == X->level(n)) || !(cat.target(m) == Y->level(n)))
                return "homotopy: component shape at level " + std::to_string(n);
        // boundaries: alpha == const 0 -> f, alpha == const 1 -> g
        if (!cat.eq(H.components[n].front(), f.components[n]))
            return "homotopy: 0-boundary fails at level " + std::to_string(n);
        if (!cat.eq(H.components[n].back(), g.components[n]))
            return "homotopy: 1-boundary fails at level " + std::to_string(n);
    }
    // naturality: for each basic operator phi : [m] -> [n] and each alpha at
    // level n: Y(phi) o H^m_{alpha o phi} = H^n_alpha o X(phi)
    auto natural = [&](const OrdinalMap& phi) {
        for (const auto& alpha : enumerate_monotone(phi.target, 1)) {
            const auto& lhs = cat.compose(H.at(phi.source, compose(phi, alpha)),
                                          Y->apply(phi));
            const auto& rhs = cat.compose(X->apply(phi), H.at(phi.target, alpha));
            if (!cat.eq(lhs, rhs)) return false;
        }
        return true;
    };
    for (std::size_t n = 1; n <= S; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            if (!natural(coface(i, n - 1)))
                return "homotopy: coface naturality at level " + std::to_string(n);
    for (std::size_t n = 0; n + 1 <= S; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            if (!natural(codegeneracy(i, n)))
                return "homotopy: codegeneracy naturality at level " + std::to_string(n);
    return "";
}

template <class Cat>
std::string check_homotopy(const SimplicialMapIn<Cat>& f, const SimplicialMapIn<Cat>& g,
                           const HomotopyWitness<Cat>& H) {
    const Cat& cat = f.source->cat;
    if (f.source != g.source || f.target != g.target) return "homotopy: f, g not parallel";
    if (H.direction != HomotopyWitness<Cat>::Direction::simplicial)
        return "homotopy: wrong direction";
    const auto* X = f.source;
    const auto* Y = f.target;
    const std::size_t N = X->n_max();
    if (H.components.size() != N + 1) return "homotopy: level count";
    for (std::size_t n = 0; n <= N; ++n) {
        auto alphas = enumerate_monotone(n, 1);
        if (H.components[n].size() != alphas.size()) return "homotopy: component count";
        for (const auto& m : H.components[n])
            if (!(cat.source(m) == X->level(n)) || !(cat.target(m) == Y->level(n)))
                return "homotopy: component shape at level " + std::to_string(n);
        if (!cat.eq(H.components[n].front(), f.components[n]))
            return "homotopy: 0-boundary fails at level " + std::to_string(n);
        if (!cat.eq(H.components[n].back(), g.components[n]))
            return "homotopy: 1-boundary fails at level " + std::to_string(n);
    }
    // naturality: for phi : [m] -> [n], H_m^{alpha o phi} o X(phi) =
    // Y(phi) o H_n^alpha
    auto natural = [&](const OrdinalMap& phi) {
        for (const auto& alpha : enumerate_monotone(phi.target, 1)) {
            const auto& lhs = cat.compose(X->apply(phi), H.at(phi.source, compose(phi, alpha)));
            const auto& rhs = cat.compose(H.at(phi.target, alpha), Y->apply(phi));
            if (!cat.eq(lhs, rhs)) return false;
        }
        return true;
    };
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            if (!natural(coface(i, n - 1)))
                return "homotopy: face naturality at level " + std::to_string(n);
    for (std::size_t n = 0; n + 1 <= N; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            if (!natural(codegeneracy(i, n)))
                return "homotopy: degeneracy naturality at level " + std::to_string(n);
    return "";
}

/// The constant homotopy witnessing f ~ f (each component is f's component;
/// this is the witness factoring through the codegeneracy Delta[1] -> Delta[0]).
template <class Cat, class MapT>
HomotopyWitness<Cat> constant_homotopy(const MapT& f,
                                       typename HomotopyWitness<Cat>::Direction dir) {
    HomotopyWitness<Cat> H;
    H.direction = dir;
    H.components.resize(f.components.size());
    for (std::size_t n = 0; n < f.components.size(); ++n)
        H.components[n].assign(enumerate_monotone(n, 1).size(), f.components[n]);
    return H;
}

// ---------------------------------------------------------------------------
// Module-valued tensor and power constructions.
// ---------------------------------------------------------------------------

/// (X (x) K)_n is the |K_n|-fold coproduct (direct sum) of X_n; the
/// structure map for phi sends the summand of a simplex x through X(phi)
/// into the summand of K(phi)(x).
template <class F>
SimplicialObjectIn<ModuleCat<F>> tensor_with(const SimplicialObjectIn<ModuleCat<F>>& X,
                                             const FiniteSimplicialSet& K) {
    const auto& cat = X.cat;
    const F& fld = cat.field;
    const std::size_t N = X.n_max();
    if (K.dim_bound() < N)
        throw std::invalid_argument("tensor_with: K truncated below the object's bound");
    SimplicialObjectIn<ModuleCat<F>> out;
    out.cat = cat;
    out.levels.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) out.levels[n] = K.size(n) * X.level(n);
    auto structure = [&](const OrdinalMap& phi) {
        // phi : [m] -> [n]; map out.level(n) -> out.level(m)
        std::size_t n = phi.target, m = phi.source;
        Matrix<F> block = X.apply(phi);
        Matrix<F> a(fld, out.levels[m], out.levels[n]);
        for (std::size_t x = 0; x < K.size(n); ++x) {
            std::size_t y = K.act(phi, x);
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j)
                    a.at(y * X.level(m) + i, x * X.level(n) + j) = block.at(i, j);
        }
        return a;
    };
    out.face.resize(N + 1);
    out.degen.resize(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        out.face[n].resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) out.face[n][i] = structure(coface(i, n - 1));
    }
    for (std::size_t n = 0; n + 1 <= N; ++n) {
        out.degen[n].resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) out.degen[n][i] = structure(codegeneracy(i, n));
    }
    if (std::string e = out.check(); !e.empty()) throw std::logic_error("tensor_with: " + e);
    return out;
}

/// (Y^K)^n is the |K_n|-fold product of Y^n; the structure map for phi has
/// component at a simplex x of K_n given by Y(phi) out of the factor of
/// K(phi)(x).
template <class F>
CosimplicialObject<ModuleCat<F>> power_by(const CosimplicialObject<ModuleCat<F>>& Y,
                                          const FiniteSimplicialSet& K) {
    const auto& cat = Y.cat;
    const F& fld = cat.field;
    const std::size_t S = Y.s_max();
    if (K.dim_bound() < S)
        throw std::invalid_argument("power_by: K truncated below the object's bound");
    CosimplicialObject<ModuleCat<F>> out;
    out.cat = cat;
    out.levels.resize(S + 1);
    for (std::size_t n = 0; n <= S; ++n) out.levels[n] = K.size(n) * Y.level(n);
    auto structure = [&](const OrdinalMap& phi) {
        // phi : [m] -> [n]; map out.level(m) -> out.level(n)
        std::size_t n = phi.target, m = phi.source;
        Matrix<F> block = Y.apply(phi);
        Matrix<F> a(fld, out.levels[n], out.levels[m]);
        for (std::size_t x = 0; x < K.size(n); ++x) {
            std::size_t y = K.act(phi, x);
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j)
                    a.at(x * Y.level(n) + i, y * Y.level(m) + j) = block.at(i, j);
        }
        return a;
    };
    out.coface.resize(S + 1);
    out.codegen.resize(S + 1);
    for (std::size_t n = 1; n <= S; ++n) {
        out.coface[n].resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) out.coface[n][i] = structure(coface(i, n - 1));
    }
    for (std::size_t n = 0; n + 1 <= S; ++n) {
        out.codegen[n].resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) out.codegen[n][i] = structure(codegeneracy(i, n));
    }
    if (std::string e = out.check(); !e.empty()) throw std::logic_error("power_by: " + e);
    return out;
}

// ---------------------------------------------------------------------------
// Edgewise subdivision pullback and its interpolating homotopies.
// ---------------------------------------------------------------------------

/// Pullback of a cosimplicial object along the k-fold edgewise subdivision:
/// level n is Y^{k(n+1)-1}. Only levels with k(n+1)-1 <= Y.s_max() exist.
template <class Cat>
CosimplicialObject<Cat> subdiv_pullback(const CosimplicialObject<Cat>& Y, std::size_t k) {
    CosimplicialObject<Cat> out;
    out.cat = Y.cat;
    std::size_t n = 0;
    while (edgewise_object(k, n) <= Y.s_max()) {
        out.levels.push_back(Y.level(edgewise_object(k, n)));
        ++n;
    }
    if (out.levels.empty()) throw std::invalid_argument("subdiv_pullback: no levels fit");
    const std::size_t S = out.levels.size() - 1;
    out.coface.resize(S + 1);
    out.codegen.resize(S + 1);
    for (std::size_t m = 1; m <= S; ++m) {
        out.coface[m].resize(m + 1);
        for (std::size_t i = 0; i <= m; ++i)
            out.coface[m][i] = Y.apply(edgewise_map(k, coface(i, m - 1)));
    }
    for (std::size_t m = 0; m + 1 <= S; ++m) {
        out.codegen[m].resize(m + 1);
        for (std::size_t i = 0; i <= m; ++i)
            out.codegen[m][i] = Y.apply(edgewise_map(k, codegeneracy(i, m)));
    }
    if (std::string e = out.check(); !e.empty()) throw std::logic_error("subdiv_pullback: " + e);
    return out;
}

/// Truncation of a cosimplicial object to a smaller bound.
template <class Cat>
CosimplicialObject<Cat> truncate_cosimplicial(const CosimplicialObject<Cat>& Y,
                                              std::size_t new_s_max) {
    if (new_s_max > Y.s_max()) throw std::invalid_argument("truncate_cosimplicial: bound grows");
    CosimplicialObject<Cat> out;
    out.cat = Y.cat;
    out.levels.assign(Y.levels.begin(), Y.levels.begin() + new_s_max + 1);
    out.coface.assign(Y.coface.begin(),
                      Y.coface.begin() + std::min(Y.coface.size(), new_s_max + 1));
    out.coface.resize(new_s_max + 1);
    out.codegen.resize(new_s_max + 1);
    for (std::size_t n = 0; n + 1 <= new_s_max; ++n) out.codegen[n] = Y.codegen[n];
    return out;
}

/// The natural map from (a truncation of) Y to subdiv_pullback(Y, k)
/// selecting the l-th copy. `Ytrunc` must be Y truncated to the subdivided
/// object's bound; components are taken from the full Y.
template <class Cat>
CosimplicialMap<Cat> subdiv_copy_map(const CosimplicialObject<Cat>& Y,
                                     const CosimplicialObject<Cat>& Ytrunc,
                                     const CosimplicialObject<Cat>& subdivided,
                                     const SubdivisionSpec& spec) {
    CosimplicialMap<Cat> f;
    f.source = &Ytrunc;
    f.target = &subdivided;
    for (std::size_t n = 0; n < subdivided.levels.size(); ++n)
        f.components.push_back(Y.apply(u_component(spec, n)));
    return f;
}

/// The interpolating homotopy between the l-th and l'-th copy maps (l < l'):
/// H^n_alpha applies Y at the structure map built from alpha rescaled to
/// values {l-1, l'-1}.
template <class Cat>
HomotopyWitness<Cat> subdiv_copy_homotopy(const CosimplicialObject<Cat>& Y, std::size_t k,
                                          std::size_t l, std::size_t lp,
                                          std::size_t trunc_levels) {
    if (!(1 <= l && l < lp && lp <= k))
        throw std::invalid_argument("subdiv_copy_homotopy: need 1 <= l < l' <= k");
    HomotopyWitness<Cat> H;
    H.direction = HomotopyWitness<Cat>::Direction::cosimplicial;
    H.components.resize(trunc_levels);
    for (std::size_t n = 0; n + 1 <= trunc_levels; ++n)
        for (const auto& alpha : enumerate_monotone(n, 1)) {
            std::vector<std::size_t> vals(n + 1);
            for (std::size_t i = 0; i <= n; ++i) vals[i] = alpha(i) == 0 ? l - 1 : lp - 1;
            OrdinalMap phi(n, k - 1, std::move(vals));
            H.components[n].push_back(Y.apply(h_structure_map(k, phi)));
        }
    return H;
}

} // namespace bkc

#endif // BKC_COSIMPLICIAL_HPP
