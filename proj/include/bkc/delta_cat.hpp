#ifndef BKC_DELTA_CAT_HPP
#define BKC_DELTA_CAT_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bkc/ordinal.hpp"
#include "bkc/simplicial_set.hpp"

namespace bkc {

/// A finite category given by explicit data: objects 0..num_objects-1,
/// arrows with source/target, identity arrows, and a composition table.
/// compose_table maps (f, g) with f.dst == g.src to the arrow "g after f".
struct FiniteCategory {
    struct Arrow {
        std::size_t src = 0;
        std::size_t dst = 0;
        std::string label;
    };

    std::size_t num_objects = 0;
    std::vector<Arrow> arrows;
    std::vector<std::size_t> identities;  // identities[x] = id arrow of object x
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> compose_table;

    std::size_t compose(std::size_t f, std::size_t g) const {
        auto it = compose_table.find({f, g});
        if (it == compose_table.end())
            throw std::invalid_argument("FiniteCategory::compose: pair not in table");
        return it->second;
    }

    /// Exhaustive category axioms: well-formed arrows, identities, closure of
    /// the composition table over all composable pairs, unit laws, and
    /// associativity over all composable triples. Empty string on success.
    std::string check() const {
        if (identities.size() != num_objects) return "identity count mismatch";
        for (std::size_t x = 0; x < num_objects; ++x) {
            std::size_t e = identities[x];
            if (e >= arrows.size() || arrows[e].src != x || arrows[e].dst != x)
                return "bad identity at object " + std::to_string(x);
        }
        for (const auto& a : arrows)
            if (a.src >= num_objects || a.dst >= num_objects) return "arrow endpoint out of range";
        std::vector<std::vector<std::size_t>> out_of(num_objects);
        for (std::size_t f = 0; f < arrows.size(); ++f) out_of[arrows[f].src].push_back(f);
        for (std::size_t f = 0; f < arrows.size(); ++f)
            for (std::size_t g : out_of[arrows[f].dst]) {
                auto it = compose_table.find({f, g});
                if (it == compose_table.end())
                    return "composition table missing composable pair";
                std::size_t h = it->second;
                if (h >= arrows.size() || arrows[h].src != arrows[f].src ||
                    arrows[h].dst != arrows[g].dst)
                    return "composite has wrong endpoints";
            }
        for (const auto& [key, h] : compose_table) {
            auto [f, g] = key;
            if (f >= arrows.size() || g >= arrows.size() || arrows[f].dst != arrows[g].src)
                return "composition table has non-composable pair";
            (void)h;
        }
        for (std::size_t f = 0; f < arrows.size(); ++f) {
            if (compose(identities[arrows[f].src], f) != f) return "left unit law fails";
            if (compose(f, identities[arrows[f].dst]) != f) return "right unit law fails";
        }
        for (std::size_t f = 0; f < arrows.size(); ++f)
            for (std::size_t g : out_of[arrows[f].dst]) {
                std::size_t gf = compose(f, g);
                for (std::size_t h : out_of[arrows[g].dst])
                    if (compose(gf, h) != compose(f, compose(g, h)))
                        return "associativity fails";
            }
        return "";
    }
};

/// The barycentric-style subdivision category of a truncated simplicial set
/// K: objects are all simplices of K (degenerate included) up to the
/// truncation; an arrow a -> b for simplices a in level n, b in level m is a
/// monotone phi : [n] -> [m] with phi*(b) = a. Composition of a -phi-> b and
/// b -psi-> c is psi o phi, again sending c back to a.
struct SubdivisionCategory {
    FiniteCategory cat;
    // object decoding
    std::vector<std::pair<std::size_t, std::size_t>> object_simplex;  // (level, idx)
    std::vector<std::vector<std::size_t>> object_of;                  // [level][idx] -> object
    // arrow decoding: the monotone map labelling each arrow
    std::vector<OrdinalMap> arrow_map;
};

inline SubdivisionCategory delta_subdivision(const FiniteSimplicialSet& K) {
    SubdivisionCategory S;
    const std::size_t D = K.dim_bound();
    S.object_of.resize(D + 1);
    for (std::size_t n = 0; n <= D; ++n) {
        S.object_of[n].resize(K.size(n));
        for (std::size_t x = 0; x < K.size(n); ++x) {
            S.object_of[n][x] = S.object_simplex.size();
            S.object_simplex.emplace_back(n, x);
        }
    }
    S.cat.num_objects = S.object_simplex.size();

    std::map<std::tuple<std::size_t, std::size_t, OrdinalMap>, std::size_t> arrow_index;
    for (std::size_t m = 0; m <= D; ++m)
        for (std::size_t b = 0; b < K.size(m); ++b)
            for (std::size_t n = 0; n <= D; ++n)
                for (const auto& phi : enumerate_monotone(n, m)) {
                    std::size_t a = K.act(phi, b);
                    FiniteCategory::Arrow ar;
                    ar.src = S.object_of[n][a];
                    ar.dst = S.object_of[m][b];
                    ar.label = phi.to_string();
                    arrow_index.emplace(std::make_tuple(ar.src, ar.dst, phi), S.cat.arrows.size());
                    S.cat.arrows.push_back(ar);
                    S.arrow_map.push_back(phi);
                }

    S.cat.identities.resize(S.cat.num_objects);
    for (std::size_t o = 0; o < S.cat.num_objects; ++o) {
        auto [n, x] = S.object_simplex[o];
        (void)x;
        S.cat.identities[o] = arrow_index.at({o, o, ordinal_identity(n)});
    }
    for (std::size_t f = 0; f < S.cat.arrows.size(); ++f)
        for (std::size_t g = 0; g < S.cat.arrows.size(); ++g)
            if (S.cat.arrows[f].dst == S.cat.arrows[g].src)
                S.cat.compose_table[{f, g}] = arrow_index.at(
                    {S.cat.arrows[f].src, S.cat.arrows[g].dst,
                     compose(S.arrow_map[f], S.arrow_map[g])});
    return S;
}

/// The comma category of the diagonal of the ordinal category over the pair
/// ([k1], [k2]), truncated at ordinal `bound`: objects are pairs of monotone
/// maps (f : [n] -> [k1], g : [n] -> [k2]); an arrow (f,g) -> (f',g') is a
/// monotone theta : [n] -> [m] with f' o theta = f and g' o theta = g.
struct DiagComma {
    FiniteCategory cat;
    std::vector<std::tuple<std::size_t, OrdinalMap, OrdinalMap>> objects;  // (n, f, g)
    std::vector<OrdinalMap> arrow_map;
};

inline DiagComma diag_comma(std::size_t k1, std::size_t k2, std::size_t bound) {
    DiagComma C;
    std::map<std::pair<OrdinalMap, OrdinalMap>, std::size_t> obj_index;
    for (std::size_t n = 0; n <= bound; ++n)
        for (const auto& f : enumerate_monotone(n, k1))
            for (const auto& g : enumerate_monotone(n, k2)) {
                obj_index.emplace(std::make_pair(f, g), C.objects.size());
                C.objects.emplace_back(n, f, g);
            }
    C.cat.num_objects = C.objects.size();

    std::map<std::tuple<std::size_t, std::size_t, OrdinalMap>, std::size_t> arrow_index;
    for (std::size_t src = 0; src < C.objects.size(); ++src) {
        const auto& [n, f, g] = C.objects[src];
        for (std::size_t m = 0; m <= bound; ++m)
            for (const auto& theta : enumerate_monotone(n, m))
                for (const auto& f2 : enumerate_monotone(m, k1)) {
                    if (compose(theta, f2) != f) continue;
                    for (const auto& g2 : enumerate_monotone(m, k2)) {
                        if (compose(theta, g2) != g) continue;
                        std::size_t dst = obj_index.at({f2, g2});
                        FiniteCategory::Arrow ar;
                        ar.src = src;
                        ar.dst = dst;
                        ar.label = theta.to_string();
                        arrow_index.emplace(std::make_tuple(src, dst, theta), C.cat.arrows.size());
                        C.cat.arrows.push_back(ar);
                        C.arrow_map.push_back(theta);
                    }
                }
    }

    C.cat.identities.resize(C.cat.num_objects);
    for (std::size_t o = 0; o < C.cat.num_objects; ++o)
        C.cat.identities[o] = arrow_index.at({o, o, ordinal_identity(std::get<0>(C.objects[o]))});
    for (std::size_t f = 0; f < C.cat.arrows.size(); ++f)
        for (std::size_t g = 0; g < C.cat.arrows.size(); ++g)
            if (C.cat.arrows[f].dst == C.cat.arrows[g].src)
                C.cat.compose_table[{f, g}] = arrow_index.at(
                    {C.cat.arrows[f].src, C.cat.arrows[g].dst,
                     compose(C.arrow_map[f], C.arrow_map[g])});
    return C;
}

/// Check that the comma category of the diagonal over ([k1],[k2]) is
/// isomorphic to the subdivision category of Delta[k1] x Delta[k2], via the
/// tautological correspondence (n, f, g) <-> the product simplex labelled
/// (f, g). Verifies the correspondence is a bijection on objects and on
/// arrows and preserves identities and composition. Empty string on success.
inline std::string check_diag_comma_vs_subdivision(std::size_t k1, std::size_t k2,
                                                   std::size_t bound) {
    LabeledSimplicialSet P = simplex_product(k1, k2, bound);
    SubdivisionCategory S = delta_subdivision(P.cx);
    DiagComma C = diag_comma(k1, k2, bound);
    if (std::string e = S.cat.check(); !e.empty()) return "subdivision category: " + e;
    if (std::string e = C.cat.check(); !e.empty()) return "comma category: " + e;

    if (S.cat.num_objects != C.cat.num_objects) return "object counts differ";
    // object correspondence comma -> subdivision
    std::vector<std::size_t> obj_to(C.cat.num_objects);
    std::vector<bool> hit(S.cat.num_objects, false);
    for (std::size_t o = 0; o < C.cat.num_objects; ++o) {
        const auto& [n, f, g] = C.objects[o];
        std::size_t idx = P.find(n, {f, g});
        obj_to[o] = S.object_of[n][idx];
        if (hit[obj_to[o]]) return "object correspondence not injective";
        hit[obj_to[o]] = true;
    }
    if (S.cat.arrows.size() != C.cat.arrows.size()) return "arrow counts differ";
    // arrow correspondence: same monotone label, transported endpoints
    std::map<std::tuple<std::size_t, std::size_t, OrdinalMap>, std::size_t> s_arrows;
    for (std::size_t a = 0; a < S.cat.arrows.size(); ++a)
        s_arrows.emplace(std::make_tuple(S.cat.arrows[a].src, S.cat.arrows[a].dst, S.arrow_map[a]),
                         a);
    std::vector<std::size_t> arr_to(C.cat.arrows.size());
    std::vector<bool> ahit(S.cat.arrows.size(), false);
    for (std::size_t a = 0; a < C.cat.arrows.size(); ++a) {
        auto key = std::make_tuple(obj_to[C.cat.arrows[a].src], obj_to[C.cat.arrows[a].dst],
                                   C.arrow_map[a]);
        auto it = s_arrows.find(key);
        if (it == s_arrows.end()) return "comma arrow has no subdivision counterpart";
        arr_to[a] = it->second;
        if (ahit[arr_to[a]]) return "arrow correspondence not injective";
        ahit[arr_to[a]] = true;
    }
    for (std::size_t o = 0; o < C.cat.num_objects; ++o)
        if (arr_to[C.cat.identities[o]] != S.cat.identities[obj_to[o]])
            return "identities not preserved";
    for (const auto& [key, h] : C.cat.compose_table) {
        auto [f, g] = key;
        if (S.cat.compose(arr_to[f], arr_to[g]) != arr_to[h])
            return "composition not preserved";
    }
    return "";
}

} // namespace bkc

#endif // BKC_DELTA_CAT_HPP
