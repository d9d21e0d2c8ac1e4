#ifndef BKC_SMALL_OBJECT_HPP
#define BKC_SMALL_OBJECT_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "bkc/ordinal.hpp"
#include "bkc/simplicial_set.hpp"

namespace bkc {

// ---------------------------------------------------------------------------
// Bounded small-object argument on finite simplicial sets.
//
// Two engines:
//  - cofibrant replacement: stages S_0 = empty, S_{b+1} = pushout over the
//    set of ALL commuting squares (boundary -> S_b, simplex -> X); the
//    redundancy is what makes the diagonal strictly comonadic.
//  - fibrant replacement: stages T_0 = X, T_{b+1} attaches one filler per
//    horn into T_b that does not factor through T_{b-1} (the less redundant
//    variant; factorizations through earlier stages are unique because the
//    stage inclusions are injective).
// Transfinite induction is replaced by a stage bound B and a dimension
// bound N, with explicit defined-region flags on the lift constructions.
// ---------------------------------------------------------------------------

struct GeneratingSet {
    enum class Kind { boundaries, horns };
    Kind kind = Kind::boundaries;
    std::size_t dimension_bound = 0;
};

namespace detail {

/// Images of a map out of a labeled subcomplex of Delta[n] (a boundary or a
/// horn), reconstructed from the images of its codimension-1 generator faces:
/// gens lists which faces delta^i belong to the subcomplex and gen_images
/// their chosen images (level n-1 simplices of S). Returns images for every
/// simplex of the subcomplex, or nullopt if the assignment is inconsistent.
inline std::optional<std::vector<std::vector<std::size_t>>> span_subcomplex_map(
    const LabeledSimplicialSet& dom, std::size_t n, const std::vector<std::size_t>& gens,
    const std::vector<std::size_t>& gen_images, const FiniteSimplicialSet& S) {
    std::vector<std::vector<std::size_t>> img(dom.cx.dim_bound() + 1);
    for (std::size_t m = 0; m <= dom.cx.dim_bound(); ++m) {
        img[m].resize(dom.cx.size(m));
        for (std::size_t x = 0; x < dom.cx.size(m); ++x) {
            const OrdinalMap& alpha = dom.labels[m][x][0];
            std::vector<bool> hit(n + 1, false);
            for (std::size_t v : alpha.values) hit[v] = true;
            std::size_t g = FiniteSimplicialSet::npos, gpos = 0;
            for (std::size_t p = 0; p < gens.size(); ++p)
                if (!hit[gens[p]]) {
                    g = gens[p];
                    gpos = p;
                    break;
                }
            if (g == FiniteSimplicialSet::npos) return std::nullopt;
            // alpha = delta^g . beta, so the simplex is beta^*(face g)
            OrdinalMap beta;
            beta.source = m;
            beta.target = n - 1;
            for (std::size_t v : alpha.values) beta.values.push_back(v > g ? v - 1 : v);
            img[m][x] = S.act(beta, gen_images[gpos]);
        }
    }
    // validate faces/degeneracies in one sweep
    for (std::size_t m = 1; m <= dom.cx.dim_bound(); ++m)
        for (std::size_t x = 0; x < dom.cx.size(m); ++x)
            for (std::size_t i = 0; i <= m; ++i)
                if (S.face(m, img[m][x], i) != img[m - 1][dom.cx.face(m, x, i)])
                    return std::nullopt;
    for (std::size_t m = 0; m + 1 <= dom.cx.dim_bound(); ++m)
        for (std::size_t x = 0; x < dom.cx.size(m); ++x)
            for (std::size_t j = 0; j <= m; ++j)
                if (S.degeneracy(m, img[m][x], j) != img[m + 1][dom.cx.degeneracy(m, x, j)])
                    return std::nullopt;
    return img;
}

/// Enumerate, in lexicographic order, all tuples of level-(n-1) simplices of
/// S for the generator faces `gens` that satisfy the boundary compatibility
/// d_i x_j = d_{j-1} x_i (for generator indices i < j) and a per-generator
/// admissibility predicate. Calls sink(tuple) for each.
template <class Admissible, class Sink>
void enumerate_face_tuples(const FiniteSimplicialSet& S, std::size_t n,
                           const std::vector<std::size_t>& gens, Admissible admissible,
                           Sink sink) {
    std::vector<std::size_t> tuple(gens.size());
    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == gens.size()) {
            sink(tuple);
            return;
        }
        std::size_t j = gens[p];
        for (std::size_t cand = 0; cand < S.size(n - 1); ++cand) {
            if (!admissible(j, cand)) continue;
            bool ok = true;
            for (std::size_t q = 0; q < p && ok; ++q) {
                std::size_t i = gens[q];
                // i < j always holds since gens is increasing
                if (n >= 2 && S.face(n - 1, cand, i) != S.face(n - 1, tuple[q], j - 1))
                    ok = false;
            }
            if (!ok) continue;
            tuple[p] = cand;
            self(self, p + 1);
        }
    };
    rec(rec, 0);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Cofibrant replacement
// ---------------------------------------------------------------------------

struct CofAttachment {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> a_images;  // boundary -> previous stage
    std::size_t b_top = 0;                           // the n-simplex of X hit below
    std::size_t cell = 0;                            // attached cell in the result
};

struct CofReplacement {
    FiniteSimplicialSet base;    // X
    FiniteSimplicialSet result;  // S_B X
    std::size_t stage_bound = 0;
    std::size_t dim_bound = 0;
    std::vector<std::vector<std::size_t>> stage_sizes;      // per stage 0..B
    std::vector<std::vector<CofAttachment>> ledger;         // ledger[b], b = 1..B
    std::vector<std::vector<std::size_t>> eps;              // S_B -> X images
    // provenance[n][x] = (stage, attachment idx) for nondegenerate cells
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> provenance;
    // square key (n, flattened boundary images, b_top) -> attached cell,
    // one index per stage
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> square_index;
    bool complete = true;

    std::size_t stage_of(std::size_t level, std::size_t idx) const {
        for (std::size_t b = 0; b < stage_sizes.size(); ++b)
            if (idx < stage_sizes[b][level]) return b;
        throw std::logic_error("CofReplacement::stage_of: index out of range");
    }
};

namespace detail {

inline std::vector<std::size_t> square_key(std::size_t n,
                                           const std::vector<std::vector<std::size_t>>& a,
                                           std::size_t b_top) {
    std::vector<std::size_t> key{n};
    for (const auto& lvl : a) {
        key.push_back(lvl.size());
        key.insert(key.end(), lvl.begin(), lvl.end());
    }
    key.push_back(b_top);
    return key;
}

/// Extend the image table to the degeneracies of newly mapped cells: any
/// unmapped degenerate simplex whose witness base is mapped gets the
/// degenerate image.
inline void close_under_degeneracies(const FiniteSimplicialSet& dom,
                                     const FiniteSimplicialSet& tgt,
                                     std::vector<std::vector<std::size_t>>& img,
                                     std::vector<std::vector<bool>>& defined) {
    for (std::size_t m = 1; m <= dom.dim_bound(); ++m)
        for (std::size_t x = 0; x < dom.size(m); ++x) {
            if (defined[m][x] || !dom.is_degenerate(m, x)) continue;
            auto [j, y] = dom.degeneracy_witness(m, x);
            if (!defined[m - 1][y]) continue;
            img[m][x] = tgt.degeneracy(m - 1, img[m - 1][y], j);
            defined[m][x] = true;
        }
}

} // namespace detail

/// Bounded cofibrant replacement of X: B pushout stages over all commuting
/// squares of boundary inclusions up to dimension N. cell_budget caps the
/// total number of simplices; exhaustion yields complete = false.
inline CofReplacement cofibrant_stages(const FiniteSimplicialSet& x, std::size_t B,
                                       std::size_t N, std::size_t cell_budget = 100000) {
    if (x.dim_bound() != N)
        throw std::invalid_argument("cofibrant_stages: X must be truncated at the bound");
    CofReplacement rep;
    rep.base = x;
    rep.stage_bound = B;
    rep.dim_bound = N;
    rep.result = FiniteSimplicialSet(N);
    rep.eps.resize(N + 1);
    rep.provenance.resize(N + 1);
    rep.ledger.resize(B + 1);
    rep.square_index.resize(B + 1);
    rep.stage_sizes.push_back(rep.result.level_sizes());  // stage 0: empty

    std::vector<LabeledSimplicialSet> boundaries;
    for (std::size_t n = 0; n <= N; ++n) boundaries.push_back(boundary_simplex(n, N));

    auto record_cell = [&](std::size_t n, std::size_t cell, std::size_t stage,
                           std::size_t att) {
        for (std::size_t m = 0; m <= N; ++m) {
            rep.eps[m].resize(rep.result.size(m), FiniteSimplicialSet::npos);
            rep.provenance[m].resize(rep.result.size(m),
                                     {FiniteSimplicialSet::npos, FiniteSimplicialSet::npos});
        }
        rep.provenance[n][cell] = {stage, att};
        rep.eps[n][cell] = rep.ledger[stage][att].b_top;
        // epsilon on the generated degeneracies
        for (std::size_t m = 1; m <= N; ++m)
            for (std::size_t s = 0; s < rep.result.size(m); ++s)
                if (rep.eps[m][s] == FiniteSimplicialSet::npos &&
                    rep.result.is_degenerate(m, s)) {
                    auto [j, y] = rep.result.degeneracy_witness(m, s);
                    if (rep.eps[m - 1][y] != FiniteSimplicialSet::npos)
                        rep.eps[m][s] = x.degeneracy(m - 1, rep.eps[m - 1][y], j);
                }
    };

    for (std::size_t stage = 1; stage <= B && rep.complete; ++stage) {
        // snapshot: squares are enumerated against the previous stage
        const std::vector<std::size_t> prev = rep.stage_sizes.back();
        struct Pending {
            std::size_t n;
            std::vector<std::vector<std::size_t>> a;
            std::size_t b_top;
        };
        std::vector<Pending> pend;
        for (std::size_t n = 0; n <= N; ++n) {
            for (std::size_t b_top = 0; b_top < x.size(n); ++b_top) {
                if (n == 0) {
                    pend.push_back({0, std::vector<std::vector<std::size_t>>(N + 1), b_top});
                    continue;
                }
                std::vector<std::size_t> gens(n + 1);
                for (std::size_t i = 0; i <= n; ++i) gens[i] = i;
                detail::enumerate_face_tuples(
                    rep.result, n, gens,
                    [&](std::size_t i, std::size_t cand) {
                        return cand < prev[n - 1] &&
                               rep.eps[n - 1][cand] == x.face(n, b_top, i);
                    },
                    [&](const std::vector<std::size_t>& tuple) {
                        auto img = detail::span_subcomplex_map(boundaries[n], n, gens, tuple,
                                                               rep.result);
                        if (!img) return;
                        for (std::size_t m = 0; m <= N; ++m)
                            for (std::size_t s : (*img)[m])
                                if (s >= prev[m]) return;  // not a map into S_{stage-1}
                        pend.push_back({n, std::move(*img), b_top});
                    });
            }
        }
        for (const auto& p : pend) {
            if (rep.result.total_size() + (N + 1) > cell_budget) {
                rep.complete = false;
                break;
            }
            std::vector<std::size_t> faces(p.n == 0 ? 0 : p.n + 1);
            if (p.n > 0)
                for (std::size_t i = 0; i <= p.n; ++i)
                    faces[i] = p.a[p.n - 1][boundaries[p.n].find(
                        p.n - 1, {coface(i, p.n - 1)})];
            std::size_t cell = rep.result.add_cell(p.n, faces);
            rep.ledger[stage].push_back({p.n, p.a, p.b_top, cell});
            rep.square_index[stage].emplace(detail::square_key(p.n, p.a, p.b_top), cell);
            record_cell(p.n, cell, stage, rep.ledger[stage].size() - 1);
        }
        rep.stage_sizes.push_back(rep.result.level_sizes());
    }
    if (std::string e = rep.result.check_identities(); !e.empty())
        throw std::logic_error("cofibrant_stages: " + e);
    return rep;
}

/// Right-lifting-property report for eps_B against the boundary inclusions:
/// every commuting square whose boundary map lands in stage B-1 admits a
/// filler in S_B. Returns counts (tested, filled).
inline std::pair<std::size_t, std::size_t> cof_lifting_report(const CofReplacement& rep) {
    const auto& x = rep.base;
    std::size_t tested = 0, filled = 0;
    std::vector<LabeledSimplicialSet> boundaries;
    for (std::size_t n = 0; n <= rep.dim_bound; ++n)
        boundaries.push_back(boundary_simplex(n, rep.dim_bound));
    const auto& prev = rep.stage_sizes[rep.stage_sizes.size() >= 2
                                           ? rep.stage_sizes.size() - 2
                                           : 0];
    for (std::size_t n = 0; n <= rep.dim_bound; ++n)
        for (std::size_t b_top = 0; b_top < x.size(n); ++b_top) {
            auto try_square = [&](const std::vector<std::size_t>& faces) {
                ++tested;
                for (std::size_t z = 0; z < rep.result.size(n); ++z) {
                    if (rep.eps[n][z] != b_top) continue;
                    bool ok = true;
                    for (std::size_t i = 0; i < faces.size() && ok; ++i)
                        if (rep.result.face(n, z, i) != faces[i]) ok = false;
                    if (ok) {
                        ++filled;
                        return;
                    }
                }
            };
            if (n == 0) {
                try_square({});
                continue;
            }
            std::vector<std::size_t> gens(n + 1);
            for (std::size_t i = 0; i <= n; ++i) gens[i] = i;
            detail::enumerate_face_tuples(
                rep.result, n, gens,
                [&](std::size_t i, std::size_t cand) {
                    return cand < prev[n - 1] && rep.eps[n - 1][cand] == x.face(n, b_top, i);
                },
                [&](const std::vector<std::size_t>& tuple) {
                    auto img =
                        detail::span_subcomplex_map(boundaries[n], n, gens, tuple, rep.result);
                    if (!img) return;
                    std::vector<std::size_t> faces(n + 1);
                    for (std::size_t i = 0; i <= n; ++i) faces[i] = tuple[i];
                    try_square(faces);
                });
        }
    return {tested, filled};
}

/// A partially defined simplicial map produced by a bounded lift
/// construction: defined wherever the provenance chain stayed within bounds.
struct BoundedLift {
    std::vector<std::vector<std::size_t>> images;
    std::vector<std::vector<bool>> defined;
    bool total = true;
};

inline BoundedLift lift_from_total(const std::vector<std::vector<std::size_t>>& images) {
    BoundedLift l;
    l.images = images;
    l.defined.resize(images.size());
    for (std::size_t m = 0; m < images.size(); ++m) l.defined[m].assign(images[m].size(), true);
    return l;
}

/// The cofibrant lift construction: given b : S_B A -> Y (images on
/// rep_a.result into rep_y.base), produce L(b) : S_B A -> S_B Y with
/// eps_Y . L(b) = b, by replaying each cell's attaching square through b.
inline BoundedLift cof_lift(const CofReplacement& rep_a, const BoundedLift& b,
                            const CofReplacement& rep_y) {
    const std::size_t N = rep_a.dim_bound;
    if (rep_y.dim_bound != N || rep_y.stage_bound != rep_a.stage_bound)
        throw std::invalid_argument("cof_lift: incompatible bounds");
    BoundedLift out;
    out.images.resize(N + 1);
    out.defined.resize(N + 1);
    for (std::size_t m = 0; m <= N; ++m) {
        out.images[m].assign(rep_a.result.size(m), FiniteSimplicialSet::npos);
        out.defined[m].assign(rep_a.result.size(m), false);
    }
    for (std::size_t stage = 1; stage < rep_a.ledger.size(); ++stage) {
        for (const auto& att : rep_a.ledger[stage]) {
            bool ok = true;
            std::vector<std::vector<std::size_t>> a_img(N + 1);
            for (std::size_t m = 0; m <= N && ok; ++m) {
                a_img[m].resize(att.a_images[m].size());
                for (std::size_t s = 0; s < att.a_images[m].size(); ++s) {
                    std::size_t src = att.a_images[m][s];
                    if (!out.defined[m][src]) {
                        ok = false;
                        break;
                    }
                    a_img[m][s] = out.images[m][src];
                }
            }
            if (ok && !b.defined[att.n][att.cell]) ok = false;
            if (ok) {
                auto key = detail::square_key(att.n, a_img, b.images[att.n][att.cell]);
                auto it = rep_y.square_index[stage].find(key);
                if (it != rep_y.square_index[stage].end()) {
                    out.images[att.n][att.cell] = it->second;
                    out.defined[att.n][att.cell] = true;
                } else {
                    ok = false;
                }
            }
            if (!ok) out.total = false;
        }
        detail::close_under_degeneracies(rep_a.result, rep_y.result, out.images, out.defined);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fibrant replacement
// ---------------------------------------------------------------------------

struct HornAttachment {
    std::size_t n = 0, k = 0;
    std::vector<std::vector<std::size_t>> c_images;  // horn -> previous stage
    std::size_t face_cell = 0;                       // filler for the missing face
    std::size_t top_cell = 0;
};

struct FibReplacement {
    FiniteSimplicialSet base;    // X
    FiniteSimplicialSet result;  // T_B X
    std::size_t stage_bound = 0;
    std::size_t dim_bound = 0;
    std::vector<std::vector<std::size_t>> stage_sizes;  // per stage 0..B
    std::vector<std::vector<HornAttachment>> ledger;    // ledger[b], b = 1..B
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> provenance;
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> horn_index;
    bool complete = true;

    std::size_t stage_of(std::size_t level, std::size_t idx) const {
        for (std::size_t b = 0; b < stage_sizes.size(); ++b)
            if (idx < stage_sizes[b][level]) return b;
        throw std::logic_error("FibReplacement::stage_of: index out of range");
    }
};

namespace detail {

inline std::vector<std::size_t> horn_key(std::size_t n, std::size_t k,
                                         const std::vector<std::vector<std::size_t>>& c) {
    std::vector<std::size_t> key{n, k};
    for (const auto& lvl : c) {
        key.push_back(lvl.size());
        key.insert(key.end(), lvl.begin(), lvl.end());
    }
    return key;
}

} // namespace detail

/// Bounded fibrant replacement: T_0 = X; each stage attaches one filler
/// (missing face + top cell) per horn into the current stage that does not
/// factor through the previous one.
inline FibReplacement fibrant_stages(const FiniteSimplicialSet& x, std::size_t B,
                                     std::size_t N, std::size_t cell_budget = 100000) {
    if (x.dim_bound() != N)
        throw std::invalid_argument("fibrant_stages: X must be truncated at the bound");
    FibReplacement rep;
    rep.base = x;
    rep.stage_bound = B;
    rep.dim_bound = N;
    rep.result = x;
    rep.ledger.resize(B + 1);
    rep.horn_index.resize(B + 1);
    rep.provenance.resize(N + 1);
    for (std::size_t m = 0; m <= N; ++m)
        rep.provenance[m].assign(x.size(m),
                                 {FiniteSimplicialSet::npos, FiniteSimplicialSet::npos});
    rep.stage_sizes.push_back(rep.result.level_sizes());

    std::vector<std::vector<LabeledSimplicialSet>> horns(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t k = 0; k <= n; ++k) horns[n].push_back(horn(n, k, N));

    for (std::size_t stage = 1; stage <= B && rep.complete; ++stage) {
        const std::vector<std::size_t> cur = rep.stage_sizes.back();
        const std::vector<std::size_t>* older =
            rep.stage_sizes.size() >= 2 ? &rep.stage_sizes[rep.stage_sizes.size() - 2]
                                        : nullptr;
        struct Pending {
            std::size_t n, k;
            std::vector<std::vector<std::size_t>> c;
        };
        std::vector<Pending> pend;
        for (std::size_t n = 1; n <= N; ++n)
            for (std::size_t k = 0; k <= n; ++k) {
                std::vector<std::size_t> gens;
                for (std::size_t i = 0; i <= n; ++i)
                    if (i != k) gens.push_back(i);
                detail::enumerate_face_tuples(
                    rep.result, n, gens,
                    [&](std::size_t, std::size_t cand) { return cand < cur[n - 1]; },
                    [&](const std::vector<std::size_t>& tuple) {
                        auto img = detail::span_subcomplex_map(horns[n][k], n, gens, tuple,
                                                               rep.result);
                        if (!img) return;
                        bool in_cur = true, in_older = older != nullptr;
                        for (std::size_t m = 0; m <= N; ++m)
                            for (std::size_t s : (*img)[m]) {
                                if (s >= cur[m]) in_cur = false;
                                if (older && s >= (*older)[m]) in_older = false;
                            }
                        // D': horns into the current stage that do not admit
                        // a (necessarily unique) factorization through the
                        // previous stage
                        if (in_cur && !in_older) pend.push_back({n, k, std::move(*img)});
                    });
            }
        for (const auto& p : pend) {
            if (rep.result.total_size() + 2 * (N + 1) > cell_budget) {
                rep.complete = false;
                break;
            }
            std::vector<std::size_t> wfaces(p.n == 1 ? 0 : p.n);
            for (std::size_t j = 0; p.n >= 2 && j < p.n; ++j)
                wfaces[j] = p.c[p.n - 2][horns[p.n][p.k].find(
                    p.n - 2, {compose(coface(j, p.n - 2), coface(p.k, p.n - 1))})];
            std::size_t w = rep.result.add_cell(p.n - 1, wfaces);
            std::vector<std::size_t> zfaces(p.n + 1);
            for (std::size_t i = 0; i <= p.n; ++i)
                zfaces[i] = (i == p.k)
                                ? w
                                : p.c[p.n - 1][horns[p.n][p.k].find(
                                      p.n - 1, {coface(i, p.n - 1)})];
            std::size_t z = rep.result.add_cell(p.n, zfaces);
            rep.ledger[stage].push_back({p.n, p.k, p.c, w, z});
            rep.horn_index[stage].emplace(detail::horn_key(p.n, p.k, p.c), z);
            for (std::size_t m = 0; m <= N; ++m)
                rep.provenance[m].resize(
                    rep.result.size(m),
                    {FiniteSimplicialSet::npos, FiniteSimplicialSet::npos});
            rep.provenance[p.n - 1][w] = {stage, rep.ledger[stage].size() - 1};
            rep.provenance[p.n][z] = {stage, rep.ledger[stage].size() - 1};
        }
        rep.stage_sizes.push_back(rep.result.level_sizes());
    }
    if (std::string e = rep.result.check_identities(); !e.empty())
        throw std::logic_error("fibrant_stages: " + e);
    return rep;
}

/// Kan report: every horn into T_B whose images lie in a stage < B admits a
/// filler in T_B. Returns (tested, filled).
inline std::pair<std::size_t, std::size_t> fib_kan_report(const FibReplacement& rep) {
    std::size_t tested = 0, filled = 0;
    const std::size_t N = rep.dim_bound;
    std::vector<std::vector<LabeledSimplicialSet>> horns(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t k = 0; k <= n; ++k) horns[n].push_back(horn(n, k, N));
    const auto& prev = rep.stage_sizes[rep.stage_sizes.size() >= 2
                                           ? rep.stage_sizes.size() - 2
                                           : 0];
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            std::vector<std::size_t> gens;
            for (std::size_t i = 0; i <= n; ++i)
                if (i != k) gens.push_back(i);
            detail::enumerate_face_tuples(
                rep.result, n, gens,
                [&](std::size_t, std::size_t cand) { return cand < prev[n - 1]; },
                [&](const std::vector<std::size_t>& tuple) {
                    auto img =
                        detail::span_subcomplex_map(horns[n][k], n, gens, tuple, rep.result);
                    if (!img) return;
                    for (std::size_t m = 0; m <= N; ++m)
                        for (std::size_t s : (*img)[m])
                            if (s >= prev[m]) return;
                    ++tested;
                    for (std::size_t z = 0; z < rep.result.size(n); ++z) {
                        bool ok = true;
                        for (std::size_t p = 0; p < gens.size() && ok; ++p)
                            if (rep.result.face(n, z, gens[p]) != tuple[p]) ok = false;
                        if (ok) {
                            ++filled;
                            return;
                        }
                    }
                });
        }
    return {tested, filled};
}

/// The fibrant lift construction: extend a : X -> W (W = rep_w.result, the
/// fibrant replacement of its own base) along nu to L(a) : T_B X -> W,
/// replaying each attached filler through the canonical filler of the image
/// horn in W: either the ledger entry at the horn's minimal stage, or the
/// smallest-index filler already present there.
inline BoundedLift fib_lift(const FibReplacement& rep_x, const BoundedLift& a,
                            const FibReplacement& rep_w) {
    const std::size_t N = rep_x.dim_bound;
    if (rep_w.dim_bound != N)
        throw std::invalid_argument("fib_lift: incompatible dimension bounds");
    BoundedLift out;
    out.images.resize(N + 1);
    out.defined.resize(N + 1);
    for (std::size_t m = 0; m <= N; ++m) {
        out.images[m].assign(rep_x.result.size(m), FiniteSimplicialSet::npos);
        out.defined[m].assign(rep_x.result.size(m), false);
        for (std::size_t s = 0; s < rep_x.base.size(m); ++s) {
            out.images[m][s] = a.images[m][s];
            out.defined[m][s] = a.defined[m][s];
            if (!a.defined[m][s]) out.total = false;
        }
    }
    std::vector<std::vector<LabeledSimplicialSet>> horns(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t k = 0; k <= n; ++k) horns[n].push_back(horn(n, k, N));
    detail::close_under_degeneracies(rep_x.result, rep_w.result, out.images, out.defined);
    for (std::size_t stage = 1; stage < rep_x.ledger.size(); ++stage) {
        for (const auto& att : rep_x.ledger[stage]) {
            bool ok = true;
            std::vector<std::vector<std::size_t>> c_img(N + 1);
            for (std::size_t m = 0; m <= N && ok; ++m) {
                c_img[m].resize(att.c_images[m].size());
                for (std::size_t s = 0; s < att.c_images[m].size(); ++s) {
                    std::size_t src = att.c_images[m][s];
                    if (!out.defined[m][src]) {
                        ok = false;
                        break;
                    }
                    c_img[m][s] = out.images[m][src];
                }
            }
            std::size_t z = FiniteSimplicialSet::npos;
            if (ok) {
                // minimal stage of W through which the image horn factors
                std::size_t gamma = FiniteSimplicialSet::npos;
                for (std::size_t g = 0; g + 1 < rep_w.stage_sizes.size(); ++g) {
                    bool fits = true;
                    for (std::size_t m = 0; m <= N && fits; ++m)
                        for (std::size_t s : c_img[m])
                            if (s >= rep_w.stage_sizes[g][m]) {
                                fits = false;
                                break;
                            }
                    if (fits) {
                        gamma = g;
                        break;
                    }
                }
                if (gamma == FiniteSimplicialSet::npos) {
                    ok = false;
                } else {
                    auto it = rep_w.horn_index[gamma + 1].find(
                        detail::horn_key(att.n, att.k, c_img));
                    if (it != rep_w.horn_index[gamma + 1].end()) {
                        z = it->second;
                    } else {
                        // the horn already had a filler at its minimal stage;
                        // take the smallest-index one for determinism
                        const auto& hc = horns[att.n][att.k];
                        for (std::size_t cand = 0;
                             cand < rep_w.stage_sizes[gamma][att.n] &&
                             z == FiniteSimplicialSet::npos;
                             ++cand) {
                            bool fok = true;
                            for (std::size_t i = 0; i <= att.n && fok; ++i)
                                if (i != att.k &&
                                    rep_w.result.face(att.n, cand, i) !=
                                        c_img[att.n - 1][hc.find(att.n - 1,
                                                                 {coface(i, att.n - 1)})])
                                    fok = false;
                            if (fok) z = cand;
                        }
                        if (z == FiniteSimplicialSet::npos) ok = false;
                    }
                }
            }
            if (ok) {
                out.images[att.n][att.top_cell] = z;
                out.defined[att.n][att.top_cell] = true;
                out.images[att.n - 1][att.face_cell] = rep_w.result.face(att.n, z, att.k);
                out.defined[att.n - 1][att.face_cell] = true;
            } else {
                out.total = false;
            }
        }
        detail::close_under_degeneracies(rep_x.result, rep_w.result, out.images, out.defined);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Helpers for working with partially defined maps.
// ---------------------------------------------------------------------------

/// Compose partial maps: (g after f). Defined where f is defined and g is
/// defined at the image.
inline BoundedLift compose_lifts(const BoundedLift& f, const BoundedLift& g) {
    BoundedLift h;
    h.images.resize(f.images.size());
    h.defined.resize(f.images.size());
    for (std::size_t m = 0; m < f.images.size(); ++m) {
        h.images[m].assign(f.images[m].size(), FiniteSimplicialSet::npos);
        h.defined[m].assign(f.images[m].size(), false);
        for (std::size_t s = 0; s < f.images[m].size(); ++s)
            if (f.defined[m][s] && g.defined[m][f.images[m][s]]) {
                h.images[m][s] = g.images[m][f.images[m][s]];
                h.defined[m][s] = true;
            } else {
                h.total = false;
            }
    }
    return h;
}

/// Equality on the common defined region; count = number of cells compared.
inline std::pair<bool, std::size_t> lifts_agree(const BoundedLift& f, const BoundedLift& g) {
    std::size_t compared = 0;
    for (std::size_t m = 0; m < f.images.size(); ++m)
        for (std::size_t s = 0; s < f.images[m].size(); ++s)
            if (f.defined[m][s] && g.defined[m][s]) {
                ++compared;
                if (f.images[m][s] != g.images[m][s]) return {false, compared};
            }
    return {true, compared};
}

/// Validate a total lift as a simplicial map.
inline std::string check_lift(const BoundedLift& l, const FiniteSimplicialSet& src,
                              const FiniteSimplicialSet& tgt) {
    for (const auto& lvl : l.defined)
        for (bool d : lvl)
            if (!d) return "lift: not totally defined";
    SimplicialSetMap f;
    f.source = &src;
    f.target = &tgt;
    f.images = l.images;
    return f.check();
}

} // namespace bkc

#endif // BKC_SMALL_OBJECT_HPP
