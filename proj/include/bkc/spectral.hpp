#ifndef BKC_SPECTRAL_HPP
#define BKC_SPECTRAL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkc/chain.hpp"
#include "bkc/cosimplicial.hpp"
#include "bkc/matrix.hpp"
#include "bkc/simplicial_module.hpp"

namespace bkc {

// ---------------------------------------------------------------------------
// Cosimplicial simplicial modules: a finite grid of spaces C^{s}_n carrying a
// simplicial structure in each column s and a cosimplicial structure in each
// row n, with the row maps natural in the column direction.
// ---------------------------------------------------------------------------

template <class F>
struct CosimplicialSimplicialModule {
    F field{};
    std::vector<SimplicialModule<F>> cols;  // cols[s], all with the same n_max
    // coface[s][i][n] : cols[s-1] level n -> cols[s] level n, s >= 1, i <= s
    std::vector<std::vector<std::vector<Matrix<F>>>> coface;
    // codegen[s][i][n] : cols[s+1] level n -> cols[s] level n, i <= s
    std::vector<std::vector<std::vector<Matrix<F>>>> codegen;

    std::size_t s_max() const { return cols.empty() ? 0 : cols.size() - 1; }
    std::size_t n_max() const { return cols.empty() ? 0 : cols.front().n_max(); }
    std::size_t dim(std::size_t s, std::size_t t) const { return cols[s].dim(t); }

    /// The cosimplicial module of simplicial level n.
    CosimplicialObject<ModuleCat<F>> row(std::size_t n) const {
        CosimplicialObject<ModuleCat<F>> y;
        y.cat = ModuleCat<F>{field};
        y.coface.resize(cols.size());
        y.codegen.resize(cols.size());
        for (std::size_t s = 0; s < cols.size(); ++s) {
            y.levels.push_back(cols[s].dim(n));
            if (s >= 1)
                for (std::size_t i = 0; i <= s; ++i) y.coface[s].push_back(coface[s][i][n]);
            if (s + 1 < cols.size())
                for (std::size_t i = 0; i <= s; ++i) y.codegen[s].push_back(codegen[s][i][n]);
        }
        return y;
    }

    std::string check() const {
        if (cols.empty()) return "grid: no columns";
        const std::size_t N = n_max();
        for (std::size_t s = 0; s < cols.size(); ++s) {
            if (cols[s].n_max() != N) return "grid: ragged simplicial truncation";
            if (std::string e = cols[s].check(); !e.empty())
                return "grid column " + std::to_string(s) + ": " + e;
        }
        if (coface.size() != cols.size() || codegen.size() != cols.size())
            return "grid: row map table sizes";
        for (std::size_t n = 0; n <= N; ++n)
            if (std::string e = row(n).check(); !e.empty())
                return "grid row " + std::to_string(n) + ": " + e;
        // naturality of the row maps in the simplicial direction
        for (std::size_t s = 1; s < cols.size(); ++s)
            for (std::size_t i = 0; i <= s; ++i) {
                for (std::size_t n = 1; n <= N; ++n)
                    for (std::size_t j = 0; j <= n; ++j)
                        if (coface[s][i][n - 1] * cols[s - 1].d(n, j) !=
                            cols[s].d(n, j) * coface[s][i][n])
                            return "grid: coface/face commutation fails";
                for (std::size_t n = 0; n + 1 <= N; ++n)
                    for (std::size_t j = 0; j <= n; ++j)
                        if (coface[s][i][n + 1] * cols[s - 1].s(n, j) !=
                            cols[s].s(n, j) * coface[s][i][n])
                            return "grid: coface/degeneracy commutation fails";
            }
        for (std::size_t s = 0; s + 1 < cols.size(); ++s)
            for (std::size_t i = 0; i <= s; ++i) {
                for (std::size_t n = 1; n <= N; ++n)
                    for (std::size_t j = 0; j <= n; ++j)
                        if (codegen[s][i][n - 1] * cols[s + 1].d(n, j) !=
                            cols[s].d(n, j) * codegen[s][i][n])
                            return "grid: codegeneracy/face commutation fails";
                for (std::size_t n = 0; n + 1 <= N; ++n)
                    for (std::size_t j = 0; j <= n; ++j)
                        if (codegen[s][i][n + 1] * cols[s + 1].s(n, j) !=
                            cols[s].s(n, j) * codegen[s][i][n])
                            return "grid: codegeneracy/degeneracy commutation fails";
            }
        return "";
    }
};

/// A cosimplicial module regarded as a grid with trivial simplicial direction.
template <class F>
CosimplicialSimplicialModule<F> from_cosimplicial(const CosimplicialObject<ModuleCat<F>>& y) {
    CosimplicialSimplicialModule<F> g;
    g.field = y.cat.field;
    const std::size_t S = y.s_max();
    g.cols.resize(S + 1);
    g.coface.resize(S + 1);
    g.codegen.resize(S + 1);
    for (std::size_t s = 0; s <= S; ++s) {
        g.cols[s].field = g.field;
        g.cols[s].dims = {y.level(s)};
        g.cols[s].face.resize(1);
        g.cols[s].degen.resize(1);
        if (s >= 1)
            for (std::size_t i = 0; i <= s; ++i) g.coface[s].push_back({y.d(s, i)});
        if (s + 1 <= S)
            for (std::size_t i = 0; i <= s; ++i) g.codegen[s].push_back({y.s(s, i)});
    }
    return g;
}

/// External product of a cosimplicial module and a simplicial module:
/// C^{s}_t = Y^s (x) X_t with row maps d^i (x) id and column maps id (x) d_i.
template <class F>
CosimplicialSimplicialModule<F> external_product(const CosimplicialObject<ModuleCat<F>>& y,
                                                 const SimplicialModule<F>& x) {
    CosimplicialSimplicialModule<F> g;
    g.field = x.field;
    const std::size_t S = y.s_max();
    const std::size_t N = x.n_max();
    g.cols.resize(S + 1);
    g.coface.resize(S + 1);
    g.codegen.resize(S + 1);
    for (std::size_t s = 0; s <= S; ++s) {
        auto eye_s = Matrix<F>::identity(g.field, y.level(s));
        g.cols[s].field = g.field;
        g.cols[s].dims.resize(N + 1);
        g.cols[s].face.resize(N + 1);
        g.cols[s].degen.resize(N + 1);
        for (std::size_t n = 0; n <= N; ++n) g.cols[s].dims[n] = y.level(s) * x.dim(n);
        for (std::size_t n = 1; n <= N; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                g.cols[s].face[n].push_back(eye_s.kron(x.d(n, i)));
        for (std::size_t n = 0; n + 1 <= N; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                g.cols[s].degen[n].push_back(eye_s.kron(x.s(n, i)));
        if (s >= 1)
            for (std::size_t i = 0; i <= s; ++i) {
                g.coface[s].emplace_back();
                for (std::size_t n = 0; n <= N; ++n)
                    g.coface[s][i].push_back(
                        y.d(s, i).kron(Matrix<F>::identity(g.field, x.dim(n))));
            }
        if (s + 1 <= S)
            for (std::size_t i = 0; i <= s; ++i) {
                g.codegen[s].emplace_back();
                for (std::size_t n = 0; n <= N; ++n)
                    g.codegen[s][i].push_back(
                        y.s(s, i).kron(Matrix<F>::identity(g.field, x.dim(n))));
            }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Bicomplexes. Horizontal differential delta raises s, vertical differential
// lowers t; the two commute on the nose (signs are introduced only when the
// total complex is assembled).
// ---------------------------------------------------------------------------

template <class F>
struct Bicomplex {
    F field{};
    std::vector<std::vector<std::size_t>> dims;  // dims[s][t]
    std::vector<std::vector<Matrix<F>>> horiz;   // horiz[s][t] : C^{s-1,t} -> C^{s,t}, s >= 1
    std::vector<std::vector<Matrix<F>>> vert;    // vert[s][t]  : C^{s,t} -> C^{s,t-1}, t >= 1
    // inclusion of C^{s,t} into the ambient grid space it was carved from
    // (filled by conormalize_bicomplex; empty for hand-built bicomplexes)
    std::vector<std::vector<Matrix<F>>> incl;

    std::size_t s_max() const { return dims.empty() ? 0 : dims.size() - 1; }
    std::size_t t_max() const { return dims.empty() ? 0 : dims.front().size() - 1; }
    std::size_t dim(std::size_t s, std::size_t t) const {
        return (s < dims.size() && t < dims[s].size()) ? dims[s][t] : 0;
    }

    std::string check() const {
        const std::size_t S = s_max(), T = t_max();
        for (std::size_t s = 0; s <= S; ++s)
            if (dims[s].size() != T + 1) return "bicomplex: ragged grid";
        for (std::size_t s = 1; s <= S; ++s)
            for (std::size_t t = 0; t <= T; ++t)
                if (horiz[s][t].rows() != dims[s][t] || horiz[s][t].cols() != dims[s - 1][t])
                    return "bicomplex: horizontal shape";
        for (std::size_t s = 0; s <= S; ++s)
            for (std::size_t t = 1; t <= T; ++t)
                if (vert[s][t].rows() != dims[s][t - 1] || vert[s][t].cols() != dims[s][t])
                    return "bicomplex: vertical shape";
        for (std::size_t s = 2; s <= S; ++s)
            for (std::size_t t = 0; t <= T; ++t)
                if (!(horiz[s][t] * horiz[s - 1][t]).is_zero())
                    return "bicomplex: delta delta != 0";
        for (std::size_t s = 0; s <= S; ++s)
            for (std::size_t t = 2; t <= T; ++t)
                if (!(vert[s][t - 1] * vert[s][t]).is_zero())
                    return "bicomplex: del del != 0";
        for (std::size_t s = 1; s <= S; ++s)
            for (std::size_t t = 1; t <= T; ++t)
                if (horiz[s][t - 1] * vert[s - 1][t] != vert[s][t] * horiz[s][t])
                    return "bicomplex: delta and del do not commute";
        return "";
    }

    /// The column complex (C^{s,*}, vert) as a chain complex.
    ChainComplex<F> column(std::size_t s) const {
        ChainComplex<F> c;
        c.field = field;
        c.dims = dims[s];
        c.diff.resize(dims[s].size());
        for (std::size_t t = 1; t <= t_max(); ++t) c.diff[t] = vert[s][t];
        return c;
    }
};

/// Double normalization of a grid: in the simplicial direction the level-t
/// space of column s is cut down to the intersection of the kernels of
/// d_1..d_t (vertical differential d_0), and in the cosimplicial direction
/// to the intersection of the kernels of the codegeneracies (horizontal
/// differential the alternating sum of cofaces).
template <class F>
Bicomplex<F> conormalize_bicomplex(const CosimplicialSimplicialModule<F>& g) {
    if (std::string e = g.check(); !e.empty())
        throw std::invalid_argument("conormalize_bicomplex: " + e);
    const F& fld = g.field;
    const std::size_t S = g.s_max(), T = g.n_max();
    Bicomplex<F> b;
    b.field = fld;
    b.dims.assign(S + 1, std::vector<std::size_t>(T + 1, 0));
    b.horiz.assign(S + 1, std::vector<Matrix<F>>(T + 1));
    b.vert.assign(S + 1, std::vector<Matrix<F>>(T + 1));
    b.incl.assign(S + 1, std::vector<Matrix<F>>(T + 1));
    for (std::size_t s = 0; s <= S; ++s)
        for (std::size_t t = 0; t <= T; ++t) {
            Matrix<F> cons(fld, 0, g.dim(s, t));
            for (std::size_t i = 1; i <= t; ++i) cons = cons.vstack(g.cols[s].d(t, i));
            for (std::size_t i = 0; i < s; ++i) cons = cons.vstack(g.codegen[s - 1][i][t]);
            b.incl[s][t] = kernel_basis(cons);
            b.dims[s][t] = b.incl[s][t].cols();
        }
    for (std::size_t s = 1; s <= S; ++s)
        for (std::size_t t = 0; t <= T; ++t) {
            Matrix<F> delta(fld, g.dim(s, t), g.dim(s - 1, t));
            for (std::size_t i = 0; i <= s; ++i) {
                Matrix<F> term = g.coface[s][i][t];
                delta = delta + ((i % 2 == 0) ? term : term.negated());
            }
            auto sol = solve(b.incl[s][t], delta * b.incl[s - 1][t]);
            if (!sol)
                throw std::logic_error("conormalize_bicomplex: delta leaves the normalized part");
            b.horiz[s][t] = *sol;
        }
    for (std::size_t s = 0; s <= S; ++s)
        for (std::size_t t = 1; t <= T; ++t) {
            auto sol = solve(b.incl[s][t - 1], g.cols[s].d(t, 0) * b.incl[s][t]);
            if (!sol)
                throw std::logic_error("conormalize_bicomplex: del leaves the normalized part");
            b.vert[s][t] = *sol;
        }
    if (std::string e = b.check(); !e.empty())
        throw std::logic_error("conormalize_bicomplex: " + e);
    return b;
}

// ---------------------------------------------------------------------------
// Total complex. Chain degree k corresponds to total degree m = t - s via
// k = m + offset with offset = s_max of the bicomplex, so that all degrees
// are nonnegative. Sign convention: the vertical differential on row s is
// scaled by (-1)^s against the horizontal one.
// ---------------------------------------------------------------------------

template <class F>
struct TotalComplex {
    ChainComplex<F> complex;
    std::size_t offset = 0;  // chain degree k <-> total degree m = k - offset
    std::size_t s_bound = 0;
    struct Summand {
        std::size_t s, t, start;
    };
    std::vector<std::vector<Summand>> layout;  // per chain degree

    static constexpr const char* sign_convention =
        "total differential = delta + (-1)^s del on row s";

    const Summand* find(std::size_t k, std::size_t s, std::size_t t) const {
        if (k >= layout.size()) return nullptr;
        for (const auto& sm : layout[k])
            if (sm.s == s && sm.t == t) return &sm;
        return nullptr;
    }
    /// Homology dimension at total degree m (may be negative down to -offset).
    std::size_t homology_dim_at(long m) const {
        long k = m + static_cast<long>(offset);
        if (k < 0 || k >= static_cast<long>(complex.dims.size())) return 0;
        return complex.homology_dim(static_cast<std::size_t>(k));
    }
};

/// Sum over the diagonals t - s = m of the bicomplex, with s restricted to
/// s <= s_bound (the tot-tower truncation); s_bound >= s_max gives the full
/// total complex. The chain-degree offset is always the full s_max so that
/// different truncations of the same bicomplex are directly comparable.
template <class F>
TotalComplex<F> total_complex(const Bicomplex<F>& b, std::size_t s_bound) {
    const F& fld = b.field;
    const std::size_t S = b.s_max(), T = b.t_max();
    const std::size_t bound = std::min(s_bound, S);
    TotalComplex<F> tot;
    tot.offset = S;
    tot.s_bound = bound;
    const std::size_t K = T + S;
    tot.layout.resize(K + 1);
    tot.complex.field = fld;
    tot.complex.dims.assign(K + 1, 0);
    tot.complex.diff.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        long m = static_cast<long>(k) - static_cast<long>(S);
        for (std::size_t s = 0; s <= bound; ++s) {
            long t = m + static_cast<long>(s);
            if (t < 0 || t > static_cast<long>(T)) continue;
            tot.layout[k].push_back({s, static_cast<std::size_t>(t), tot.complex.dims[k]});
            tot.complex.dims[k] += b.dim(s, static_cast<std::size_t>(t));
        }
    }
    for (std::size_t k = 1; k <= K; ++k) {
        Matrix<F> d(fld, tot.complex.dims[k - 1], tot.complex.dims[k]);
        auto put = [&](std::size_t r0, std::size_t c0, const Matrix<F>& blk) {
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c) d.at(r0 + r, c0 + c) = blk.at(r, c);
        };
        for (const auto& src : tot.layout[k]) {
            if (src.t >= 1)
                if (const auto* dst = tot.find(k - 1, src.s, src.t - 1)) {
                    Matrix<F> blk = b.vert[src.s][src.t];
                    if (src.s % 2 == 1) blk = blk.negated();
                    put(dst->start, src.start, blk);
                }
            if (src.s + 1 <= bound)
                if (const auto* dst = tot.find(k - 1, src.s + 1, src.t))
                    put(dst->start, src.start, b.horiz[src.s + 1][src.t]);
        }
        tot.complex.diff[k] = d;
    }
    if (std::string e = tot.complex.check(); !e.empty())
        throw std::logic_error("total_complex: " + e);
    return tot;
}

/// Total complex of the grid truncated to cosimplicial degrees <= n.
template <class F>
TotalComplex<F> tot_truncation(const CosimplicialSimplicialModule<F>& g, std::size_t n) {
    return total_complex(conormalize_bicomplex(g), n);
}

/// The projection tot^{bound(a)} -> tot^{bound(b)} for bound(a) >= bound(b):
/// identity on shared summands, zero on the extra rows.
template <class F>
ChainMap<F> tower_map(const TotalComplex<F>& a, const TotalComplex<F>& b) {
    if (a.offset != b.offset || b.s_bound > a.s_bound)
        throw std::invalid_argument("tower_map: incompatible truncations");
    const F& fld = a.complex.field;
    ChainMap<F> f;
    f.source = &a.complex;
    f.target = &b.complex;
    auto width_of = [](const std::vector<typename TotalComplex<F>::Summand>& lay,
                       std::size_t idx, std::size_t total) {
        return (idx + 1 < lay.size() ? lay[idx + 1].start : total) - lay[idx].start;
    };
    for (std::size_t k = 0; k < a.complex.dims.size(); ++k) {
        Matrix<F> c(fld, b.complex.dims[k], a.complex.dims[k]);
        for (std::size_t i = 0; i < a.layout[k].size(); ++i) {
            const auto& src = a.layout[k][i];
            const auto* dst = b.find(k, src.s, src.t);
            if (!dst) continue;
            std::size_t w = width_of(a.layout[k], i, a.complex.dims[k]);
            for (std::size_t r = 0; r < w; ++r) c.at(dst->start + r, src.start + r) = fld.one();
        }
        f.components.push_back(c);
    }
    if (std::string e = f.check(); !e.empty()) throw std::logic_error("tower_map: " + e);
    return f;
}

/// Chain map between total complexes induced by a levelwise grid map
/// comp[s][t] : source ambient (s,t) -> target ambient (s,t). Both
/// bicomplexes must carry their normalization inclusions.
template <class F>
ChainMap<F> induced_total_map(const Bicomplex<F>& bs, const TotalComplex<F>& ts,
                              const Bicomplex<F>& bt, const TotalComplex<F>& tt,
                              const std::vector<std::vector<Matrix<F>>>& comp) {
    const F& fld = bs.field;
    ChainMap<F> f;
    f.source = &ts.complex;
    f.target = &tt.complex;
    for (std::size_t k = 0; k < ts.complex.dims.size(); ++k) {
        Matrix<F> c(fld, tt.complex.dims[k], ts.complex.dims[k]);
        for (const auto& src : ts.layout[k]) {
            const auto* dst = tt.find(k, src.s, src.t);
            if (!dst) continue;
            auto sol = solve(bt.incl[src.s][src.t],
                             comp[src.s][src.t] * bs.incl[src.s][src.t]);
            if (!sol) throw std::logic_error("induced_total_map: map leaves normalized part");
            for (std::size_t r = 0; r < sol->rows(); ++r)
                for (std::size_t cc = 0; cc < sol->cols(); ++cc)
                    c.at(dst->start + r, src.start + cc) = sol->at(r, cc);
        }
        f.components.push_back(c);
    }
    if (std::string e = f.check(); !e.empty()) throw std::logic_error("induced_total_map: " + e);
    return f;
}

// ---------------------------------------------------------------------------
// The spectral sequence of the filtered total complex (filtration by the
// cosimplicial degree s).
// ---------------------------------------------------------------------------

template <class F>
struct PageEntry {
    std::size_t dim = 0;
    bool reliable = false;
    bool in_mask = false;  // reporting mask t >= s >= 0
    Matrix<F> reps;        // zig-zag representatives inside the total complex
    Matrix<F> boundary;    // basis of the subspace the representatives extend
    Matrix<F> d;           // d_r : this entry -> (s+r, t+r-1)
};

template <class F>
struct Page {
    std::size_t r = 0;
    std::vector<std::vector<PageEntry<F>>> entries;  // entries[s][t]
};

template <class F>
struct SSReport {
    std::size_t r_max = 0, s_max = 0, t_max = 0;
    std::string sign_convention;
    std::vector<Page<F>> pages;  // pages[i] is E_{i+1}
    // smallest page index r such that the entry dimension is constant from r on
    std::vector<std::vector<std::size_t>> stabilized_at;
    // empirical check of first-quadrant stability: constant for
    // r > max(s+1, t-s+2) (vacuously true when no such pages were computed)
    std::vector<std::vector<bool>> quadrant_stable;

    const Page<F>& page(std::size_t r) const { return pages.at(r - 1); }
};

namespace detail {

/// Basis of { x in F^{s_low} cap Tot_k : D x in F^{s_target} }, in Tot_k
/// coordinates. Filtration F^s = summands of cosimplicial degree >= s;
/// negative s_low is treated as 0 (the whole space).
template <class F>
Matrix<F> filtration_space(const TotalComplex<F>& tot, std::size_t k, long s_low, long s_target) {
    const F& fld = tot.complex.field;
    const std::size_t dim_k = tot.complex.dims[k];
    auto width_of = [&](std::size_t kk, std::size_t idx) {
        const auto& lay = tot.layout[kk];
        return (idx + 1 < lay.size() ? lay[idx + 1].start : tot.complex.dims[kk]) -
               lay[idx].start;
    };
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < tot.layout[k].size(); ++i)
        if (static_cast<long>(tot.layout[k][i].s) >= s_low)
            for (std::size_t j = 0; j < width_of(k, i); ++j)
                cols.push_back(tot.layout[k][i].start + j);
    Matrix<F> incl(fld, dim_k, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) incl.at(cols[j], j) = fld.one();
    if (k == 0) return incl;
    const Matrix<F>& D = tot.complex.diff[k];
    std::vector<std::size_t> low_rows;
    for (std::size_t i = 0; i < tot.layout[k - 1].size(); ++i)
        if (static_cast<long>(tot.layout[k - 1][i].s) < s_target)
            for (std::size_t j = 0; j < width_of(k - 1, i); ++j)
                low_rows.push_back(tot.layout[k - 1][i].start + j);
    Matrix<F> cons(fld, low_rows.size(), cols.size());
    Matrix<F> dincl = D * incl;
    for (std::size_t r = 0; r < low_rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) cons.at(r, c) = dincl.at(low_rows[r], c);
    return incl * kernel_basis(cons);
}

} // namespace detail

template <class F>
SSReport<F> spectral_sequence(const Bicomplex<F>& b, std::size_t r_max) {
    if (r_max < 2) throw std::invalid_argument("spectral_sequence: r_max must be >= 2");
    if (std::string e = b.check(); !e.empty())
        throw std::invalid_argument("spectral_sequence: " + e);
    const F& fld = b.field;
    const std::size_t S = b.s_max(), T = b.t_max();
    TotalComplex<F> tot = total_complex(b, S);
    const std::size_t K = tot.complex.dims.size() - 1;

    SSReport<F> rep;
    rep.r_max = r_max;
    rep.s_max = S;
    rep.t_max = T;
    rep.sign_convention = TotalComplex<F>::sign_convention;

    for (std::size_t r = 1; r <= r_max; ++r) {
        Page<F> page;
        page.r = r;
        page.entries.assign(S + 1, std::vector<PageEntry<F>>(T + 1));
        for (std::size_t s = 0; s <= S; ++s)
            for (std::size_t t = 0; t <= T; ++t) {
                const std::size_t k = t - s + S;  // t >= 0, s <= S
                PageEntry<F>& e = page.entries[s][t];
                Matrix<F> num = detail::filtration_space(tot, k, (long)s, (long)(s + r));
                Matrix<F> den1 = detail::filtration_space(tot, k, (long)s + 1, (long)(s + r));
                Matrix<F> den2(fld, tot.complex.dims[k], 0);
                if (k + 1 <= K)
                    den2 = tot.complex.diff[k + 1] *
                           detail::filtration_space(tot, k + 1, (long)s - (long)r + 1, (long)s);
                e.boundary = column_space_basis(den1.hstack(den2));
                e.dim = num.cols() - e.boundary.cols();
                e.reps = num.columns(extension_columns(e.boundary, num));
                e.reliable = (s + r_max <= S) && (t + r_max + 1 <= T);
                e.in_mask = (t >= s);
            }
        // differentials d_r : (s,t) -> (s+r, t+r-1)
        for (std::size_t s = 0; s <= S; ++s)
            for (std::size_t t = 0; t <= T; ++t) {
                const std::size_t k = t - s + S;
                PageEntry<F>& e = page.entries[s][t];
                const std::size_t s2 = s + r, t2 = t + r - 1;
                if (k == 0 || s2 > S || t2 > T) {
                    e.d = Matrix<F>(fld, 0, e.dim);
                    continue;
                }
                const PageEntry<F>& tgt = page.entries[s2][t2];
                Matrix<F> imgs = tot.complex.diff[k] * e.reps;
                auto sol = solve(tgt.boundary.hstack(tgt.reps), imgs);
                if (!sol) throw std::logic_error("spectral_sequence: d_r representative escape");
                Matrix<F> d(fld, tgt.dim, e.dim);
                for (std::size_t i = 0; i < tgt.dim; ++i)
                    for (std::size_t j = 0; j < e.dim; ++j)
                        d.at(i, j) = sol->at(tgt.boundary.cols() + i, j);
                e.d = d;
            }
        // d_r o d_r = 0
        for (std::size_t s = 0; s <= S; ++s)
            for (std::size_t t = 0; t <= T; ++t) {
                const std::size_t s2 = s + r, t2 = t + r - 1;
                if (s2 > S || t2 > T) continue;
                if (!(page.entries[s2][t2].d * page.entries[s][t].d).is_zero())
                    throw std::logic_error("spectral_sequence: d_r d_r != 0");
            }
        rep.pages.push_back(std::move(page));
        // page turning: the next page must be the homology of this one
        if (r >= 2) {
            const Page<F>& prev = rep.pages[r - 2];
            const Page<F>& cur = rep.pages[r - 1];
            for (std::size_t s = 0; s <= S; ++s)
                for (std::size_t t = 0; t <= T; ++t) {
                    std::size_t cycles = kernel_basis(prev.entries[s][t].d).cols();
                    std::size_t bdry = 0;
                    long ps = (long)s - (long)(r - 1), pt = (long)t + (long)(r - 1) - 1;
                    if (ps >= 0 && pt >= 0 && pt <= (long)T)
                        bdry = rank(prev.entries[(std::size_t)ps][(std::size_t)pt].d);
                    if (cur.entries[s][t].dim != cycles - bdry)
                        throw std::logic_error("spectral_sequence: page turning mismatch at (" +
                                               std::to_string(s) + "," + std::to_string(t) + ")");
                }
        }
    }
    // stabilization diagnostics
    rep.stabilized_at.assign(S + 1, std::vector<std::size_t>(T + 1, 1));
    rep.quadrant_stable.assign(S + 1, std::vector<bool>(T + 1, true));
    for (std::size_t s = 0; s <= S; ++s)
        for (std::size_t t = 0; t <= T; ++t) {
            std::size_t stab = r_max;
            while (stab > 1 &&
                   rep.pages[stab - 2].entries[s][t].dim == rep.pages[r_max - 1].entries[s][t].dim)
                --stab;
            rep.stabilized_at[s][t] = stab;
            std::size_t bound = std::max<std::size_t>(s + 1, (t >= s ? t - s : 0) + 2);
            for (std::size_t r = bound + 1; r < r_max; ++r)
                if (rep.pages[r - 1].entries[s][t].dim != rep.pages[r].entries[s][t].dim)
                    rep.quadrant_stable[s][t] = false;
        }
    return rep;
}

/// E_2 recomputed along the independent path: homotopy groups of the columns
/// (vertical homology) form a cosimplicial object whose cohomology in the
/// cosimplicial direction is taken with the induced horizontal maps.
template <class F>
std::vector<std::vector<std::size_t>> e2_via_homotopy_groups(const Bicomplex<F>& b) {
    const std::size_t S = b.s_max(), T = b.t_max();
    std::vector<ChainComplex<F>> cols(S + 1);
    for (std::size_t s = 0; s <= S; ++s) cols[s] = b.column(s);
    // induced maps on vertical homology: ind[s][t] : H_t(col s-1) -> H_t(col s)
    std::vector<std::vector<Matrix<F>>> ind(S + 1, std::vector<Matrix<F>>(T + 1));
    for (std::size_t s = 1; s <= S; ++s) {
        ChainMap<F> h;
        h.source = &cols[s - 1];
        h.target = &cols[s];
        for (std::size_t t = 0; t <= T; ++t) h.components.push_back(b.horiz[s][t]);
        if (std::string e = h.check(); !e.empty())
            throw std::logic_error("e2_via_homotopy_groups: " + e);
        for (std::size_t t = 0; t <= T; ++t) ind[s][t] = h.induced_homology_map(t);
    }
    std::vector<std::vector<std::size_t>> e2(S + 1, std::vector<std::size_t>(T + 1, 0));
    for (std::size_t s = 0; s <= S; ++s)
        for (std::size_t t = 0; t <= T; ++t) {
            std::size_t cycles = (s + 1 <= S) ? kernel_basis(ind[s + 1][t]).cols()
                                              : cols[s].homology_dim(t);
            std::size_t bdry = (s >= 1) ? rank(ind[s][t]) : 0;
            e2[s][t] = cycles - bdry;
        }
    return e2;
}

// ---------------------------------------------------------------------------
// Conormalized cochain complex of a plain cosimplicial module (used for the
// diagonal comparison below and for cohomotopy computations).
// ---------------------------------------------------------------------------

template <class F>
struct CochainComplex {
    F field{};
    std::vector<std::size_t> dims;
    std::vector<Matrix<F>> delta;  // delta[s] : C^{s-1} -> C^{s}, s >= 1
    std::vector<Matrix<F>> incl;   // inclusion into the ambient cosimplicial level

    std::size_t deg_max() const { return dims.empty() ? 0 : dims.size() - 1; }
    std::string check() const {
        for (std::size_t s = 1; s < dims.size(); ++s) {
            if (delta[s].rows() != dims[s] || delta[s].cols() != dims[s - 1])
                return "cochain: shape";
            if (s >= 2 && !(delta[s] * delta[s - 1]).is_zero()) return "cochain: dd != 0";
        }
        return "";
    }
    std::size_t cohomology_dim(std::size_t s) const {
        if (s >= dims.size()) return 0;
        std::size_t cycles =
            (s + 1 < dims.size()) ? kernel_basis(delta[s + 1]).cols() : dims[s];
        std::size_t bdry = (s >= 1) ? rank(delta[s]) : 0;
        return cycles - bdry;
    }
};

template <class F>
CochainComplex<F> conormalized_cochain(const CosimplicialObject<ModuleCat<F>>& y) {
    const F& fld = y.cat.field;
    const std::size_t S = y.s_max();
    CochainComplex<F> c;
    c.field = fld;
    c.dims.resize(S + 1);
    c.delta.resize(S + 1);
    c.incl.resize(S + 1);
    for (std::size_t s = 0; s <= S; ++s) {
        Matrix<F> cons(fld, 0, y.level(s));
        for (std::size_t i = 0; i < s; ++i) cons = cons.vstack(y.s(s - 1, i));
        c.incl[s] = kernel_basis(cons);
        c.dims[s] = c.incl[s].cols();
    }
    for (std::size_t s = 1; s <= S; ++s) {
        Matrix<F> delta(fld, y.level(s), y.level(s - 1));
        for (std::size_t i = 0; i <= s; ++i)
            delta = delta + ((i % 2 == 0) ? y.d(s, i) : y.d(s, i).negated());
        auto sol = solve(c.incl[s], delta * c.incl[s - 1]);
        if (!sol) throw std::logic_error("conormalized_cochain: delta escapes");
        c.delta[s] = *sol;
    }
    if (std::string e = c.check(); !e.empty()) throw std::logic_error("conormalized_cochain: " + e);
    return c;
}

// ---------------------------------------------------------------------------
// Bicosimplicial modules and the diagonal-versus-total comparison.
// ---------------------------------------------------------------------------

template <class F>
struct BicosimplicialModule {
    F field{};
    std::vector<std::vector<std::size_t>> dims;  // dims[p][q]
    // cf1[p][q][i] : (p-1,q) -> (p,q), p >= 1, i <= p; likewise cf2 in q
    std::vector<std::vector<std::vector<Matrix<F>>>> cf1, cf2;
    // cd1[p][q][i] : (p+1,q) -> (p,q), i <= p; likewise cd2 in q
    std::vector<std::vector<std::vector<Matrix<F>>>> cd1, cd2;

    std::size_t p_max() const { return dims.empty() ? 0 : dims.size() - 1; }
    std::size_t q_max() const { return dims.empty() ? 0 : dims.front().size() - 1; }

    CosimplicialObject<ModuleCat<F>> row1(std::size_t q) const {  // vary p
        CosimplicialObject<ModuleCat<F>> y;
        y.cat = ModuleCat<F>{field};
        const std::size_t P = p_max();
        y.coface.resize(P + 1);
        y.codegen.resize(P + 1);
        for (std::size_t p = 0; p <= P; ++p) {
            y.levels.push_back(dims[p][q]);
            if (p >= 1) y.coface[p] = cf1[p][q];
            if (p + 1 <= P) y.codegen[p] = cd1[p][q];
        }
        return y;
    }
    CosimplicialObject<ModuleCat<F>> row2(std::size_t p) const {  // vary q
        CosimplicialObject<ModuleCat<F>> y;
        y.cat = ModuleCat<F>{field};
        const std::size_t Q = q_max();
        y.coface.resize(Q + 1);
        y.codegen.resize(Q + 1);
        for (std::size_t q = 0; q <= Q; ++q) {
            y.levels.push_back(dims[p][q]);
            if (q >= 1) y.coface[q] = cf2[p][q];
            if (q + 1 <= Q) y.codegen[q] = cd2[p][q];
        }
        return y;
    }

    std::string check() const {
        const std::size_t P = p_max(), Q = q_max();
        for (std::size_t q = 0; q <= Q; ++q)
            if (std::string e = row1(q).check(); !e.empty()) return "bicosimplicial p-row: " + e;
        for (std::size_t p = 0; p <= P; ++p)
            if (std::string e = row2(p).check(); !e.empty()) return "bicosimplicial q-row: " + e;
        // the two directions commute
        for (std::size_t p = 1; p <= P; ++p)
            for (std::size_t q = 1; q <= Q; ++q)
                for (std::size_t i = 0; i <= p; ++i)
                    for (std::size_t j = 0; j <= q; ++j)
                        if (cf1[p][q][i] * cf2[p - 1][q][j] != cf2[p][q][j] * cf1[p][q - 1][i])
                            return "bicosimplicial: cofaces do not commute";
        for (std::size_t p = 1; p <= P; ++p)
            for (std::size_t q = 0; q + 1 <= Q; ++q)
                for (std::size_t i = 0; i <= p; ++i)
                    for (std::size_t j = 0; j <= q; ++j)
                        if (cf1[p][q][i] * cd2[p - 1][q][j] != cd2[p][q][j] * cf1[p][q + 1][i])
                            return "bicosimplicial: coface/codegeneracy do not commute";
        for (std::size_t p = 0; p + 1 <= P; ++p)
            for (std::size_t q = 1; q <= Q; ++q)
                for (std::size_t i = 0; i <= p; ++i)
                    for (std::size_t j = 0; j <= q; ++j)
                        if (cd1[p][q][i] * cf2[p + 1][q][j] != cf2[p][q][j] * cd1[p][q - 1][i])
                            return "bicosimplicial: codegeneracy/coface do not commute";
        for (std::size_t p = 0; p + 1 <= P; ++p)
            for (std::size_t q = 0; q + 1 <= Q; ++q)
                for (std::size_t i = 0; i <= p; ++i)
                    for (std::size_t j = 0; j <= q; ++j)
                        if (cd1[p][q][i] * cd2[p + 1][q][j] != cd2[p][q][j] * cd1[p][q + 1][i])
                            return "bicosimplicial: codegeneracies do not commute";
        return "";
    }

    /// The diagonal cosimplicial module n -> Z^{n,n}.
    CosimplicialObject<ModuleCat<F>> diagonal() const {
        const std::size_t N = std::min(p_max(), q_max());
        CosimplicialObject<ModuleCat<F>> y;
        y.cat = ModuleCat<F>{field};
        y.coface.resize(N + 1);
        y.codegen.resize(N + 1);
        for (std::size_t n = 0; n <= N; ++n) {
            y.levels.push_back(dims[n][n]);
            if (n >= 1)
                for (std::size_t i = 0; i <= n; ++i)
                    y.coface[n].push_back(cf2[n][n][i] * cf1[n][n - 1][i]);
            if (n + 1 <= N)
                for (std::size_t i = 0; i <= n; ++i)
                    y.codegen[n].push_back(cd2[n][n][i] * cd1[n][n + 1][i]);
        }
        return y;
    }
};

struct DiagTotalReport {
    std::vector<std::size_t> diag_h;   // cohomology of the diagonal, degree n
    std::vector<std::size_t> total_h;  // cohomology of the double-conormalized total
    std::size_t reliable_degrees = 0;  // degrees n < reliable_degrees are compared
    bool equal_in_window = false;
};

/// Compare the conormalized diagonal of Z with the total complex of the
/// double conormalization (both directions), in the degrees unaffected by
/// the truncation.
template <class F>
DiagTotalReport diag_vs_total(const BicosimplicialModule<F>& z) {
    if (std::string e = z.check(); !e.empty())
        throw std::invalid_argument("diag_vs_total: " + e);
    const F& fld = z.field;
    const std::size_t P = z.p_max(), Q = z.q_max();
    const std::size_t N = std::min(P, Q);

    CochainComplex<F> diag = conormalized_cochain(z.diagonal());

    // double conormalization
    std::vector<std::vector<Matrix<F>>> incl(P + 1, std::vector<Matrix<F>>(Q + 1));
    std::vector<std::vector<std::size_t>> nd(P + 1, std::vector<std::size_t>(Q + 1, 0));
    for (std::size_t p = 0; p <= P; ++p)
        for (std::size_t q = 0; q <= Q; ++q) {
            Matrix<F> cons(fld, 0, z.dims[p][q]);
            for (std::size_t i = 0; i < p; ++i) cons = cons.vstack(z.cd1[p - 1][q][i]);
            for (std::size_t i = 0; i < q; ++i) cons = cons.vstack(z.cd2[p][q - 1][i]);
            incl[p][q] = kernel_basis(cons);
            nd[p][q] = incl[p][q].cols();
        }
    auto delta_of = [&](const std::vector<Matrix<F>>& cofaces, std::size_t rows,
                        std::size_t colsn) {
        Matrix<F> delta(fld, rows, colsn);
        for (std::size_t i = 0; i < cofaces.size(); ++i)
            delta = delta + ((i % 2 == 0) ? cofaces[i] : cofaces[i].negated());
        return delta;
    };
    std::vector<std::vector<Matrix<F>>> d1(P + 1, std::vector<Matrix<F>>(Q + 1));
    std::vector<std::vector<Matrix<F>>> d2(P + 1, std::vector<Matrix<F>>(Q + 1));
    for (std::size_t p = 1; p <= P; ++p)
        for (std::size_t q = 0; q <= Q; ++q) {
            auto sol = solve(incl[p][q],
                             delta_of(z.cf1[p][q], z.dims[p][q], z.dims[p - 1][q]) *
                                 incl[p - 1][q]);
            if (!sol) throw std::logic_error("diag_vs_total: delta1 escapes");
            d1[p][q] = *sol;
        }
    for (std::size_t p = 0; p <= P; ++p)
        for (std::size_t q = 1; q <= Q; ++q) {
            auto sol = solve(incl[p][q],
                             delta_of(z.cf2[p][q], z.dims[p][q], z.dims[p][q - 1]) *
                                 incl[p][q - 1]);
            if (!sol) throw std::logic_error("diag_vs_total: delta2 escapes");
            d2[p][q] = *sol;
        }
    // total cochain complex T^n = sum over p+q = n, D = delta1 + (-1)^p delta2
    const std::size_t K = P + Q;
    std::vector<std::size_t> tdims(K + 1, 0);
    std::vector<std::vector<std::size_t>> start(P + 1, std::vector<std::size_t>(Q + 1, 0));
    for (std::size_t n = 0; n <= K; ++n)
        for (std::size_t p = 0; p <= std::min(n, P); ++p) {
            std::size_t q = n - p;
            if (q > Q) continue;
            start[p][q] = tdims[n];
            tdims[n] += nd[p][q];
        }
    std::vector<Matrix<F>> D(K + 1);
    for (std::size_t n = 1; n <= K; ++n) {
        Matrix<F> d(fld, tdims[n], tdims[n - 1]);
        auto put = [&](std::size_t r0, std::size_t c0, const Matrix<F>& blk) {
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c) d.at(r0 + r, c0 + c) = blk.at(r, c);
        };
        for (std::size_t p = 0; p <= std::min(n - 1, P); ++p) {
            std::size_t q = n - 1 - p;
            if (q > Q) continue;
            if (p + 1 <= P) put(start[p + 1][q], start[p][q], d1[p + 1][q]);
            if (q + 1 <= Q) {
                Matrix<F> blk = d2[p][q + 1];
                if (p % 2 == 1) blk = blk.negated();
                put(start[p][q + 1], start[p][q], blk);
            }
        }
        D[n] = d;
        if (n >= 2 && !(D[n] * D[n - 1]).is_zero())
            throw std::logic_error("diag_vs_total: total differential does not square to zero");
    }

    DiagTotalReport rep;
    rep.reliable_degrees = N;  // degrees 0..N-1 are unaffected by the truncation
    for (std::size_t n = 0; n <= N; ++n) rep.diag_h.push_back(diag.cohomology_dim(n));
    for (std::size_t n = 0; n <= K; ++n) {
        std::size_t cycles = (n + 1 <= K) ? kernel_basis(D[n + 1]).cols() : tdims[n];
        std::size_t bdry = (n >= 1) ? rank(D[n]) : 0;
        rep.total_h.push_back(cycles - bdry);
    }
    rep.equal_in_window = true;
    for (std::size_t n = 0; n < rep.reliable_degrees; ++n)
        if (rep.diag_h[n] != rep.total_h[n]) rep.equal_in_window = false;
    return rep;
}

} // namespace bkc

#endif // BKC_SPECTRAL_HPP
