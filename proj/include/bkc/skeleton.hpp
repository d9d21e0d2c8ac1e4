#ifndef BKC_SKELETON_HPP
#define BKC_SKELETON_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkc/cosimplicial.hpp"
#include "bkc/matrix.hpp"
#include "bkc/simplicial_module.hpp"

namespace bkc {

// ---------------------------------------------------------------------------
// Matching objects and coskeleta.
//
// For a cosimplicial module Y, the k-th matching object is
//   M^k(Y) = { (y^0, .., y^{k-1}) in (Y^{k-1})^k : s^j y^i = s^i y^{j+1}, i <= j }
// and the matching map Y^k -> M^k(Y) is y -> (s^0 y, .., s^{k-1} y).
// ---------------------------------------------------------------------------

/// Basis of M^k(Y) as a subspace of the k-fold sum of Y^{k-1}. For k = 0 the
/// matching object is the zero-dimensional ambient (the empty limit is a
/// point; in modules, dimension 0 ambient with identity inclusion).
template <class F>
Matrix<F> matching_inclusion(const CosimplicialObject<ModuleCat<F>>& y, std::size_t k) {
    const F& fld = y.cat.field;
    if (k == 0) return Matrix<F>(fld, 0, 0);
    const std::size_t amb = k * y.level(k - 1);
    if (k == 1) return Matrix<F>::identity(fld, amb);  // no constraints
    // constraints: for 0 <= i <= j <= k-2: s^j y^i - s^i y^{j+1} = 0
    const std::size_t rowdim = y.level(k - 2);
    std::vector<Matrix<F>> blocks;
    for (std::size_t i = 0; i + 1 <= k - 1; ++i)
        for (std::size_t j = i; j + 1 <= k - 1; ++j) {
            Matrix<F> row(fld, rowdim, amb);
            auto put = [&](std::size_t comp, const Matrix<F>& m, bool neg) {
                for (std::size_t r = 0; r < m.rows(); ++r)
                    for (std::size_t c = 0; c < m.cols(); ++c) {
                        auto v = neg ? fld.neg(m.at(r, c)) : m.at(r, c);
                        row.at(r, comp * y.level(k - 1) + c) =
                            fld.add(row.at(r, comp * y.level(k - 1) + c), v);
                    }
            };
            put(i, y.s(k - 2, j), false);
            put(j + 1, y.s(k - 2, i), true);
            blocks.push_back(row);
        }
    Matrix<F> cons(fld, 0, amb);
    for (const auto& b : blocks) cons = cons.vstack(b);
    return kernel_basis(cons);
}

/// The matching map Y^k -> ambient of M^k(Y): y -> (s^0 y, .., s^{k-1} y).
template <class F>
Matrix<F> matching_map_ambient(const CosimplicialObject<ModuleCat<F>>& y, std::size_t k) {
    const F& fld = y.cat.field;
    if (k == 0) return Matrix<F>(fld, 0, y.level(0));
    Matrix<F> m(fld, 0, y.level(k));
    for (std::size_t i = 0; i < k; ++i) m = m.vstack(y.s(k - 1, i));
    return m;
}

template <class F>
struct CoskeletonResult {
    CosimplicialObject<ModuleCat<F>> object;
    /// canonical map Y -> cosk^n(Y), levelwise
    std::vector<Matrix<F>> unit;
};

/// n-th coskeleton of a cosimplicial module, within the same truncation:
/// levels <= n are copied; each higher level is the matching object of what
/// has been built so far, with codegeneracies the projections and cofaces
/// induced componentwise by the cosimplicial identities.
template <class F>
CoskeletonResult<F> coskeleton(const CosimplicialObject<ModuleCat<F>>& y, std::size_t n) {
    const F& fld = y.cat.field;
    const std::size_t S = y.s_max();
    CosimplicialObject<ModuleCat<F>> z;
    z.cat = y.cat;
    z.levels.resize(S + 1);
    z.coface.resize(S + 1);
    z.codegen.resize(S + 1);
    std::vector<Matrix<F>> unit(S + 1);
    // inclusion of level m of z into its ambient sum (identity for m <= n)
    std::vector<Matrix<F>> incl(S + 1);

    for (std::size_t m = 0; m <= S && m <= n; ++m) {
        z.levels[m] = y.level(m);
        unit[m] = Matrix<F>::identity(fld, y.level(m));
        if (m >= 1) {
            z.coface[m].resize(m + 1);
            for (std::size_t i = 0; i <= m; ++i) z.coface[m][i] = y.d(m, i);
        }
        if (m + 1 <= S && m + 1 <= n) {
            z.codegen[m].resize(m + 1);
            for (std::size_t i = 0; i <= m; ++i) z.codegen[m][i] = y.s(m, i);
        }
    }
    for (std::size_t m = n + 1; m <= S; ++m) {
        // ambient = m-fold sum of z^{m-1}; constraints via z's codegeneracies
        CosimplicialObject<ModuleCat<F>> partial = z;
        partial.levels.resize(m);  // levels 0..m-1 are ready
        partial.coface.resize(m);
        partial.codegen.resize(m);
        incl[m] = matching_inclusion(partial, m);
        z.levels[m] = incl[m].cols();
        const std::size_t amb_block = z.levels[m - 1];
        // codegeneracies: s^i = projection to component i
        z.codegen[m - 1].resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            Matrix<F> proj(fld, amb_block, m * amb_block);
            for (std::size_t r = 0; r < amb_block; ++r) proj.at(r, i * amb_block + r) = fld.one();
            z.codegen[m - 1][i] = proj * incl[m];
        }
        // cofaces d^i : z^{m-1} -> z^m, componentwise s^j d^i via identities
        z.coface[m].resize(m + 1);
        for (std::size_t i = 0; i <= m; ++i) {
            Matrix<F> amb(fld, 0, z.levels[m - 1]);
            for (std::size_t j = 0; j < m; ++j) {
                Matrix<F> comp =
                    (i == j || i == j + 1) ? Matrix<F>::identity(fld, z.levels[m - 1])
                    : (i < j)              ? z.d(m - 1, i) * z.s(m - 2, j - 1)
                                           : z.d(m - 1, i - 1) * z.s(m - 2, j);
                amb = amb.vstack(comp);
            }
            auto coords = solve(incl[m], amb);
            if (!coords) throw std::logic_error("coskeleton: coface lands outside matching object");
            z.coface[m][i] = *coords;
        }
        // unit: y^m -> z^m via (unit_{m-1} s^0 y, .., unit_{m-1} s^{m-1} y)
        Matrix<F> amb(fld, 0, y.level(m));
        for (std::size_t i = 0; i < m; ++i) amb = amb.vstack(unit[m - 1] * y.s(m - 1, i));
        auto coords = solve(incl[m], amb);
        if (!coords) throw std::logic_error("coskeleton: unit lands outside matching object");
        unit[m] = *coords;
    }
    if (std::string e = z.check(); !e.empty()) throw std::logic_error("coskeleton: " + e);
    return {std::move(z), std::move(unit)};
}

/// Verify the three contract properties of Z = cosk^n(Y): agreement with Y
/// up to level n, level n+1 equal to the matching object, and matching maps
/// isomorphisms from level n+1 on. Empty string on success.
template <class F>
std::string check_coskeleton(const CosimplicialObject<ModuleCat<F>>& y,
                             const CoskeletonResult<F>& cosk, std::size_t n) {
    const auto& z = cosk.object;
    const std::size_t S = y.s_max();
    for (std::size_t m = 0; m <= std::min(n, S); ++m) {
        if (z.level(m) != y.level(m)) return "coskeleton: level changed below bound";
        if (!(cosk.unit[m] == Matrix<F>::identity(y.cat.field, y.level(m))))
            return "coskeleton: unit not identity below bound";
    }
    for (std::size_t k = n + 1; k <= S; ++k) {
        Matrix<F> mi = matching_inclusion(z, k);
        if (mi.cols() != z.level(k)) return "coskeleton: level is not the matching object";
        Matrix<F> mm = matching_map_ambient(z, k);
        // matching map as map into M^k coordinates must be an isomorphism
        auto coords = solve(mi, mm);
        if (!coords) return "coskeleton: matching map misses the matching object";
        if (rank(*coords) != z.level(k) || coords->rows() != coords->cols())
            return "coskeleton: matching map not an isomorphism at level " + std::to_string(k);
    }
    // the unit must be a cosimplicial map
    CosimplicialMap<ModuleCat<F>> u;
    u.source = &y;
    u.target = &z;
    u.components = cosk.unit;
    if (std::string e = u.check(); !e.empty()) return "coskeleton unit: " + e;
    return "";
}

// ---------------------------------------------------------------------------
// Latching objects and skeleta for simplicial modules.
//
// The m-th latching subspace of X is the span of the degeneracy images
// s_i(X_{m-1}) inside X_m; sk_n(X) copies levels <= n and grows higher
// levels by degeneracies only, realized as subspaces of X.
// ---------------------------------------------------------------------------

/// Basis of the latching subspace of X at level m (inside X_m).
template <class F>
Matrix<F> latching_inclusion(const SimplicialModule<F>& x, std::size_t m) {
    const F& fld = x.field;
    if (m == 0) return Matrix<F>(fld, x.dim(0), 0);
    Matrix<F> all(fld, x.dim(m), 0);
    for (std::size_t i = 0; i + 1 <= m; ++i) all = all.hstack(x.s(m - 1, i));
    return column_space_basis(all);
}

template <class F>
struct SkeletonResult {
    SimplicialModule<F> object;
    /// canonical inclusion sk_n(X) -> X, levelwise
    std::vector<Matrix<F>> counit;
};

/// n-th skeleton of a simplicial module, within the same truncation.
template <class F>
SkeletonResult<F> skeleton(const SimplicialModule<F>& x, std::size_t n) {
    const F& fld = x.field;
    const std::size_t N = x.n_max();
    SimplicialModule<F> z;
    z.field = fld;
    z.dims.resize(N + 1);
    z.face.resize(N + 1);
    z.degen.resize(N + 1);
    std::vector<Matrix<F>> counit(N + 1);
    for (std::size_t m = 0; m <= N; ++m)
        counit[m] = (m <= n) ? Matrix<F>::identity(fld, x.dim(m)) : Matrix<F>(fld, x.dim(m), 0);
    for (std::size_t m = n + 1; m <= N; ++m) {
        // span of degeneracy images of the previous skeleton level
        Matrix<F> all(fld, x.dim(m), 0);
        for (std::size_t i = 0; i + 1 <= m; ++i) all = all.hstack(x.s(m - 1, i) * counit[m - 1]);
        counit[m] = column_space_basis(all);
    }
    for (std::size_t m = 0; m <= N; ++m) z.dims[m] = counit[m].cols();
    for (std::size_t m = 1; m <= N; ++m) {
        z.face[m].resize(m + 1);
        for (std::size_t i = 0; i <= m; ++i) {
            auto coords = solve(counit[m - 1], x.d(m, i) * counit[m]);
            if (!coords) throw std::logic_error("skeleton: face leaves the subobject");
            z.face[m][i] = *coords;
        }
    }
    for (std::size_t m = 0; m + 1 <= N; ++m) {
        z.degen[m].resize(m + 1);
        for (std::size_t i = 0; i <= m; ++i) {
            auto coords = solve(counit[m + 1], x.s(m, i) * counit[m]);
            if (!coords) throw std::logic_error("skeleton: degeneracy leaves the subobject");
            z.degen[m][i] = *coords;
        }
    }
    if (std::string e = z.check(); !e.empty()) throw std::logic_error("skeleton: " + e);
    return {std::move(z), std::move(counit)};
}

// ---------------------------------------------------------------------------
// Coskeleton in the simplicial direction (matching objects via faces), used
// for the hom-set adjunction with the skeleton.
//   M_m(X) = { (x_0, .., x_{m-1}) in (X_{m-1})^m : d_i x_j = d_{j-1} x_i, i < j }
// ---------------------------------------------------------------------------

template <class F>
Matrix<F> simplicial_matching_inclusion(const SimplicialModule<F>& x, std::size_t m) {
    // tuples (x_0, .., x_m) of m+1 candidate faces with d_i x_j = d_{j-1} x_i
    const F& fld = x.field;
    if (m == 0) return Matrix<F>(fld, 0, 0);
    const std::size_t amb = (m + 1) * x.dim(m - 1);
    // m = 1: the would-be constraints involve faces out of level 0, which do
    // not exist, so the matching object is the full ambient square
    if (m == 1) return Matrix<F>::identity(fld, amb);
    const std::size_t rowdim = x.dim(m - 2);
    Matrix<F> cons(fld, 0, amb);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j <= m; ++j) {
            Matrix<F> row(fld, rowdim, amb);
            for (std::size_t r = 0; r < rowdim; ++r)
                for (std::size_t c = 0; c < x.dim(m - 1); ++c) {
                    row.at(r, j * x.dim(m - 1) + c) = x.d(m - 1, i).at(r, c);
                    row.at(r, i * x.dim(m - 1) + c) =
                        fld.sub(row.at(r, i * x.dim(m - 1) + c), x.d(m - 1, j - 1).at(r, c));
                }
            cons = cons.vstack(row);
        }
    return kernel_basis(cons);
}

template <class F>
SkeletonResult<F> simplicial_coskeleton(const SimplicialModule<F>& x, std::size_t n) {
    // Returned in SkeletonResult form with `counit` holding the canonical
    // map X -> cosk^n(X) levelwise.
    const F& fld = x.field;
    const std::size_t N = x.n_max();
    SimplicialModule<F> z;
    z.field = fld;
    z.dims.resize(N + 1);
    z.face.resize(N + 1);
    z.degen.resize(N + 1);
    std::vector<Matrix<F>> unit(N + 1);
    std::vector<Matrix<F>> incl(N + 1);
    for (std::size_t m = 0; m <= std::min(n, N); ++m) {
        z.dims[m] = x.dim(m);
        unit[m] = Matrix<F>::identity(fld, x.dim(m));
        if (m >= 1) z.face[m] = x.face[m];
        if (m + 1 <= N && m + 1 <= n) z.degen[m] = x.degen[m];
    }
    for (std::size_t m = n + 1; m <= N; ++m) {
        SimplicialModule<F> partial = z;
        partial.dims.resize(m);
        partial.face.resize(m);
        partial.degen.resize(m);
        incl[m] = simplicial_matching_inclusion(partial, m);
        z.dims[m] = incl[m].cols();
        const std::size_t blk = z.dims[m - 1];
        // all m+1 faces are projections out of the (m+1)-component tuple
        z.face[m].resize(m + 1);
        for (std::size_t i = 0; i <= m; ++i) {
            Matrix<F> proj(fld, blk, (m + 1) * blk);
            for (std::size_t r = 0; r < blk; ++r) proj.at(r, i * blk + r) = fld.one();
            z.face[m][i] = proj * incl[m];
        }
        // degeneracies s_j : z_{m-1} -> z_m componentwise via d_i s_j
        z.degen[m - 1].resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            Matrix<F> amb(fld, 0, z.dims[m - 1]);
            for (std::size_t i = 0; i <= m; ++i) {
                Matrix<F> comp = (i == j || i == j + 1)
                                     ? Matrix<F>::identity(fld, z.dims[m - 1])
                                 : (i < j) ? z.degen[m - 2][j - 1] * z.face[m - 1][i]
                                           : z.degen[m - 2][j] * z.face[m - 1][i - 1];
                amb = amb.vstack(comp);
            }
            auto coords = solve(incl[m], amb);
            if (!coords) throw std::logic_error("simplicial_coskeleton: degeneracy misses subspace");
            z.degen[m - 1][j] = *coords;
        }
        // unit x_m -> z_m collects all faces
        Matrix<F> amb(fld, 0, x.dim(m));
        for (std::size_t i = 0; i <= m; ++i) amb = amb.vstack(unit[m - 1] * x.d(m, i));
        auto coords = solve(incl[m], amb);
        if (!coords) throw std::logic_error("simplicial_coskeleton: unit misses subspace");
        unit[m] = *coords;
    }
    if (std::string e = z.check(); !e.empty())
        throw std::logic_error("simplicial_coskeleton: " + e);
    return {std::move(z), std::move(unit)};
}

// ---------------------------------------------------------------------------
// Hom spaces of simplicial modules (dimension via one big linear system),
// used for the skeleton/coskeleton adjunction check.
// ---------------------------------------------------------------------------

/// Dimension of the space of maps A -> B of simplicial modules (levelwise
/// matrices commuting with all faces and degeneracies within truncation).
template <class F>
std::size_t hom_space_dim(const SimplicialModule<F>& a, const SimplicialModule<F>& b) {
    const F& fld = a.field;
    const std::size_t N = std::min(a.n_max(), b.n_max());
    // unknowns: entries of f_n (b.dim(n) x a.dim(n))
    std::vector<std::size_t> offset(N + 2, 0);
    for (std::size_t n = 0; n <= N; ++n) offset[n + 1] = offset[n] + b.dim(n) * a.dim(n);
    const std::size_t unknowns = offset[N + 1];
    std::vector<std::vector<typename F::Elem>> rows;
    auto add_constraint = [&](std::size_t lvl_left, const Matrix<F>& post,
                              std::size_t lvl_right, const Matrix<F>& pre) {
        // post * f_{lvl_left} = f_{lvl_right} * pre  (entrywise rows)
        const std::size_t R = post.rows(), C = a.dim(lvl_left);
        (void)C;
        for (std::size_t r = 0; r < R; ++r)
            for (std::size_t c = 0; c < a.dim(lvl_left); ++c) {
                std::vector<typename F::Elem> row(unknowns, fld.zero());
                // sum_k post(r,k) f_left(k,c)
                for (std::size_t k = 0; k < b.dim(lvl_left); ++k)
                    row[offset[lvl_left] + k * a.dim(lvl_left) + c] =
                        fld.add(row[offset[lvl_left] + k * a.dim(lvl_left) + c], post.at(r, k));
                // minus sum_k f_right(r,k) pre(k,c)
                for (std::size_t k = 0; k < a.dim(lvl_right); ++k)
                    row[offset[lvl_right] + r * a.dim(lvl_right) + k] =
                        fld.sub(row[offset[lvl_right] + r * a.dim(lvl_right) + k], pre.at(k, c));
                rows.push_back(std::move(row));
            }
    };
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t i = 0; i <= n; ++i) add_constraint(n, b.d(n, i), n - 1, a.d(n, i));
    for (std::size_t n = 0; n + 1 <= N; ++n)
        for (std::size_t i = 0; i <= n; ++i) add_constraint(n, b.s(n, i), n + 1, a.s(n, i));
    Matrix<F> cons(fld, rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < unknowns; ++c) cons.at(r, c) = rows[r][c];
    return kernel_basis(cons).cols();
}

} // namespace bkc

#endif // BKC_SKELETON_HPP
