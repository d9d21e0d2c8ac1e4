#ifndef BKC_SIMPLICIAL_MODULE_HPP
#define BKC_SIMPLICIAL_MODULE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkc/chain.hpp"
#include "bkc/matrix.hpp"
#include "bkc/ordinal.hpp"
#include "bkc/simplicial_set.hpp"

namespace bkc {

/// A simplicial module truncated at n_max: finite-dimensional levels with
/// face and degeneracy matrices.
template <class F>
struct SimplicialModule {
    F field;
    std::vector<std::size_t> dims;                  // dims[n], n <= n_max
    std::vector<std::vector<Matrix<F>>> face;       // face[n][i] : dims[n-1] x dims[n], n >= 1
    std::vector<std::vector<Matrix<F>>> degen;      // degen[n][i] : dims[n+1] x dims[n], n+1 <= n_max

    std::size_t n_max() const { return dims.empty() ? 0 : dims.size() - 1; }
    std::size_t dim(std::size_t n) const { return n < dims.size() ? dims[n] : 0; }

    const Matrix<F>& d(std::size_t n, std::size_t i) const { return face.at(n).at(i); }
    const Matrix<F>& s(std::size_t n, std::size_t i) const { return degen.at(n).at(i); }

    std::string check() const {
        const std::size_t N = n_max();
        if (face.size() != dims.size()) return "module: face table size";
        if (degen.size() < (N == 0 ? 0 : N)) return "module: degeneracy table size";
        for (std::size_t n = 1; n <= N; ++n) {
            if (face[n].size() != n + 1) return "module: face count at level " + std::to_string(n);
            for (std::size_t i = 0; i <= n; ++i)
                if (face[n][i].rows() != dims[n - 1] || face[n][i].cols() != dims[n])
                    return "module: face shape at level " + std::to_string(n);
        }
        for (std::size_t n = 0; n + 1 <= N; ++n) {
            if (degen[n].size() != n + 1)
                return "module: degeneracy count at level " + std::to_string(n);
            for (std::size_t i = 0; i <= n; ++i)
                if (degen[n][i].rows() != dims[n + 1] || degen[n][i].cols() != dims[n])
                    return "module: degeneracy shape at level " + std::to_string(n);
        }
        for (std::size_t n = 2; n <= N; ++n)
            for (std::size_t i = 0; i + 1 <= n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j)
                    if (d(n - 1, i) * d(n, j) != d(n - 1, j - 1) * d(n, i))
                        return "module: d_i d_j at level " + std::to_string(n);
        for (std::size_t n = 0; n + 1 <= N; ++n)
            for (std::size_t j = 0; j <= n; ++j)
                for (std::size_t i = 0; i <= n + 1; ++i) {
                    Matrix<F> lhs = d(n + 1, i) * s(n, j);
                    Matrix<F> rhs = (i == j || i == j + 1) ? Matrix<F>::identity(field, dims[n])
                                    : (i < j) ? s(n - 1, j - 1) * d(n, i)
                                              : s(n - 1, j) * d(n, i - 1);
                    if (lhs != rhs) return "module: d_i s_j at level " + std::to_string(n);
                }
        for (std::size_t n = 0; n + 2 <= N; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = i; j <= n; ++j)
                    if (s(n + 1, i) * s(n, j) != s(n + 1, j + 1) * s(n, i))
                        return "module: s_i s_j at level " + std::to_string(n);
        return "";
    }

    static SimplicialModule constant(F field, std::size_t dim, std::size_t n_max) {
        SimplicialModule m;
        m.field = field;
        m.dims.assign(n_max + 1, dim);
        m.face.resize(n_max + 1);
        m.degen.resize(n_max + 1);
        for (std::size_t n = 1; n <= n_max; ++n)
            m.face[n].assign(n + 1, Matrix<F>::identity(field, dim));
        for (std::size_t n = 0; n + 1 <= n_max; ++n)
            m.degen[n].assign(n + 1, Matrix<F>::identity(field, dim));
        return m;
    }

    /// Free module on a finite simplicial set: level n has one basis vector
    /// per n-simplex; structure matrices are the 0/1 matrices of the set maps.
    static SimplicialModule linearize(F field, const FiniteSimplicialSet& K) {
        SimplicialModule m;
        m.field = field;
        const std::size_t N = K.dim_bound();
        m.dims.resize(N + 1);
        for (std::size_t n = 0; n <= N; ++n) m.dims[n] = K.size(n);
        m.face.resize(N + 1);
        m.degen.resize(N + 1);
        for (std::size_t n = 1; n <= N; ++n) {
            m.face[n].assign(n + 1, Matrix<F>(field, m.dims[n - 1], m.dims[n]));
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t x = 0; x < K.size(n); ++x)
                    m.face[n][i].at(K.face(n, x, i), x) = field.one();
        }
        for (std::size_t n = 0; n + 1 <= N; ++n) {
            m.degen[n].assign(n + 1, Matrix<F>(field, m.dims[n + 1], m.dims[n]));
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t x = 0; x < K.size(n); ++x)
                    m.degen[n][i].at(K.degeneracy(n, x, i), x) = field.one();
        }
        return m;
    }
};

/// Moore (normalized) complex: degree n is the intersection of the kernels
/// of d_i for i >= 1, with differential induced by d_0. Also returns the
/// inclusion of each normalized level into the ambient level.
template <class F>
struct MooreComplex {
    ChainComplex<F> complex;
    std::vector<Matrix<F>> inclusion;  // inclusion[n] : dims[n] x moore_dims[n]
};

template <class F>
MooreComplex<F> moore_complex(const SimplicialModule<F>& m) {
    const F& k = m.field;
    const std::size_t N = m.n_max();
    MooreComplex<F> out;
    out.complex.field = k;
    out.complex.dims.resize(N + 1);
    out.complex.diff.resize(N + 1);
    out.inclusion.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        if (n == 0) {
            out.inclusion[0] = Matrix<F>::identity(k, m.dim(0));
        } else {
            // stack d_1..d_n and take the kernel
            Matrix<F> stacked(k, 0, m.dim(n));
            for (std::size_t i = 1; i <= n; ++i) stacked = stacked.vstack(m.d(n, i));
            out.inclusion[n] = kernel_basis(stacked);
        }
        out.complex.dims[n] = out.inclusion[n].cols();
    }
    for (std::size_t n = 1; n <= N; ++n) {
        Matrix<F> img = m.d(n, 0) * out.inclusion[n];
        auto coords = solve(out.inclusion[n - 1], img);
        if (!coords)
            throw std::logic_error("moore_complex: d_0 does not preserve the normalized part");
        out.complex.diff[n] = *coords;
    }
    if (std::string e = out.complex.check(); !e.empty()) throw std::logic_error("moore_complex: " + e);
    return out;
}

/// Unnormalized chain complex (the alternating-sum differential); a
/// quasi-isomorphic independent oracle for homology computations.
template <class F>
ChainComplex<F> unnormalized_complex(const SimplicialModule<F>& m) {
    const F& k = m.field;
    const std::size_t N = m.n_max();
    ChainComplex<F> c;
    c.field = k;
    c.dims = m.dims;
    c.diff.resize(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        Matrix<F> d = m.d(n, 0);
        for (std::size_t i = 1; i <= n; ++i) {
            Matrix<F> t = m.d(n, i);
            d = (i % 2 == 0) ? d + t : d - t;
        }
        c.diff[n] = d;
    }
    if (std::string e = c.check(); !e.empty()) throw std::logic_error("unnormalized_complex: " + e);
    return c;
}

/// Homotopy group dimensions pi_t = H_t of the Moore complex, with a
/// reliability flag: degree t needs level t+1 present to see all boundaries.
struct HomotopyGroupDims {
    std::vector<std::size_t> dims;
    std::vector<bool> reliable;
};

template <class F>
HomotopyGroupDims homotopy_groups(const SimplicialModule<F>& m, std::size_t t_max) {
    MooreComplex<F> moore = moore_complex(m);
    HomotopyGroupDims out;
    out.dims.resize(t_max + 1, 0);
    out.reliable.resize(t_max + 1, false);
    for (std::size_t t = 0; t <= t_max; ++t) {
        out.dims[t] = moore.complex.homology_dim(t);
        out.reliable[t] = (t + 1 <= m.n_max());
    }
    return out;
}

/// Inverse normalization: build the simplicial module whose level n is the
/// sum over surjections [n] ->> [m] of copies of C_m. The structure map for
/// theta : [m'] -> [n] sends the (sigma, x) summand via the epi-mono
/// factorization of sigma o theta: identity monos act by identity, the
/// 0th-coface mono acts by the differential, any other mono acts by zero.
template <class F>
SimplicialModule<F> dold_kan(const ChainComplex<F>& c, std::size_t n_max) {
    const F& k = c.field;
    // summands[n] = list of (m, sigma, offset)
    struct Summand {
        std::size_t m;
        OrdinalMap sigma;
        std::size_t offset;
    };
    std::vector<std::vector<Summand>> summands(n_max + 1);
    std::vector<std::size_t> dims(n_max + 1, 0);
    for (std::size_t n = 0; n <= n_max; ++n)
        for (std::size_t m = 0; m <= n; ++m)
            for (const auto& sigma : enumerate_monotone(n, m)) {
                bool epi = true;
                for (std::size_t v = 0; v <= m && epi; ++v) {
                    bool hit = false;
                    for (std::size_t i = 0; i <= n; ++i)
                        if (sigma(i) == v) { hit = true; break; }
                    epi = hit;
                }
                if (!epi) continue;
                summands[n].push_back({m, sigma, dims[n]});
                dims[n] += c.dim(m);
            }

    // the action of theta : [m'] -> [n] as a matrix dims[m'] x dims[n]
    auto action = [&](const OrdinalMap& theta) {
        const std::size_t n = theta.target, np = theta.source;
        Matrix<F> a(k, dims[np], dims[n]);
        for (const auto& src : summands[n]) {
            OrdinalMap comp = compose(theta, src.sigma);  // [m'] -> [m]
            EpiMonoWord w = epi_mono_factor(comp);
            // mono part: [r] -> [m]; epi part tau : [m'] -> [r]
            std::size_t r = src.m - w.faces.size();
            Matrix<F> mono_action(k, 0, 0);
            if (w.faces.empty()) {
                mono_action = Matrix<F>::identity(k, c.dim(src.m));
            } else if (w.faces.size() == 1 && w.faces[0] == 0 && src.m < c.diff.size()) {
                mono_action = c.diff[src.m];  // C_m -> C_{m-1}
            } else {
                mono_action = Matrix<F>(k, c.dim(r), c.dim(src.m));  // zero
            }
            // locate the target summand (r, tau)
            std::vector<std::size_t> tau_vals;
            {
                // tau: values of comp reindexed through the mono part
                EpiMonoWord epi_only;
                epi_only.source = np;
                epi_only.target = r;
                epi_only.degeneracies = w.degeneracies;
                OrdinalMap tau = epi_only.recompose();
                tau_vals = tau.values;
            }
            for (const auto& dst : summands[np])
                if (dst.m == r && dst.sigma.values == tau_vals) {
                    for (std::size_t i = 0; i < mono_action.rows(); ++i)
                        for (std::size_t j = 0; j < mono_action.cols(); ++j)
                            a.at(dst.offset + i, src.offset + j) = mono_action.at(i, j);
                    break;
                }
        }
        return a;
    };

    SimplicialModule<F> out;
    out.field = k;
    out.dims = dims;
    out.face.resize(n_max + 1);
    out.degen.resize(n_max + 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        out.face[n].resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) out.face[n][i] = action(coface(i, n - 1));
    }
    for (std::size_t n = 0; n + 1 <= n_max; ++n) {
        out.degen[n].resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) out.degen[n][i] = action(codegeneracy(i, n));
    }
    if (std::string e = out.check(); !e.empty()) throw std::logic_error("dold_kan: " + e);
    return out;
}

} // namespace bkc

#endif // BKC_SIMPLICIAL_MODULE_HPP
