#ifndef BKC_CHAIN_HPP
#define BKC_CHAIN_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkc/matrix.hpp"

namespace bkc {

/// A nonnegatively graded chain complex with exact differentials
/// diff[n] : C_n -> C_{n-1} (diff[0] is unused and kept empty).
template <class F>
struct ChainComplex {
    F field;
    std::vector<std::size_t> dims;       // dims[n] = dim C_n, n <= deg_max
    std::vector<Matrix<F>> diff;         // diff[n] : dims[n-1] x dims[n], n >= 1

    std::size_t deg_max() const { return dims.empty() ? 0 : dims.size() - 1; }
    std::size_t dim(std::size_t n) const { return n < dims.size() ? dims[n] : 0; }

    const Matrix<F>& differential(std::size_t n) const {
        if (n == 0 || n >= diff.size()) throw std::out_of_range("ChainComplex: no differential");
        return diff[n];
    }

    std::string check() const {
        if (diff.size() != dims.size()) return "chain: differential count mismatch";
        for (std::size_t n = 1; n < dims.size(); ++n) {
            if (diff[n].rows() != dims[n - 1] || diff[n].cols() != dims[n])
                return "chain: differential shape mismatch at degree " + std::to_string(n);
            if (n >= 2 && !(diff[n - 1] * diff[n]).is_zero())
                return "chain: dd != 0 at degree " + std::to_string(n);
        }
        return "";
    }

    /// dim H_n = dim ker(d_n) - rank(d_{n+1}). At n = deg_max the boundary
    /// group from degree deg_max+1 is not visible; callers decide whether
    /// that degree is reliable.
    std::size_t homology_dim(std::size_t n) const {
        if (n >= dims.size()) return 0;
        std::size_t cycles = (n == 0) ? dims[0] : kernel_basis(diff[n]).cols();
        std::size_t boundaries = (n + 1 < dims.size()) ? rank(diff[n + 1]) : 0;
        return cycles - boundaries;
    }

    /// Deterministic representatives of a basis of H_n: columns of the cycle
    /// space extending the boundary space, chosen left to right.
    Matrix<F> homology_basis(std::size_t n) const {
        if (n >= dims.size()) return Matrix<F>(field, 0, 0);
        Matrix<F> cycles = (n == 0) ? Matrix<F>::identity(field, dims[0])
                                    : kernel_basis(diff[n]);
        Matrix<F> bdry = (n + 1 < dims.size()) ? column_space_basis(diff[n + 1])
                                               : Matrix<F>(field, dims[n], 0);
        auto ext = extension_columns(bdry, cycles);
        return cycles.columns(ext);
    }
};

/// A degree-preserving chain map; components[n] : C_n -> D_n.
template <class F>
struct ChainMap {
    const ChainComplex<F>* source = nullptr;
    const ChainComplex<F>* target = nullptr;
    std::vector<Matrix<F>> components;

    std::string check() const {
        if (components.size() != source->dims.size()) return "chain map: component count";
        for (std::size_t n = 0; n < components.size(); ++n)
            if (components[n].rows() != target->dim(n) || components[n].cols() != source->dim(n))
                return "chain map: shape mismatch at degree " + std::to_string(n);
        for (std::size_t n = 1; n < components.size(); ++n)
            if (n < target->dims.size() &&
                components[n - 1] * source->diff[n] != target->diff[n] * components[n])
                return "chain map: does not commute with differential at degree " +
                       std::to_string(n);
        return "";
    }

    /// Matrix of the induced map H_n(source) -> H_n(target) in the
    /// deterministic homology bases of both sides.
    Matrix<F> induced_homology_map(std::size_t n) const {
        const F& k = source->field;
        Matrix<F> src_reps = source->homology_basis(n);
        Matrix<F> tgt_reps = target->homology_basis(n);
        Matrix<F> tgt_bdry = (n + 1 < target->dims.size())
                                 ? column_space_basis(target->diff[n + 1])
                                 : Matrix<F>(k, target->dim(n), 0);
        Matrix<F> images = components.at(n) * src_reps;
        // express each image as boundary + combination of representatives
        auto sol = solve(tgt_bdry.hstack(tgt_reps), images);
        if (!sol) throw std::logic_error("induced_homology_map: image not in cycle space");
        Matrix<F> out(k, tgt_reps.cols(), src_reps.cols());
        for (std::size_t i = 0; i < tgt_reps.cols(); ++i)
            for (std::size_t j = 0; j < src_reps.cols(); ++j)
                out.at(i, j) = sol->at(tgt_bdry.cols() + i, j);
        return out;
    }
};

} // namespace bkc

#endif // BKC_CHAIN_HPP
