#ifndef BKC_MATRIX_HPP
#define BKC_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bkc/field.hpp"

namespace bkc {

/// Default column count above which elimination switches to the sparse
/// row-list representation.
inline std::size_t& sparse_threshold() {
    static std::size_t t = 64;
    return t;
}

/// Dense exact matrix over a field F. Entries are never rounded; all
/// elimination uses the deterministic leftmost-pivot, lowest-row rule so
/// results are reproducible across runs and representations.
template <class F>
class Matrix {
public:
    using Elem = typename F::Elem;

    Matrix() : rows_(0), cols_(0) {}
    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }
    static Matrix zero(F field, std::size_t rows, std::size_t cols) { return Matrix(field, rows, cols); }

    static Matrix from_ints(F field, std::size_t rows, std::size_t cols,
                            const std::vector<long long>& rowmajor) {
        if (rowmajor.size() != rows * cols) throw std::invalid_argument("Matrix::from_ints: size mismatch");
        Matrix m(field, rows, cols);
        for (std::size_t i = 0; i < rows * cols; ++i) m.data_[i] = field.from_int(rowmajor[i]);
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (!field_.eq(data_[i], o.data_[i])) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& e : data_)
            if (!field_.is_zero(e)) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix::mul: dimension mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elem& a = at(i, k);
                if (field_.is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Elem& b = o.at(k, j);
                    if (field_.is_zero(b)) continue;
                    r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, b));
                }
            }
        return r;
    }
    Matrix operator+(const Matrix& o) const {
        require_same_shape(o, "add");
        Matrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        require_same_shape(o, "sub");
        Matrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
        return r;
    }
    Matrix scaled(const Elem& c) const {
        Matrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.mul(data_[i], c);
        return r;
    }
    Matrix negated() const {
        Matrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.neg(data_[i]);
        return r;
    }

    Matrix transposed() const {
        Matrix r(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    /// Horizontal concatenation [this | o].
    Matrix hstack(const Matrix& o) const {
        if (rows_ != o.rows_) throw std::invalid_argument("Matrix::hstack: row mismatch");
        Matrix r(field_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }
    /// Vertical concatenation [this ; o].
    Matrix vstack(const Matrix& o) const {
        if (cols_ != o.cols_) throw std::invalid_argument("Matrix::vstack: col mismatch");
        Matrix r(field_, rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
        return r;
    }

    Matrix column(std::size_t j) const {
        Matrix r(field_, rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
        return r;
    }
    Matrix columns(const std::vector<std::size_t>& idx) const {
        Matrix r(field_, rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
        return r;
    }

    /// Kronecker product (this ⊗ o).
    Matrix kron(const Matrix& o) const {
        Matrix r(field_, rows_ * o.rows_, cols_ * o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const Elem& a = at(i, j);
                if (field_.is_zero(a)) continue;
                for (std::size_t k = 0; k < o.rows_; ++k)
                    for (std::size_t l = 0; l < o.cols_; ++l)
                        r.at(i * o.rows_ + k, j * o.cols_ + l) = field_.mul(a, o.at(k, l));
            }
        return r;
    }

    /// Block diagonal [this 0; 0 o].
    Matrix direct_sum(const Matrix& o) const {
        Matrix r(field_, rows_ + o.rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o.at(i, j);
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ' ';
                s += field_.to_string(at(i, j));
            }
            s += '\n';
        }
        return s;
    }

private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("Matrix::") + op + ": shape mismatch");
    }

    F field_{};
    std::size_t rows_, cols_;
    std::vector<Elem> data_;
};

/// Result of row reduction: the reduced matrix and its pivot columns.
template <class F>
struct Rref {
    Matrix<F> mat;
    std::vector<std::size_t> pivot_cols;
};

namespace detail {

// Sparse rows as sorted (col, val) lists. Same pivot rule as the dense
// path: scan columns left to right, pivot row = first remaining row with a
// nonzero entry in that column.
template <class F>
Rref<F> rref_sparse(const Matrix<F>& a) {
    using Elem = typename F::Elem;
    const F& k = a.field();
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::vector<std::pair<std::size_t, Elem>>> rows(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!k.is_zero(a.at(i, j))) rows[i].emplace_back(j, a.at(i, j));

    auto axpy = [&](std::vector<std::pair<std::size_t, Elem>>& dst,
                    const Elem& c, const std::vector<std::pair<std::size_t, Elem>>& src) {
        // dst += c * src
        std::vector<std::pair<std::size_t, Elem>> out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                out.push_back(dst[i++]);
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                out.emplace_back(src[j].first, k.mul(c, src[j].second));
                ++j;
            } else {
                Elem v = k.add(dst[i].second, k.mul(c, src[j].second));
                if (!k.is_zero(v)) out.emplace_back(dst[i].first, v);
                ++i; ++j;
            }
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [&](const auto& p) { return k.is_zero(p.second); }),
                  out.end());
        dst = std::move(out);
    };

    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t piv = m;
        for (std::size_t i = rank; i < m; ++i) {
            if (!rows[i].empty() && rows[i].front().first == col) { piv = i; break; }
        }
        if (piv == m) continue;
        std::swap(rows[rank], rows[piv]);
        Elem c = k.inv(rows[rank].front().second);
        for (auto& p : rows[rank]) p.second = k.mul(p.second, c);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank) continue;
            auto it = std::lower_bound(rows[i].begin(), rows[i].end(), col,
                                       [](const auto& p, std::size_t c2) { return p.first < c2; });
            if (it != rows[i].end() && it->first == col) {
                Elem f = k.neg(it->second);
                axpy(rows[i], f, rows[rank]);
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    Matrix<F> out(k, m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [j, v] : rows[i]) out.at(i, j) = v;
    return {std::move(out), std::move(pivots)};
}

template <class F>
Rref<F> rref_dense(const Matrix<F>& a) {
    using Elem = typename F::Elem;
    const F& k = a.field();
    Matrix<F> r = a;
    const std::size_t m = r.rows(), n = r.cols();
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t piv = m;
        for (std::size_t i = rank; i < m; ++i)
            if (!k.is_zero(r.at(i, col))) { piv = i; break; }
        if (piv == m) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < n; ++j) std::swap(r.at(rank, j), r.at(piv, j));
        Elem c = k.inv(r.at(rank, col));
        for (std::size_t j = col; j < n; ++j) r.at(rank, j) = k.mul(r.at(rank, j), c);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || k.is_zero(r.at(i, col))) continue;
            Elem f = r.at(i, col);
            for (std::size_t j = col; j < n; ++j)
                r.at(i, j) = k.sub(r.at(i, j), k.mul(f, r.at(rank, j)));
        }
        pivots.push_back(col);
        ++rank;
    }
    return {std::move(r), std::move(pivots)};
}

} // namespace detail

template <class F>
Rref<F> rref(const Matrix<F>& a) {
    if (a.cols() > sparse_threshold()) return detail::rref_sparse(a);
    return detail::rref_dense(a);
}

template <class F>
std::size_t rank(const Matrix<F>& a) {
    return rref(a).pivot_cols.size();
}

/// Columns span the null space of a. Free variables are taken in
/// increasing column order, so the basis is canonical.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& a) {
    const F& k = a.field();
    Rref<F> r = rref(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : r.pivot_cols) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix<F> ker(k, n, free_cols.size());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::size_t f = free_cols[fi];
        ker.at(f, fi) = k.one();
        for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
            ker.at(r.pivot_cols[pi], fi) = k.neg(r.mat.at(pi, f));
    }
    return ker;
}

/// Solve A X = B for all columns of B at once. Returns nullopt when any
/// column is inconsistent. The particular solution sets free variables to 0.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    const F& k = a.field();
    Rref<F> r = rref(a.hstack(b));
    const std::size_t n = a.cols();
    // Inconsistent iff some pivot lands in the B block.
    for (std::size_t p : r.pivot_cols)
        if (p >= n) return std::nullopt;
    Matrix<F> x(k, n, b.cols());
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(r.pivot_cols[pi], j) = r.mat.at(pi, n + j);
    return x;
}

/// Indices of a maximal independent subset of columns, scanning left to
/// right (the pivot columns of the rref).
template <class F>
std::vector<std::size_t> independent_columns(const Matrix<F>& a) {
    return rref(a).pivot_cols;
}

/// Basis of the column space as a matrix (subset of the original columns).
template <class F>
Matrix<F> column_space_basis(const Matrix<F>& a) {
    return a.columns(independent_columns(a));
}

/// Basis of span(U) + span(V).
template <class F>
Matrix<F> sum_basis(const Matrix<F>& u, const Matrix<F>& v) {
    return column_space_basis(u.hstack(v));
}

/// Basis of span(U) ∩ span(V).
template <class F>
Matrix<F> intersect_basis(const Matrix<F>& u, const Matrix<F>& v) {
    if (u.cols() == 0 || v.cols() == 0) return Matrix<F>(u.field(), u.rows(), 0);
    Matrix<F> ker = kernel_basis(u.hstack(v.negated()));
    // First u.cols() coordinates of each kernel vector give a combination of U.
    Matrix<F> coefs(u.field(), u.cols(), ker.cols());
    for (std::size_t i = 0; i < u.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) coefs.at(i, j) = ker.at(i, j);
    return column_space_basis(u * coefs);
}

/// True iff v (a column vector or matrix of columns) lies in span(U).
template <class F>
bool in_span(const Matrix<F>& u, const Matrix<F>& v) {
    return solve(u, v).has_value();
}

/// Columns of `big` extending span(small) to span(small)+span(big), chosen
/// deterministically left to right.
template <class F>
std::vector<std::size_t> extension_columns(const Matrix<F>& small, const Matrix<F>& big) {
    std::vector<std::size_t> out;
    Matrix<F> cur = small;
    std::size_t cur_rank = rank(cur);
    for (std::size_t j = 0; j < big.cols(); ++j) {
        Matrix<F> cand = cur.hstack(big.column(j));
        if (rank(cand) > cur_rank) {
            out.push_back(j);
            cur = cand;
            ++cur_rank;
        }
    }
    return out;
}

} // namespace bkc

#endif // BKC_MATRIX_HPP
