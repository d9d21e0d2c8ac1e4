#ifndef BKC_SIMPALG_HPP
#define BKC_SIMPALG_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bkc/field.hpp"
#include "bkc/matrix.hpp"
#include "bkc/simplicial_module.hpp"
#include "bkc/triple.hpp"

namespace bkc {

// ---------------------------------------------------------------------------
// Simplicial augmented commutative algebras over a prime field, square-zero
// extensions, abelianization, and the free/forget comonad with monomial-degree
// truncation. Multiplication tables are stored sparsely: free levels grow
// into the hundreds of basis monomials and their dense d x d^2 tables would
// not fit.
// ---------------------------------------------------------------------------

/// Thrown when a level-set or basis size exceeds its configured cap; the
/// message names the offending level so blowups fail loudly.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AlgMatrix = Matrix<PrimeField>;
using AlgElem = PrimeField::Elem;
/// Sparse column vector: (basis index, nonzero coefficient), sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, AlgElem>>;

/// One level of a simplicial augmented commutative algebra: a finite
/// commutative unital F_p-algebra with an augmentation onto F_p.
struct AugmentedAlgebraLevel {
    PrimeField field{};
    std::size_t dim = 0;
    std::vector<std::string> labels;
    AlgMatrix unit;  // dim x 1
    AlgMatrix aug;   // 1 x dim
    /// basis products e_i e_j, keyed by (min(i,j), max(i,j)); missing = zero
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> products;
    /// free levels record the monomial degree of each basis element and the
    /// truncation bound; products of total degree beyond it were dropped
    std::vector<std::size_t> basis_degree;
    std::size_t trunc_degree = 0;  // 0 = exact (no truncation applied)
    bool truncated = false;        // some basis product was dropped to zero

    void set_product(std::size_t i, std::size_t j, SparseVec v) {
        if (i > j) std::swap(i, j);
        std::sort(v.begin(), v.end());
        v.erase(std::remove_if(v.begin(), v.end(),
                               [&](const auto& p) { return field.is_zero(p.second); }),
                v.end());
        if (!v.empty()) products[{i, j}] = std::move(v);
    }

    const SparseVec* basis_product(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        auto it = products.find({i, j});
        return it == products.end() ? nullptr : &it->second;
    }

    /// True when the product e_i e_j was dropped by the degree truncation
    /// (as opposed to being genuinely zero).
    bool dropped_pair(std::size_t i, std::size_t j) const {
        return trunc_degree > 0 && !basis_degree.empty() &&
               basis_degree.at(i) + basis_degree.at(j) > trunc_degree;
    }

    SparseVec multiply_sparse(const SparseVec& u, const SparseVec& v) const {
        std::map<std::size_t, AlgElem> acc;
        for (const auto& [i, a] : u)
            for (const auto& [j, b] : v) {
                const SparseVec* p = basis_product(i, j);
                if (!p) continue;
                AlgElem c = field.mul(a, b);
                for (const auto& [k, e] : *p) {
                    AlgElem& slot = acc[k];
                    slot = field.add(slot, field.mul(c, e));
                }
            }
        SparseVec out;
        for (const auto& [k, e] : acc)
            if (!field.is_zero(e)) out.emplace_back(k, e);
        return out;
    }

    static SparseVec to_sparse(const AlgMatrix& col, const PrimeField& f) {
        SparseVec v;
        for (std::size_t i = 0; i < col.rows(); ++i)
            if (!f.is_zero(col.at(i, 0))) v.emplace_back(i, col.at(i, 0));
        return v;
    }

    AlgMatrix to_dense(const SparseVec& v) const {
        AlgMatrix c(field, dim, 1);
        for (const auto& [i, a] : v) c.at(i, 0) = a;
        return c;
    }

    /// Product of two column vectors.
    AlgMatrix multiply(const AlgMatrix& u, const AlgMatrix& v) const {
        return to_dense(multiply_sparse(to_sparse(u, field), to_sparse(v, field)));
    }

    /// Dense dim x dim^2 multiplication table (small levels only).
    AlgMatrix mult_dense() const {
        AlgMatrix m(field, dim, dim * dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                const SparseVec* p = basis_product(i, j);
                if (!p) continue;
                for (const auto& [k, e] : *p) m.at(k, i * dim + j) = e;
            }
        return m;
    }

    /// Commutativity holds by representation (products are keyed on unordered
    /// pairs); associativity is verified exhaustively only on small levels,
    /// larger ones are constructed associative (monomial exponent addition).
    std::string check(std::size_t assoc_limit = 24) const {
        if (unit.rows() != dim || unit.cols() != 1) return "algebra: unit shape";
        if (aug.rows() != 1 || aug.cols() != dim) return "algebra: aug shape";
        AlgMatrix one(field, 1, 1);
        one.at(0, 0) = field.one();
        if (aug * unit != one) return "algebra: aug(1) != 1";
        SparseVec us = to_sparse(unit, field);
        for (std::size_t j = 0; j < dim; ++j) {
            SparseVec ej{{j, field.one()}};
            if (multiply_sparse(us, ej) != ej) return "algebra: unit law";
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j) {
                AlgElem lhs = field.zero();
                if (const SparseVec* p = basis_product(i, j))
                    for (const auto& [k, e] : *p) lhs = field.add(lhs, field.mul(aug.at(0, k), e));
                AlgElem rhs = field.mul(aug.at(0, i), aug.at(0, j));
                if (!dropped_pair(i, j) && !field.eq(lhs, rhs))
                    return "algebra: augmentation not multiplicative";
            }
        if (dim <= assoc_limit) {
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    for (std::size_t k = 0; k < dim; ++k) {
                        SparseVec ei{{i, field.one()}}, ej{{j, field.one()}}, ek{{k, field.one()}};
                        if (multiply_sparse(multiply_sparse(ei, ej), ek) !=
                            multiply_sparse(ei, multiply_sparse(ej, ek)))
                            return "algebra: associativity";
                    }
        }
        return "";
    }

    bool operator==(const AugmentedAlgebraLevel& o) const {
        return dim == o.dim && unit == o.unit && aug == o.aug && products == o.products;
    }
};

/// Is the matrix f an algebra map a -> b? With within_degree set, basis pairs
/// whose product was dropped by a's truncation are exempt from the
/// multiplicativity requirement (evaluation maps out of truncated free
/// algebras are only multiplicative within the degree bound).
inline std::string algebra_map_error(const AlgMatrix& f, const AugmentedAlgebraLevel& a,
                                     const AugmentedAlgebraLevel& b,
                                     bool within_degree = false) {
    const PrimeField& k = a.field;
    if (f.rows() != b.dim || f.cols() != a.dim) return "map: shape";
    if (f * a.unit != b.unit) return "map: unit not preserved";
    if (b.aug * f != a.aug) return "map: augmentation not preserved";
    std::vector<SparseVec> cols(a.dim);
    for (std::size_t j = 0; j < a.dim; ++j)
        for (std::size_t i = 0; i < f.rows(); ++i)
            if (!k.is_zero(f.at(i, j))) cols[j].emplace_back(i, f.at(i, j));
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = i; j < a.dim; ++j) {
            if (within_degree && a.dropped_pair(i, j)) continue;
            SparseVec lhs;  // f(e_i e_j)
            if (const SparseVec* p = a.basis_product(i, j)) {
                std::map<std::size_t, AlgElem> acc;
                for (const auto& [t, c] : *p)
                    for (const auto& [r, e] : cols[t]) {
                        AlgElem& slot = acc[r];
                        slot = k.add(slot, k.mul(c, e));
                    }
                for (const auto& [r, e] : acc)
                    if (!k.is_zero(e)) lhs.emplace_back(r, e);
            }
            if (lhs != b.multiply_sparse(cols[i], cols[j]))
                return "map: not multiplicative at pair (" + std::to_string(i) + "," +
                       std::to_string(j) + ")";
        }
    return "";
}

/// A simplicial object of augmented commutative algebras, truncated at n_max;
/// all structure maps are algebra maps.
struct SimplicialAlgebra {
    PrimeField field{};
    std::vector<AugmentedAlgebraLevel> levels;
    std::vector<std::vector<AlgMatrix>> face;   // face[n][i], n >= 1
    std::vector<std::vector<AlgMatrix>> degen;  // degen[n][i], n+1 <= n_max

    std::size_t n_max() const { return levels.empty() ? 0 : levels.size() - 1; }

    SimplicialModule<PrimeField> underlying_module() const {
        SimplicialModule<PrimeField> m;
        m.field = field;
        for (const auto& l : levels) m.dims.push_back(l.dim);
        m.face = face;
        m.degen = degen;
        return m;
    }

    std::string check() const {
        for (std::size_t n = 0; n < levels.size(); ++n)
            if (std::string e = levels[n].check(); !e.empty())
                return "level " + std::to_string(n) + ": " + e;
        if (std::string e = underlying_module().check(); !e.empty()) return e;
        for (std::size_t n = 1; n < levels.size(); ++n)
            for (std::size_t i = 0; i <= n; ++i)
                if (std::string e = algebra_map_error(face[n][i], levels[n], levels[n - 1]);
                    !e.empty())
                    return "face d_" + std::to_string(i) + " at level " + std::to_string(n) +
                           ": " + e;
        for (std::size_t n = 0; n + 1 < levels.size(); ++n)
            for (std::size_t i = 0; i <= n; ++i)
                if (std::string e = algebra_map_error(degen[n][i], levels[n], levels[n + 1]);
                    !e.empty())
                    return "degeneracy s_" + std::to_string(i) + " at level " +
                           std::to_string(n) + ": " + e;
        return "";
    }

    bool operator==(const SimplicialAlgebra& o) const {
        return levels == o.levels && face == o.face && degen == o.degen;
    }
};

/// A morphism of simplicial algebras: levelwise matrices, carrying its source
/// and target so the category handle can recover them.
struct SimplicialAlgebraMap {
    std::shared_ptr<const SimplicialAlgebra> src, tgt;
    std::vector<AlgMatrix> levels;
};

/// Concrete category handle for the triple machinery.
struct SimpAlgCat {
    using Obj = SimplicialAlgebra;
    using Mor = SimplicialAlgebraMap;

    Mor identity(const Obj& a) const {
        Mor m;
        m.src = m.tgt = std::make_shared<SimplicialAlgebra>(a);
        for (const auto& l : a.levels) m.levels.push_back(AlgMatrix::identity(a.field, l.dim));
        return m;
    }
    Mor compose(const Mor& f, const Mor& g) const {  // f then g
        if (f.levels.size() != g.levels.size())
            throw std::invalid_argument("SimpAlgCat::compose: level count mismatch");
        Mor m;
        m.src = f.src;
        m.tgt = g.tgt;
        for (std::size_t n = 0; n < f.levels.size(); ++n) {
            if (g.levels[n].cols() != f.levels[n].rows())
                throw std::invalid_argument("SimpAlgCat::compose: shape mismatch at level " +
                                            std::to_string(n));
            m.levels.push_back(g.levels[n] * f.levels[n]);
        }
        return m;
    }
    bool eq(const Mor& f, const Mor& g) const { return f.levels == g.levels; }
    Obj source(const Mor& f) const { return *f.src; }
    Obj target(const Mor& f) const { return *f.tgt; }
    Mor zero(const Obj& a, const Obj& b) const {
        Mor m;
        m.src = std::make_shared<SimplicialAlgebra>(a);
        m.tgt = std::make_shared<SimplicialAlgebra>(b);
        for (std::size_t n = 0; n < a.levels.size(); ++n)
            m.levels.push_back(AlgMatrix(a.field, b.levels[n].dim, a.levels[n].dim));
        return m;
    }
};

// ---------------------------------------------------------------------------
// Square-zero extensions k (+) M.
// ---------------------------------------------------------------------------

inline AugmentedAlgebraLevel square_zero_level(PrimeField f, std::size_t m) {
    AugmentedAlgebraLevel a;
    a.field = f;
    a.dim = 1 + m;
    a.unit = AlgMatrix(f, a.dim, 1);
    a.unit.at(0, 0) = f.one();
    a.aug = AlgMatrix(f, 1, a.dim);
    a.aug.at(0, 0) = f.one();
    a.labels.push_back("1");
    for (std::size_t i = 0; i < m; ++i) a.labels.push_back("m" + std::to_string(i));
    a.set_product(0, 0, {{0, f.one()}});
    for (std::size_t j = 1; j <= m; ++j) a.set_product(0, j, {{j, f.one()}});
    return a;
}

/// k (+) M with multiplication (b1,x1)(b2,x2) = (b1 b2, b1 x2 + b2 x1).
inline SimplicialAlgebra square_zero(const SimplicialModule<PrimeField>& m) {
    SimplicialAlgebra x;
    x.field = m.field;
    auto block = [&](const AlgMatrix& f) {
        AlgMatrix b(m.field, f.rows() + 1, f.cols() + 1);
        b.at(0, 0) = m.field.one();
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < f.cols(); ++j) b.at(i + 1, j + 1) = f.at(i, j);
        return b;
    };
    for (std::size_t n = 0; n < m.dims.size(); ++n)
        x.levels.push_back(square_zero_level(m.field, m.dims[n]));
    x.face.resize(m.dims.size());
    x.degen.resize(m.dims.size());
    for (std::size_t n = 1; n < m.dims.size(); ++n)
        for (const auto& f : m.face[n]) x.face[n].push_back(block(f));
    for (std::size_t n = 0; n + 1 < m.dims.size(); ++n)
        for (const auto& s : m.degen[n]) x.degen[n].push_back(block(s));
    return x;
}

// ---------------------------------------------------------------------------
// Abelianization: indecomposables I/I^2 of the augmentation ideal.
// ---------------------------------------------------------------------------

struct IndecomposablesLevel {
    AlgMatrix proj;  // dim -> q, kills the unit and I^2
    AlgMatrix sect;  // q -> dim, proj * sect = identity
};

inline IndecomposablesLevel indecomposables(const AugmentedAlgebraLevel& a) {
    const PrimeField& k = a.field;
    if (!a.basis_degree.empty()) {
        // free level: I/I^2 is spanned by the degree-1 monomials
        std::vector<std::size_t> deg1;
        for (std::size_t i = 0; i < a.dim; ++i)
            if (a.basis_degree[i] == 1) deg1.push_back(i);
        IndecomposablesLevel out{AlgMatrix(k, deg1.size(), a.dim), AlgMatrix(k, a.dim, deg1.size())};
        for (std::size_t r = 0; r < deg1.size(); ++r) {
            out.proj.at(r, deg1[r]) = k.one();
            out.sect.at(deg1[r], r) = k.one();
        }
        return out;
    }
    // generic path: quotient by span(unit) + I^2
    AlgMatrix kb = kernel_basis(a.aug);  // ideal basis, dim x (dim-1)
    AlgMatrix u = a.unit;
    for (std::size_t i = 0; i < kb.cols(); ++i)
        for (std::size_t j = i; j < kb.cols(); ++j)
            u = u.hstack(a.multiply(kb.column(i), kb.column(j)));
    AlgMatrix ub = column_space_basis(u);
    AlgMatrix eye = AlgMatrix::identity(k, a.dim);
    AlgMatrix ext = eye.columns(extension_columns(ub, eye));
    auto inv = solve(ub.hstack(ext), eye);
    if (!inv) throw std::logic_error("indecomposables: basis completion failed");
    const std::size_t q = ext.cols();
    IndecomposablesLevel out{AlgMatrix(k, q, a.dim), ext};
    for (std::size_t r = 0; r < q; ++r)
        for (std::size_t c = 0; c < a.dim; ++c)
            out.proj.at(r, c) = inv->at(ub.cols() + r, c);
    return out;
}

/// Levelwise I/I^2 with the induced faces and degeneracies.
inline SimplicialModule<PrimeField> abelianize(const SimplicialAlgebra& x) {
    std::vector<IndecomposablesLevel> ind;
    for (const auto& l : x.levels) ind.push_back(indecomposables(l));
    SimplicialModule<PrimeField> m;
    m.field = x.field;
    for (const auto& i : ind) m.dims.push_back(i.proj.rows());
    m.face.resize(x.levels.size());
    m.degen.resize(x.levels.size());
    for (std::size_t n = 1; n < x.levels.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i)
            m.face[n].push_back(ind[n - 1].proj * x.face[n][i] * ind[n].sect);
    for (std::size_t n = 0; n + 1 < x.levels.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i)
            m.degen[n].push_back(ind[n + 1].proj * x.degen[n][i] * ind[n].sect);
    if (std::string e = m.check(); !e.empty()) throw std::logic_error("abelianize: " + e);
    return m;
}

/// The induced map I/I^2(f) for an algebra map f between levels.
inline AlgMatrix abelianize_map(const AlgMatrix& f, const AugmentedAlgebraLevel& a,
                                const AugmentedAlgebraLevel& b) {
    return indecomposables(b).proj * f * indecomposables(a).sect;
}

/// R = square_zero . abelianize, with unit (augmentation, residue class) and
/// multiplication collapsing the outer square-zero layer.
inline TripleDescriptor<SimpAlgCat> abelianization_triple() {
    TripleDescriptor<SimpAlgCat> r;
    r.cat = SimpAlgCat{};
    r.ob = [](const SimplicialAlgebra& x) { return square_zero(abelianize(x)); };
    r.mor = [](const SimplicialAlgebraMap& f) {
        SimplicialAlgebraMap m;
        m.src = std::make_shared<SimplicialAlgebra>(square_zero(abelianize(*f.src)));
        m.tgt = std::make_shared<SimplicialAlgebra>(square_zero(abelianize(*f.tgt)));
        for (std::size_t n = 0; n < f.levels.size(); ++n) {
            AlgMatrix q = abelianize_map(f.levels[n], f.src->levels[n], f.tgt->levels[n]);
            AlgMatrix b(f.src->field, q.rows() + 1, q.cols() + 1);
            b.at(0, 0) = f.src->field.one();
            for (std::size_t i = 0; i < q.rows(); ++i)
                for (std::size_t j = 0; j < q.cols(); ++j) b.at(i + 1, j + 1) = q.at(i, j);
            m.levels.push_back(b);
        }
        return m;
    };
    r.unit = [](const SimplicialAlgebra& x) {
        SimplicialAlgebraMap m;
        m.src = std::make_shared<SimplicialAlgebra>(x);
        m.tgt = std::make_shared<SimplicialAlgebra>(square_zero(abelianize(x)));
        for (const auto& l : x.levels) m.levels.push_back(l.aug.vstack(indecomposables(l).proj));
        return m;
    };
    r.mult = [](const SimplicialAlgebra& x) {
        SimplicialAlgebra a = square_zero(abelianize(x));
        SimplicialAlgebraMap m;
        m.src = std::make_shared<SimplicialAlgebra>(square_zero(abelianize(a)));
        m.tgt = std::make_shared<SimplicialAlgebra>(a);
        for (const auto& l : a.levels) {
            AlgMatrix iota = AlgMatrix::identity(l.field, l.dim) + (l.unit * l.aug).negated();
            m.levels.push_back(l.unit.hstack(iota * indecomposables(l).sect));
        }
        return m;
    };
    return r;
}

// ---------------------------------------------------------------------------
// The free/forget comonad with monomial-degree truncation. Forget takes the
// underlying pointed set of the augmentation ideal (all p^m elements, pointed
// at 0); free builds the polynomial algebra on one generator per element,
// truncated at total degree D with drop-to-zero overflow.
// ---------------------------------------------------------------------------

struct TruncationPolicy {
    std::size_t degree = 3;  // D: maximum monomial degree
    std::size_t cap = 4096;  // maximum basis elements (and generators) per level
};

struct OverflowLog {
    std::vector<std::string> events;
};

/// One free level: the truncated polynomial algebra together with its
/// generator bookkeeping (generators are the elements of the base ideal).
struct FreeLevel {
    AugmentedAlgebraLevel algebra;
    AlgMatrix ideal_basis;                             // base.dim x m, canonical
    std::vector<AlgMatrix> elements;                   // generator -> base element vector
    std::vector<std::vector<std::uint32_t>> exponents; // basis monomials
    std::map<std::vector<std::uint32_t>, std::size_t> index;
};

namespace detail {

inline std::string monomial_label(const std::vector<std::uint32_t>& e) {
    std::string s;
    for (std::size_t g = 0; g < e.size(); ++g) {
        if (e[g] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(g);
        if (e[g] > 1) s += "^" + std::to_string(e[g]);
    }
    return s.empty() ? "1" : s;
}

} // namespace detail

inline FreeLevel free_level(const AugmentedAlgebraLevel& base, const TruncationPolicy& pol,
                            std::size_t level, OverflowLog* log = nullptr) {
    const PrimeField& k = base.field;
    const std::uint64_t p = k.characteristic();
    FreeLevel out;
    out.ideal_basis = kernel_basis(base.aug);
    const std::size_t m = out.ideal_basis.cols();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < m; ++i) {
        count *= p;
        if (count > pol.cap)
            throw CapacityError("free_level: level " + std::to_string(level) + " has " +
                                std::to_string(m) + "-dimensional ideal; its " +
                                "p^" + std::to_string(m) +
                                " generators exceed the cap of " + std::to_string(pol.cap));
    }
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        AlgMatrix v(k, base.dim, 1);
        std::uint64_t rest = idx;
        for (std::size_t i = 0; i < m; ++i) {
            AlgElem c = static_cast<AlgElem>(rest % p);
            rest /= p;
            if (!k.is_zero(c))
                for (std::size_t r = 0; r < base.dim; ++r)
                    v.at(r, 0) = k.add(v.at(r, 0), k.mul(c, out.ideal_basis.at(r, i)));
        }
        out.elements.push_back(std::move(v));
    }
    const std::size_t G = out.elements.size();
    // monomial basis, ordered by total degree then lexicographically
    std::vector<std::uint32_t> e(G, 0);
    std::function<void(std::size_t, std::size_t)> gen = [&](std::size_t g, std::size_t left) {
        if (g == G || left == 0) {
            out.index.emplace(e, out.exponents.size());
            out.exponents.push_back(e);
            if (out.exponents.size() > pol.cap)
                throw CapacityError("free_level: level " + std::to_string(level) +
                                    " exceeds the basis cap of " + std::to_string(pol.cap) +
                                    " (" + std::to_string(G) + " generators at degree " +
                                    std::to_string(pol.degree) + ")");
            return;
        }
        for (std::uint32_t d = 0; d <= left; ++d) {
            e[g] = d;
            gen(g + 1, left - d);
            e[g] = 0;
        }
    };
    for (std::size_t d = 0; d <= pol.degree; ++d) {
        // exact-degree enumeration: force total degree d
        std::function<void(std::size_t, std::size_t)> gend = [&](std::size_t g, std::size_t left) {
            if (g + 1 == G) {
                e[g] = static_cast<std::uint32_t>(left);
                out.index.emplace(e, out.exponents.size());
                out.exponents.push_back(e);
                e[g] = 0;
                if (out.exponents.size() > pol.cap)
                    throw CapacityError("free_level: level " + std::to_string(level) +
                                        " exceeds the basis cap of " + std::to_string(pol.cap));
                return;
            }
            for (std::uint32_t x = 0; x <= left; ++x) {
                e[g] = x;
                gend(g + 1, left - x);
                e[g] = 0;
            }
        };
        if (G == 0) {
            if (d == 0) {
                out.index.emplace(e, out.exponents.size());
                out.exponents.push_back(e);
            }
        } else {
            gend(0, d);
        }
    }
    (void)gen;
    AugmentedAlgebraLevel& a = out.algebra;
    a.field = k;
    a.dim = out.exponents.size();
    a.unit = AlgMatrix(k, a.dim, 1);
    a.unit.at(0, 0) = k.one();
    a.aug = AlgMatrix(k, 1, a.dim);
    a.aug.at(0, 0) = k.one();
    a.trunc_degree = pol.degree;
    std::size_t dropped = 0;
    for (const auto& ex : out.exponents) {
        std::size_t deg = 0;
        for (auto x : ex) deg += x;
        a.basis_degree.push_back(deg);
        a.labels.push_back(detail::monomial_label(ex));
    }
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = i; j < a.dim; ++j) {
            if (a.basis_degree[i] + a.basis_degree[j] > pol.degree) {
                if (a.basis_degree[i] > 0 && a.basis_degree[j] > 0) ++dropped;
                continue;
            }
            std::vector<std::uint32_t> s(G);
            for (std::size_t g = 0; g < G; ++g) s[g] = out.exponents[i][g] + out.exponents[j][g];
            a.set_product(i, j, {{out.index.at(s), k.one()}});
        }
    if (dropped > 0) {
        a.truncated = true;
        if (log)
            log->events.push_back("level " + std::to_string(level) + ": " +
                                  std::to_string(dropped) +
                                  " monomial products dropped beyond degree " +
                                  std::to_string(pol.degree));
    }
    return out;
}

/// Generator index of a base-ideal element given as a column vector.
inline std::size_t free_element_index(const FreeLevel& fl, const AlgMatrix& v) {
    const PrimeField& k = fl.algebra.field;
    auto c = solve(fl.ideal_basis, v);
    if (!c) throw std::logic_error("free_element_index: vector not in the ideal");
    std::uint64_t idx = 0, pw = 1;
    const std::uint64_t p = k.characteristic();
    for (std::size_t i = 0; i < c->rows(); ++i) {
        idx += static_cast<std::uint64_t>(c->at(i, 0)) * pw;
        pw *= p;
    }
    return idx;
}

/// The algebra map free(src) -> free(dst) induced by a base algebra map:
/// generators map to generators along the element map (degree-preserving, so
/// no truncation is incurred).
inline AlgMatrix free_map_matrix(const FreeLevel& src, const FreeLevel& dst,
                                 const AlgMatrix& base_map) {
    const PrimeField& k = src.algebra.field;
    std::vector<std::size_t> gen_image(src.elements.size());
    for (std::size_t g = 0; g < src.elements.size(); ++g)
        gen_image[g] = free_element_index(dst, base_map * src.elements[g]);
    AlgMatrix out(k, dst.algebra.dim, src.algebra.dim);
    for (std::size_t col = 0; col < src.exponents.size(); ++col) {
        std::vector<std::uint32_t> img(dst.elements.size(), 0);
        for (std::size_t g = 0; g < src.exponents[col].size(); ++g)
            img[gen_image[g]] += src.exponents[col][g];
        out.at(dst.index.at(img), col) = k.one();
    }
    return out;
}

struct FreeSimplicialAlgebra {
    SimplicialAlgebra algebra;
    std::vector<FreeLevel> data;
};

/// SX = free(forget(X)) levelwise, with the induced structure maps.
inline FreeSimplicialAlgebra free_of(const SimplicialAlgebra& x, const TruncationPolicy& pol,
                                     OverflowLog* log = nullptr) {
    FreeSimplicialAlgebra out;
    out.algebra.field = x.field;
    for (std::size_t n = 0; n < x.levels.size(); ++n)
        out.data.push_back(free_level(x.levels[n], pol, n, log));
    for (auto& d : out.data) out.algebra.levels.push_back(d.algebra);
    out.algebra.face.resize(x.levels.size());
    out.algebra.degen.resize(x.levels.size());
    for (std::size_t n = 1; n < x.levels.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i)
            out.algebra.face[n].push_back(
                free_map_matrix(out.data[n], out.data[n - 1], x.face[n][i]));
    for (std::size_t n = 0; n + 1 < x.levels.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i)
            out.algebra.degen[n].push_back(
                free_map_matrix(out.data[n], out.data[n + 1], x.degen[n][i]));
    return out;
}

/// Evaluation SX -> X: each monomial goes to the product of its generator
/// elements; exact on surviving monomials (truncated products were dropped).
inline SimplicialAlgebraMap free_counit(const FreeSimplicialAlgebra& sx,
                                        const SimplicialAlgebra& x) {
    SimplicialAlgebraMap m;
    m.src = std::make_shared<SimplicialAlgebra>(sx.algebra);
    m.tgt = std::make_shared<SimplicialAlgebra>(x);
    for (std::size_t n = 0; n < x.levels.size(); ++n) {
        const FreeLevel& fl = sx.data[n];
        const AugmentedAlgebraLevel& base = x.levels[n];
        AlgMatrix c(x.field, base.dim, fl.algebra.dim);
        for (std::size_t col = 0; col < fl.exponents.size(); ++col) {
            AlgMatrix v = base.unit;
            for (std::size_t g = 0; g < fl.exponents[col].size(); ++g)
                for (std::uint32_t rep = 0; rep < fl.exponents[col][g]; ++rep)
                    v = base.multiply(v, fl.elements[g]);
            for (std::size_t r = 0; r < base.dim; ++r) c.at(r, col) = v.at(r, 0);
        }
        m.levels.push_back(std::move(c));
    }
    return m;
}

/// Generator-of-generator inclusion SX -> SSX.
inline SimplicialAlgebraMap free_comult(const FreeSimplicialAlgebra& sx,
                                        const FreeSimplicialAlgebra& ssx) {
    SimplicialAlgebraMap m;
    m.src = std::make_shared<SimplicialAlgebra>(sx.algebra);
    m.tgt = std::make_shared<SimplicialAlgebra>(ssx.algebra);
    for (std::size_t n = 0; n < sx.data.size(); ++n) {
        const FreeLevel& fl = sx.data[n];
        const FreeLevel& fl2 = ssx.data[n];
        std::vector<std::size_t> gen_image(fl.elements.size());
        for (std::size_t g = 0; g < fl.elements.size(); ++g) {
            AlgMatrix xg(sx.algebra.field, fl.algebra.dim, 1);
            std::vector<std::uint32_t> e(fl.elements.size(), 0);
            e[g] = 1;
            xg.at(fl.index.at(e), 0) = sx.algebra.field.one();
            gen_image[g] = free_element_index(fl2, xg);
        }
        AlgMatrix out(sx.algebra.field, fl2.algebra.dim, fl.algebra.dim);
        for (std::size_t col = 0; col < fl.exponents.size(); ++col) {
            std::vector<std::uint32_t> img(fl2.elements.size(), 0);
            for (std::size_t g = 0; g < fl.exponents[col].size(); ++g)
                img[gen_image[g]] += fl.exponents[col][g];
            out.at(fl2.index.at(img), col) = sx.algebra.field.one();
        }
        m.levels.push_back(std::move(out));
    }
    return m;
}

inline CotripleDescriptor<SimpAlgCat> free_forget_comonad(
    const TruncationPolicy& pol, std::shared_ptr<OverflowLog> log = nullptr) {
    CotripleDescriptor<SimpAlgCat> s;
    s.cat = SimpAlgCat{};
    OverflowLog* lp = log.get();
    auto logged = [log]() { return log.get(); };
    s.ob = [pol, logged](const SimplicialAlgebra& x) { return free_of(x, pol, logged()).algebra; };
    s.mor = [pol, logged](const SimplicialAlgebraMap& f) {
        auto sf = free_of(*f.src, pol, logged());
        auto tf = free_of(*f.tgt, pol, logged());
        SimplicialAlgebraMap m;
        m.src = std::make_shared<SimplicialAlgebra>(sf.algebra);
        m.tgt = std::make_shared<SimplicialAlgebra>(tf.algebra);
        for (std::size_t n = 0; n < f.levels.size(); ++n)
            m.levels.push_back(free_map_matrix(sf.data[n], tf.data[n], f.levels[n]));
        return m;
    };
    s.counit = [pol, logged](const SimplicialAlgebra& x) {
        return free_counit(free_of(x, pol, logged()), x);
    };
    s.comult = [pol, logged](const SimplicialAlgebra& x) {
        auto sx = free_of(x, pol, logged());
        auto ssx = free_of(sx.algebra, pol, logged());
        return free_comult(sx, ssx);
    };
    (void)lp;
    return s;
}

/// Fused coface core S(unit at SZ) . Delta_Z : SZ -> SRSZ. Equal to the
/// generic assembly but never materializes S(SZ), whose generator set is
/// exponential in dim SZ: a generator x_t goes directly to the generator of
/// SRSZ named by the element unit(x_t) of the ideal of RSZ.
inline SimplicialAlgebraMap fused_coface_core(const TripleDescriptor<SimpAlgCat>& r,
                                              const TruncationPolicy& pol,
                                              const SimplicialAlgebra& z,
                                              OverflowLog* log = nullptr) {
    auto szf = free_of(z, pol, log);
    SimplicialAlgebraMap nu = r.unit(szf.algebra);
    auto srszf = free_of(*nu.tgt, pol, log);
    SimplicialAlgebraMap m;
    m.src = std::make_shared<SimplicialAlgebra>(szf.algebra);
    m.tgt = std::make_shared<SimplicialAlgebra>(srszf.algebra);
    for (std::size_t n = 0; n < szf.data.size(); ++n) {
        const FreeLevel& fl = szf.data[n];
        const FreeLevel& fl2 = srszf.data[n];
        std::vector<std::size_t> gen_image(fl.elements.size());
        for (std::size_t g = 0; g < fl.elements.size(); ++g) {
            AlgMatrix xg(z.field, fl.algebra.dim, 1);
            std::vector<std::uint32_t> e(fl.elements.size(), 0);
            e[g] = 1;
            xg.at(fl.index.at(e), 0) = z.field.one();
            gen_image[g] = free_element_index(fl2, nu.levels[n] * xg);
        }
        AlgMatrix out(z.field, fl2.algebra.dim, fl.algebra.dim);
        for (std::size_t col = 0; col < fl.exponents.size(); ++col) {
            std::vector<std::uint32_t> img(fl2.elements.size(), 0);
            for (std::size_t g = 0; g < fl.exponents[col].size(); ++g)
                img[gen_image[g]] += fl.exponents[col][g];
            out.at(fl2.index.at(img), col) = z.field.one();
        }
        m.levels.push_back(std::move(out));
    }
    return m;
}

/// The wired-up pair (abelianization triple, free/forget cotriple) with the
/// fused coface core, ready for mixed resolutions and completions.
struct AbelianQuotientSetup {
    TruncationPolicy policy;
    std::shared_ptr<OverflowLog> log;
    TripleDescriptor<SimpAlgCat> triple;
    CotripleDescriptor<SimpAlgCat> cotriple;
    std::function<SimplicialAlgebraMap(const SimplicialAlgebra&)> coface_core;
};

inline AbelianQuotientSetup abelian_quotient_setup(const TruncationPolicy& pol) {
    AbelianQuotientSetup s;
    s.policy = pol;
    s.log = std::make_shared<OverflowLog>();
    s.triple = abelianization_triple();
    s.cotriple = free_forget_comonad(pol, s.log);
    auto r = s.triple;
    auto log = s.log;
    s.coface_core = [r, pol, log](const SimplicialAlgebra& z) {
        return fused_coface_core(r, pol, z, log.get());
    };
    return s;
}

// ---------------------------------------------------------------------------
// Connectedness and the conjecture experiment.
// ---------------------------------------------------------------------------

/// Is the unit map k -> pi_0(X) an isomorphism? pi_0 is the coequalizer of
/// d_0, d_1 on the underlying module.
inline bool connectedness(const SimplicialAlgebra& x) {
    if (x.n_max() < 1) throw std::invalid_argument("connectedness: needs n_max >= 1");
    AlgMatrix diff = x.face[1][0] + x.face[1][1].negated();
    AlgMatrix im = column_space_basis(diff);
    std::size_t pi0 = x.levels[0].dim - im.cols();
    if (pi0 != 1) return false;
    return rank(im.hstack(x.levels[0].unit)) == im.cols() + 1;
}

struct ExperimentReport {
    bool connected = false;
    std::vector<std::string> notes;
    std::vector<std::string> overflow;
    CompletionReport<PrimeField> completion;
};

/// Builds the mixed resolution of X along (free/forget, abelianization),
/// linearizes by forgetting the algebra structure, and runs the completion
/// machinery. The conjecture itself is an experiment, not an assertion.
inline ExperimentReport conjecture_experiment(const SimplicialAlgebra& x, std::size_t s_max,
                                              std::size_t t_max, std::size_t r_max,
                                              const TruncationPolicy& pol) {
    if (x.n_max() != t_max)
        throw std::invalid_argument("conjecture_experiment: X must be truncated at t_max");
    ExperimentReport rep;
    auto setup = abelian_quotient_setup(pol);
    rep.connected = connectedness(x);
    if (!rep.connected)
        rep.notes.push_back("warning: k -> pi_0(X) is not an isomorphism; "
                            "the experiment proceeds anyway");
    std::function<SimplicialModule<PrimeField>(const SimplicialAlgebra&)> lin_ob =
        [](const SimplicialAlgebra& a) { return a.underlying_module(); };
    std::function<std::vector<AlgMatrix>(const SimplicialAlgebraMap&)> lin_mor =
        [](const SimplicialAlgebraMap& f) { return f.levels; };
    rep.completion = completion<SimpAlgCat, PrimeField>(
        setup.cotriple, setup.triple, x, s_max, t_max, r_max, lin_ob, lin_mor,
        setup.coface_core);
    rep.overflow = setup.log->events;
    return rep;
}

} // namespace bkc

#endif // BKC_SIMPALG_HPP
