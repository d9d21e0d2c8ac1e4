#ifndef BKC_ORDINAL_HPP
#define BKC_ORDINAL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkc {

/// A monotone map between finite ordinals [n] = {0..n}. The atom of all
/// simplicial and cosimplicial index bookkeeping.
struct OrdinalMap {
    std::size_t source = 0;  // ordinal [source]
    std::size_t target = 0;  // ordinal [target]
    std::vector<std::size_t> values;  // size source+1, weakly increasing, <= target

    OrdinalMap() = default;
    OrdinalMap(std::size_t src, std::size_t tgt, std::vector<std::size_t> vals)
        : source(src), target(tgt), values(std::move(vals)) {
        validate();
    }

    void validate() const {
        if (values.size() != source + 1)
            throw std::invalid_argument("OrdinalMap: value count != source+1");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] > target) throw std::invalid_argument("OrdinalMap: value exceeds target");
            if (i > 0 && values[i] < values[i - 1])
                throw std::invalid_argument("OrdinalMap: not monotone");
        }
    }

    std::size_t operator()(std::size_t i) const { return values.at(i); }

    bool operator==(const OrdinalMap& o) const {
        return source == o.source && target == o.target && values == o.values;
    }
    bool operator!=(const OrdinalMap& o) const { return !(*this == o); }
    bool operator<(const OrdinalMap& o) const {
        if (source != o.source) return source < o.source;
        if (target != o.target) return target < o.target;
        return values < o.values;
    }

    bool is_identity() const {
        if (source != target) return false;
        for (std::size_t i = 0; i <= source; ++i)
            if (values[i] != i) return false;
        return true;
    }

    std::string to_string() const {
        std::string s = "[" + std::to_string(source) + "]->[" + std::to_string(target) + "]:(";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(values[i]);
        }
        return s + ")";
    }
};

inline OrdinalMap ordinal_identity(std::size_t n) {
    std::vector<std::size_t> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = i;
    return OrdinalMap(n, n, std::move(v));
}

/// Coface d^i : [n] -> [n+1], the injection missing i.
inline OrdinalMap coface(std::size_t i, std::size_t n) {
    if (i > n + 1) throw std::invalid_argument("coface: index out of range");
    std::vector<std::size_t> v(n + 1);
    for (std::size_t j = 0; j <= n; ++j) v[j] = (j < i) ? j : j + 1;
    return OrdinalMap(n, n + 1, std::move(v));
}

/// Codegeneracy s^i : [n+1] -> [n], the surjection hitting i twice.
inline OrdinalMap codegeneracy(std::size_t i, std::size_t n) {
    if (i > n) throw std::invalid_argument("codegeneracy: index out of range");
    std::vector<std::size_t> v(n + 2);
    for (std::size_t j = 0; j <= n + 1; ++j) v[j] = (j <= i) ? j : j - 1;
    return OrdinalMap(n + 1, n, std::move(v));
}

/// compose(f, g) = g after f; requires f.target == g.source.
inline OrdinalMap compose(const OrdinalMap& f, const OrdinalMap& g) {
    if (f.target != g.source)
        throw std::invalid_argument("compose: f.target != g.source (" + f.to_string() + " ; " + g.to_string() + ")");
    std::vector<std::size_t> v(f.source + 1);
    for (std::size_t i = 0; i <= f.source; ++i) v[i] = g(f(i));
    return OrdinalMap(f.source, g.target, std::move(v));
}

/// All monotone maps [n] -> [m], in lexicographic order of value sequences.
inline std::vector<OrdinalMap> enumerate_monotone(std::size_t n, std::size_t m) {
    std::vector<OrdinalMap> out;
    std::vector<std::size_t> cur(n + 1, 0);
    while (true) {
        out.emplace_back(n, m, cur);
        // next weakly increasing sequence
        std::size_t i = n + 1;
        while (i > 0) {
            --i;
            if (cur[i] < m) {
                ++cur[i];
                for (std::size_t j = i + 1; j <= n; ++j) cur[j] = cur[i];
                goto next;
            }
        }
        break;
    next:;
    }
    return out;
}

/// Canonical epi-mono factorization: f = (faces, strictly decreasing
/// indices) after (degeneracies, strictly increasing indices).
struct EpiMonoWord {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> degeneracies;  // strictly increasing
    std::vector<std::size_t> faces;         // strictly decreasing

    /// Rebuild the ordinal map the word denotes.
    OrdinalMap recompose() const {
        OrdinalMap f = ordinal_identity(source);
        std::size_t n = source;
        // In the word d^{i_1}..d^{i_r} s^{j_1}..s^{j_t} the rightmost
        // operator acts first, so degeneracies apply largest index first.
        for (auto it = degeneracies.rbegin(); it != degeneracies.rend(); ++it) {
            f = compose(f, codegeneracy(*it, n - 1));
            --n;
        }
        for (auto it = faces.rbegin(); it != faces.rend(); ++it) {
            f = compose(f, coface(*it, n));
            ++n;
        }
        if (f.target != target) throw std::logic_error("EpiMonoWord: malformed word");
        return f;
    }
};

inline EpiMonoWord epi_mono_factor(const OrdinalMap& f) {
    EpiMonoWord w;
    w.source = f.source;
    w.target = f.target;
    // Degeneracy indices: j with f(j) == f(j+1).
    for (std::size_t j = 0; j < f.source; ++j)
        if (f(j) == f(j + 1)) w.degeneracies.push_back(j);
    // Face indices: values of [target] missed by f, decreasing.
    std::vector<bool> hit(f.target + 1, false);
    for (std::size_t i = 0; i <= f.source; ++i) hit[f(i)] = true;
    for (std::size_t v = f.target + 1; v > 0; --v)
        if (!hit[v - 1]) w.faces.push_back(v - 1);
    return w;
}

// ---------------------------------------------------------------------------
// Edgewise subdivision. The ordinal convention is normalized: the functor
// sends [n] to [k(n+1)-1].
// ---------------------------------------------------------------------------

/// Fold count k with a copy index l, 1 <= l <= k.
struct SubdivisionSpec {
    std::size_t k = 1;
    std::size_t l = 1;
    SubdivisionSpec(std::size_t kk, std::size_t ll) : k(kk), l(ll) {
        if (k == 0 || l == 0 || l > k) throw std::invalid_argument("SubdivisionSpec: need 1 <= l <= k");
    }
};

inline std::size_t edgewise_object(std::size_t k, std::size_t n) {
    return k * (n + 1) - 1;
}

inline OrdinalMap edgewise_map(std::size_t k, const OrdinalMap& phi) {
    const std::size_t n1 = phi.source + 1, n2 = phi.target + 1;
    std::vector<std::size_t> v(k * n1);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t i = 0; i < n1; ++i) v[t * n1 + i] = t * n2 + phi(i);
    return OrdinalMap(k * n1 - 1, k * n2 - 1, std::move(v));
}

/// The natural map [n] -> [k(n+1)-1] selecting the l-th copy.
inline OrdinalMap u_component(const SubdivisionSpec& spec, std::size_t n) {
    std::vector<std::size_t> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = (spec.l - 1) * (n + 1) + i;
    return OrdinalMap(n, edgewise_object(spec.k, n), std::move(v));
}

/// Interpolating structure map: for phi : [n] -> [k-1], the map
/// [n] -> [k(n+1)-1] with i |-> phi(i)*(n+1) + i. Always monotone.
inline OrdinalMap h_structure_map(std::size_t k, const OrdinalMap& phi) {
    if (phi.target + 1 != k) throw std::invalid_argument("h_structure_map: phi must land in [k-1]");
    const std::size_t n = phi.source;
    std::vector<std::size_t> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = phi(i) * (n + 1) + i;
    return OrdinalMap(n, edgewise_object(k, n), std::move(v));
}

} // namespace bkc

#endif // BKC_ORDINAL_HPP
