#ifndef BKC_SIMPLICIAL_SET_HPP
#define BKC_SIMPLICIAL_SET_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bkc/ordinal.hpp"

namespace bkc {

/// A finite simplicial set truncated at dimension `dim_bound`. Levels hold
/// all simplices (degenerate ones included); faces and degeneracies are
/// stored as index tables. Simplices are identified by (level, index) and
/// indices are append-only, so a subcomplex snapshot is just a vector of
/// level sizes.
class FiniteSimplicialSet {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit FiniteSimplicialSet(std::size_t dim_bound = 0)
        : dim_bound_(dim_bound), faces_(dim_bound + 1), degens_(dim_bound + 1),
          degen_of_(dim_bound + 1), normal_form_(dim_bound + 1) {}

    std::size_t dim_bound() const { return dim_bound_; }
    std::size_t size(std::size_t level) const {
        return level <= dim_bound_ ? faces_[level].size() : 0;
    }
    std::size_t total_size() const {
        std::size_t t = 0;
        for (std::size_t n = 0; n <= dim_bound_; ++n) t += size(n);
        return t;
    }
    std::vector<std::size_t> level_sizes() const {
        std::vector<std::size_t> s(dim_bound_ + 1);
        for (std::size_t n = 0; n <= dim_bound_; ++n) s[n] = size(n);
        return s;
    }

    std::size_t face(std::size_t level, std::size_t idx, std::size_t i) const {
        return faces_.at(level).at(idx).at(i);
    }
    const std::vector<std::size_t>& faces_of(std::size_t level, std::size_t idx) const {
        return faces_.at(level).at(idx);
    }
    /// Degeneracy s_i; only defined when level+1 <= dim_bound.
    std::size_t degeneracy(std::size_t level, std::size_t idx, std::size_t i) const {
        return degens_.at(level).at(idx).at(i);
    }

    /// A simplex is degenerate iff it arose as s_i(y) for some y.
    bool is_degenerate(std::size_t level, std::size_t idx) const {
        return degen_of_.at(level).at(idx).first != npos;
    }
    /// For a degenerate simplex, a pair (j, y) with x = s_j(y).
    std::pair<std::size_t, std::size_t> degeneracy_witness(std::size_t level, std::size_t idx) const {
        auto p = degen_of_.at(level).at(idx);
        if (p.first == npos) throw std::logic_error("degeneracy_witness: simplex is nondegenerate");
        return p;
    }

    /// Add a nondegenerate simplex at `level` with the given face tuple, and
    /// generate its degeneracies up to the dimension bound (deduplicated via
    /// the normal form "surjection applied to a nondegenerate base", so
    /// s_i s_j y and s_{j+1} s_i y land on the same simplex). Returns its
    /// index. The face tuple is not checked for the d_i d_j identities here;
    /// use check_identities() after building.
    std::size_t add_cell(std::size_t level, const std::vector<std::size_t>& face_ids) {
        if (level > dim_bound_) throw std::invalid_argument("add_cell: level above bound");
        if (level > 0 && face_ids.size() != level + 1)
            throw std::invalid_argument("add_cell: need level+1 faces");
        std::size_t idx = append(level, level == 0 ? std::vector<std::size_t>{} : face_ids,
                                 npos, npos);
        set_normal_form(level, idx, level, idx, ordinal_identity(level));
        // fill degeneracy rows level by level so faces of new simplices
        // always have completed degeneracy rows below
        std::vector<std::size_t> frontier{idx};
        for (std::size_t n = level; n + 1 <= dim_bound_; ++n) {
            std::vector<std::size_t> next;
            for (std::size_t x : frontier) {
                degens_[n][x].assign(n + 1, npos);
                for (std::size_t j = 0; j <= n; ++j) {
                    auto [bl, bi, sigma] = normal_form(n, x);
                    OrdinalMap key_map = bkc::compose(codegeneracy(j, n), sigma);
                    auto key = std::make_tuple(bl, bi, key_map.values);
                    auto it = degen_index_.find(key);
                    if (it != degen_index_.end()) {
                        degens_[n][x][j] = it->second;
                        continue;
                    }
                    std::vector<std::size_t> f(n + 2);
                    for (std::size_t i = 0; i <= n + 1; ++i) {
                        if (i == j || i == j + 1) f[i] = x;
                        else if (i < j) f[i] = degeneracy(n - 1, face(n, x, i), j - 1);
                        else f[i] = degeneracy(n - 1, face(n, x, i - 1), j);
                    }
                    std::size_t s = append(n + 1, f, j, x);
                    set_normal_form(n + 1, s, bl, bi, key_map);
                    degens_[n][x][j] = s;
                    next.push_back(s);
                }
            }
            frontier = std::move(next);
        }
        return idx;
    }

    /// Install complete face/degeneracy/degeneracy-witness tables at once.
    void install_raw(std::vector<std::vector<std::vector<std::size_t>>> faces,
                     std::vector<std::vector<std::vector<std::size_t>>> degens,
                     std::vector<std::vector<std::pair<std::size_t, std::size_t>>> degen_of) {
        if (faces.size() != dim_bound_ + 1 || degens.size() != dim_bound_ + 1 ||
            degen_of.size() != dim_bound_ + 1)
            throw std::invalid_argument("install_raw: table level count mismatch");
        faces_ = std::move(faces);
        degens_ = std::move(degens);
        degen_of_ = std::move(degen_of);
        rebuild_normal_forms();
    }

    /// Structure-map action: for phi : [m] -> [n] monotone and an n-simplex x,
    /// returns phi*(x), an m-simplex. Uses the canonical epi-mono
    /// factorization phi = d^{i_1}..d^{i_r} s^{j_1}..s^{j_t}; contravariance
    /// applies the face operators first (outermost cofaces act first, so
    /// largest index first), then the degeneracy operators, smallest first.
    std::size_t act(const OrdinalMap& phi, std::size_t idx) const {
        EpiMonoWord w = epi_mono_factor(phi);
        std::size_t level = phi.target;
        std::size_t cur = idx;
        for (std::size_t i : w.faces) {
            cur = face(level, cur, i);
            --level;
        }
        for (std::size_t j : w.degeneracies) {
            cur = degeneracy(level, cur, j);
            ++level;
        }
        if (level != phi.source) throw std::logic_error("act: level bookkeeping error");
        return cur;
    }

    /// Verify all simplicial identities within the truncation. Returns an
    /// empty string on success, else a description of the first failure.
    std::string check_identities() const {
        for (std::size_t n = 2; n <= dim_bound_; ++n)
            for (std::size_t x = 0; x < size(n); ++x)
                for (std::size_t i = 0; i + 1 <= n; ++i)
                    for (std::size_t j = i + 1; j <= n; ++j)
                        if (face(n - 1, face(n, x, j), i) != face(n - 1, face(n, x, i), j - 1))
                            return "d_i d_j failure at level " + std::to_string(n) +
                                   " simplex " + std::to_string(x);
        for (std::size_t n = 0; n + 1 <= dim_bound_; ++n)
            for (std::size_t x = 0; x < size(n); ++x)
                for (std::size_t j = 0; j <= n; ++j) {
                    std::size_t sx = degeneracy(n, x, j);
                    for (std::size_t i = 0; i <= n + 1; ++i) {
                        std::size_t got = face(n + 1, sx, i);
                        std::size_t want;
                        if (i == j || i == j + 1) want = x;
                        else if (i < j) want = degeneracy(n - 1, face(n, x, i), j - 1);
                        else want = degeneracy(n - 1, face(n, x, i - 1), j);
                        if (got != want)
                            return "d_i s_j failure at level " + std::to_string(n) +
                                   " simplex " + std::to_string(x);
                    }
                }
        for (std::size_t n = 0; n + 2 <= dim_bound_; ++n)
            for (std::size_t x = 0; x < size(n); ++x)
                for (std::size_t i = 0; i <= n; ++i)
                    for (std::size_t j = i; j <= n; ++j)
                        if (degeneracy(n + 1, degeneracy(n, x, j), i) !=
                            degeneracy(n + 1, degeneracy(n, x, i), j + 1))
                            return "s_i s_j failure at level " + std::to_string(n) +
                                   " simplex " + std::to_string(x);
        return "";
    }

private:
    std::size_t append(std::size_t level, const std::vector<std::size_t>& face_ids,
                       std::size_t degen_j, std::size_t degen_y) {
        faces_[level].push_back(face_ids);
        degens_[level].emplace_back();
        degen_of_[level].emplace_back(degen_j, degen_y);
        normal_form_[level].emplace_back();
        return faces_[level].size() - 1;
    }

    // normal form of simplex (level, idx): the nondegenerate base simplex and
    // the surjection sigma with x = sigma*(base)
    std::tuple<std::size_t, std::size_t, OrdinalMap> normal_form(std::size_t level,
                                                                 std::size_t idx) const {
        const auto& nf = normal_form_.at(level).at(idx);
        return {nf.base_level, nf.base_idx, nf.sigma};
    }

    void set_normal_form(std::size_t level, std::size_t idx, std::size_t base_level,
                         std::size_t base_idx, OrdinalMap sigma) {
        if (normal_form_[level].size() <= idx) normal_form_[level].resize(idx + 1);
        normal_form_[level][idx] = {base_level, base_idx, sigma};
        if (!(base_level == level && base_idx == idx))
            degen_index_.emplace(std::make_tuple(base_level, base_idx, sigma.values),
                                 idx);
    }

    void rebuild_normal_forms() {
        degen_index_.clear();
        normal_form_.assign(dim_bound_ + 1, {});
        for (std::size_t n = 0; n <= dim_bound_; ++n) {
            normal_form_[n].resize(size(n));
            for (std::size_t x = 0; x < size(n); ++x) {
                if (!is_degenerate(n, x)) {
                    set_normal_form(n, x, n, x, ordinal_identity(n));
                } else {
                    auto [j, y] = degeneracy_witness(n, x);
                    // y is one level down and already processed
                    const auto& nf = normal_form_[n - 1][y];
                    set_normal_form(n, x, nf.base_level, nf.base_idx,
                                    bkc::compose(codegeneracy(j, n - 1), nf.sigma));
                }
            }
        }
    }

    struct NormalForm {
        std::size_t base_level = 0;
        std::size_t base_idx = 0;
        OrdinalMap sigma;
    };

    std::size_t dim_bound_;
    std::vector<std::vector<NormalForm>> normal_form_{1};
    std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t>
        degen_index_;
    // faces_[n][x] = (n+1) face ids in level n-1 (empty for n = 0)
    std::vector<std::vector<std::vector<std::size_t>>> faces_;
    // degens_[n][x] = (n+1) degeneracy ids in level n+1 (empty above bound)
    std::vector<std::vector<std::vector<std::size_t>>> degens_;
    // degen_of_[n][x] = (j, y) if x = s_j(y), else (npos, npos)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> degen_of_;
};

/// A level-indexed map of simplicial sets, validated to commute with faces
/// and degeneracies.
struct SimplicialSetMap {
    const FiniteSimplicialSet* source = nullptr;
    const FiniteSimplicialSet* target = nullptr;
    std::vector<std::vector<std::size_t>> images;  // images[n][x]

    std::size_t operator()(std::size_t level, std::size_t idx) const {
        return images.at(level).at(idx);
    }

    std::string check() const {
        if (images.size() != source->dim_bound() + 1) return "map: level count mismatch";
        for (std::size_t n = 0; n <= source->dim_bound(); ++n) {
            if (images[n].size() != source->size(n))
                return "map: level " + std::to_string(n) + " size mismatch";
            for (std::size_t x : images[n])
                if (x >= target->size(n)) return "map: image out of range";
        }
        for (std::size_t n = 1; n <= source->dim_bound(); ++n)
            for (std::size_t x = 0; x < source->size(n); ++x)
                for (std::size_t i = 0; i <= n; ++i)
                    if (target->face(n, images[n][x], i) != images[n - 1][source->face(n, x, i)])
                        return "map: face mismatch at level " + std::to_string(n);
        for (std::size_t n = 0; n + 1 <= source->dim_bound(); ++n)
            for (std::size_t x = 0; x < source->size(n); ++x)
                for (std::size_t j = 0; j <= n; ++j)
                    if (target->degeneracy(n, images[n][x], j) !=
                        images[n + 1][source->degeneracy(n, x, j)])
                        return "map: degeneracy mismatch at level " + std::to_string(n);
        return "";
    }
};

inline SimplicialSetMap identity_map(const FiniteSimplicialSet& X) {
    SimplicialSetMap f;
    f.source = f.target = &X;
    f.images.resize(X.dim_bound() + 1);
    for (std::size_t n = 0; n <= X.dim_bound(); ++n) {
        f.images[n].resize(X.size(n));
        for (std::size_t x = 0; x < X.size(n); ++x) f.images[n][x] = x;
    }
    return f;
}

inline SimplicialSetMap compose(const SimplicialSetMap& f, const SimplicialSetMap& g) {
    SimplicialSetMap h;
    h.source = f.source;
    h.target = g.target;
    h.images.resize(f.images.size());
    for (std::size_t n = 0; n < f.images.size(); ++n) {
        h.images[n].resize(f.images[n].size());
        for (std::size_t x = 0; x < f.images[n].size(); ++x)
            h.images[n][x] = g.images[n][f.images[n][x]];
    }
    return h;
}

// ---------------------------------------------------------------------------
// Standard simplicial sets presented by monotone maps.
// ---------------------------------------------------------------------------

/// A simplicial set whose m-simplices carry a canonical label: a tuple of
/// monotone maps out of [m], with componentwise precomposition as structure
/// maps. Covers standard simplices, their boundary/horn subcomplexes, and
/// binary products of standard simplices.
struct LabeledSimplicialSet {
    FiniteSimplicialSet cx;
    std::vector<std::vector<std::vector<OrdinalMap>>> labels;  // labels[level][idx]

    std::size_t find(std::size_t level, const std::vector<OrdinalMap>& lab) const {
        const auto& L = labels.at(level);
        for (std::size_t i = 0; i < L.size(); ++i)
            if (L[i] == lab) return i;
        throw std::logic_error("LabeledSimplicialSet::find: label not present");
    }
};

namespace detail {

/// Build the complex whose level-m simplices are tuples (alpha_1,..,alpha_c)
/// of monotone maps alpha_j : [m] -> [targets[j]] passing the filter `keep`,
/// which must be closed under precomposition.
template <class Keep>
LabeledSimplicialSet monotone_tuple_complex(const std::vector<std::size_t>& targets,
                                            std::size_t dim_bound, Keep keep) {
    const std::size_t npos = FiniteSimplicialSet::npos;
    std::vector<std::vector<std::vector<OrdinalMap>>> level_tuples(dim_bound + 1);
    std::vector<std::map<std::vector<OrdinalMap>, std::size_t>> index(dim_bound + 1);
    for (std::size_t m = 0; m <= dim_bound; ++m) {
        std::vector<std::vector<OrdinalMap>> tuples{{}};
        for (std::size_t c = 0; c < targets.size(); ++c) {
            std::vector<std::vector<OrdinalMap>> next;
            for (const auto& t : tuples)
                for (const auto& a : enumerate_monotone(m, targets[c])) {
                    auto t2 = t;
                    t2.push_back(a);
                    next.push_back(std::move(t2));
                }
            tuples = std::move(next);
        }
        for (auto& t : tuples)
            if (keep(t)) {
                index[m].emplace(t, level_tuples[m].size());
                level_tuples[m].push_back(std::move(t));
            }
    }

    auto precompose = [](const std::vector<OrdinalMap>& t, const OrdinalMap& phi) {
        std::vector<OrdinalMap> r;
        r.reserve(t.size());
        for (const auto& a : t) r.push_back(compose(phi, a));
        return r;
    };

    std::vector<std::vector<std::vector<std::size_t>>> faces(dim_bound + 1);
    std::vector<std::vector<std::vector<std::size_t>>> degens(dim_bound + 1);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> degen_of(dim_bound + 1);
    for (std::size_t m = 0; m <= dim_bound; ++m) {
        faces[m].resize(level_tuples[m].size());
        degens[m].resize(level_tuples[m].size());
        degen_of[m].assign(level_tuples[m].size(), {npos, npos});
    }
    for (std::size_t m = 0; m <= dim_bound; ++m)
        for (std::size_t x = 0; x < level_tuples[m].size(); ++x) {
            if (m > 0) {
                faces[m][x].resize(m + 1);
                for (std::size_t i = 0; i <= m; ++i)
                    faces[m][x][i] = index[m - 1].at(precompose(level_tuples[m][x], coface(i, m - 1)));
            }
            if (m + 1 <= dim_bound) {
                degens[m][x].resize(m + 1);
                for (std::size_t j = 0; j <= m; ++j) {
                    std::size_t y = index[m + 1].at(precompose(level_tuples[m][x], codegeneracy(j, m)));
                    degens[m][x][j] = y;
                    if (degen_of[m + 1][y].first == npos) degen_of[m + 1][y] = {j, x};
                }
            }
        }

    LabeledSimplicialSet out;
    out.cx = FiniteSimplicialSet(dim_bound);
    out.cx.install_raw(std::move(faces), std::move(degens), std::move(degen_of));
    out.labels = std::move(level_tuples);
    return out;
}

} // namespace detail

/// Standard simplex Delta[n], truncated at dim_bound.
inline LabeledSimplicialSet standard_simplex(std::size_t n, std::size_t dim_bound) {
    return detail::monotone_tuple_complex({n}, dim_bound,
                                          [](const std::vector<OrdinalMap>&) { return true; });
}

/// Boundary of Delta[n]: the non-surjective monotone maps.
inline LabeledSimplicialSet boundary_simplex(std::size_t n, std::size_t dim_bound) {
    return detail::monotone_tuple_complex({n}, dim_bound, [n](const std::vector<OrdinalMap>& t) {
        std::vector<bool> hit(n + 1, false);
        for (std::size_t v : t[0].values) hit[v] = true;
        for (std::size_t v = 0; v <= n; ++v)
            if (!hit[v]) return true;
        return false;
    });
}

/// Horn of Delta[n] missing the k-th face: maps whose image misses some
/// vertex other than k.
inline LabeledSimplicialSet horn(std::size_t n, std::size_t k, std::size_t dim_bound) {
    if (k > n) throw std::invalid_argument("horn: k out of range");
    return detail::monotone_tuple_complex({n}, dim_bound, [n, k](const std::vector<OrdinalMap>& t) {
        std::vector<bool> hit(n + 1, false);
        for (std::size_t v : t[0].values) hit[v] = true;
        for (std::size_t v = 0; v <= n; ++v)
            if (!hit[v] && v != k) return true;
        return false;
    });
}

/// Product Delta[n1] x Delta[n2].
inline LabeledSimplicialSet simplex_product(std::size_t n1, std::size_t n2, std::size_t dim_bound) {
    return detail::monotone_tuple_complex({n1, n2}, dim_bound,
                                          [](const std::vector<OrdinalMap>&) { return true; });
}

} // namespace bkc

#endif // BKC_SIMPLICIAL_SET_HPP
