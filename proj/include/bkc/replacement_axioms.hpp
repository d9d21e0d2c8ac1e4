#ifndef BKC_REPLACEMENT_AXIOMS_HPP
#define BKC_REPLACEMENT_AXIOMS_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "bkc/small_object.hpp"

namespace bkc {

/// Identity images of a complex, as a total lift.
inline BoundedLift identity_images(const FiniteSimplicialSet& x) {
    std::vector<std::vector<std::size_t>> img(x.dim_bound() + 1);
    for (std::size_t m = 0; m <= x.dim_bound(); ++m) {
        img[m].resize(x.size(m));
        for (std::size_t s = 0; s < x.size(m); ++s) img[m][s] = s;
    }
    return lift_from_total(img);
}

inline bool lift_is_identity(const BoundedLift& l) {
    for (std::size_t m = 0; m < l.images.size(); ++m)
        for (std::size_t s = 0; s < l.images[m].size(); ++s)
            if (l.defined[m][s] && l.images[m][s] != s) return false;
    return true;
}

inline std::size_t lift_defined_count(const BoundedLift& l) {
    std::size_t c = 0;
    for (const auto& lvl : l.defined)
        for (bool d : lvl) c += d;
    return c;
}

/// Duplicate-attachment audits. Cofibrant stages attach one cell per square
/// per stage, and the same square recurs at every later stage by design, so
/// the audit is per stage; horn attachments are pruned across all stages, so
/// the fibrant audit is global.
inline std::size_t cof_duplicate_squares(const CofReplacement& rep) {
    std::size_t dup = 0;
    for (std::size_t b = 1; b < rep.ledger.size(); ++b) {
        std::map<std::vector<std::size_t>, std::size_t> seen;
        for (const auto& a : rep.ledger[b])
            if (!seen.emplace(detail::square_key(a.n, a.a_images, a.b_top), b).second) ++dup;
    }
    return dup;
}

inline std::size_t fib_duplicate_horns(const FibReplacement& rep) {
    std::map<std::vector<std::size_t>, std::size_t> seen;
    std::size_t dup = 0;
    for (std::size_t b = 1; b < rep.ledger.size(); ++b)
        for (const auto& a : rep.ledger[b])
            if (!seen.emplace(detail::horn_key(a.n, a.k, a.c_images), b).second) ++dup;
    return dup;
}

/// Comonad axiom report for the bounded cofibrant replacement: the lifted
/// diagonal satisfies the counit laws and coassociativity on every cell whose
/// provenance stays within the bounds.
struct DiagonalAxiomReport {
    bool diagonal_total = false;
    bool diagonal_is_map = false;
    bool counit_law1 = false;  // eps_{SX} after the diagonal
    bool counit_law2 = false;  // lifted eps after the diagonal
    bool coassociativity = false;
    bool counit_is_map = false;
    std::size_t coassoc_compared = 0;
    std::size_t duplicates = 0;

    bool pass() const {
        return diagonal_total && diagonal_is_map && counit_law1 && counit_law2 &&
               coassociativity && counit_is_map && duplicates == 0;
    }
};

inline DiagonalAxiomReport cofibrant_axioms(const FiniteSimplicialSet& x, std::size_t B,
                                            std::size_t N) {
    DiagonalAxiomReport out;
    auto rep1 = cofibrant_stages(x, B, N);
    auto rep2 = cofibrant_stages(rep1.result, B, N);
    auto rep3 = cofibrant_stages(rep2.result, B, N);

    auto diag = cof_lift(rep1, identity_images(rep1.result), rep2);
    out.diagonal_total = diag.total;
    out.diagonal_is_map = check_lift(diag, rep1.result, rep2.result).empty();

    auto counit1 = compose_lifts(diag, lift_from_total(rep2.eps));
    out.counit_law1 = lift_is_identity(counit1) &&
                      lift_defined_count(counit1) == rep1.result.total_size();

    std::vector<std::vector<std::size_t>> eps_eps(N + 1);
    for (std::size_t m = 0; m <= N; ++m) {
        eps_eps[m].resize(rep2.result.size(m));
        for (std::size_t s = 0; s < rep2.result.size(m); ++s)
            eps_eps[m][s] = rep1.eps[m][rep2.eps[m][s]];
    }
    auto s_eps = cof_lift(rep2, lift_from_total(eps_eps), rep1);
    out.counit_law2 = lift_is_identity(compose_lifts(diag, s_eps));

    auto diag_s = cof_lift(rep2, identity_images(rep2.result), rep3);
    auto s_diag = cof_lift(rep2, compose_lifts(lift_from_total(rep2.eps), diag), rep3);
    auto [coassoc, compared] =
        lifts_agree(compose_lifts(diag, s_diag), compose_lifts(diag, diag_s));
    out.coassociativity = coassoc;
    out.coassoc_compared = compared;

    SimplicialSetMap eps;
    eps.source = &rep1.result;
    eps.target = &rep1.base;
    eps.images = rep1.eps;
    out.counit_is_map = eps.check().empty();
    out.duplicates = cof_duplicate_squares(rep1);
    return out;
}

/// Monad axiom report for the bounded fibrant replacement: the codiagonal is
/// partial at a finite stage bound, so the laws are checked on the defined
/// region; it must cover the first replacement entirely.
struct CodiagonalAxiomReport {
    bool covers_first = false;
    bool unit_law1 = false;  // identity on the included cells of the first replacement
    bool faces_commute = false;
    bool unit_law2 = false;  // through the lifted inclusion
    bool associativity = false;
    std::size_t assoc_compared = 0;
    std::size_t duplicates = 0;

    bool pass() const {
        return covers_first && unit_law1 && faces_commute && unit_law2 && associativity &&
               duplicates == 0;
    }
};

inline CodiagonalAxiomReport fibrant_axioms(const FiniteSimplicialSet& x, std::size_t B,
                                            std::size_t N) {
    CodiagonalAxiomReport out;
    auto rep1 = fibrant_stages(x, B, N);
    auto rep2 = fibrant_stages(rep1.result, B, N);
    auto rep3 = fibrant_stages(rep2.result, B, N);

    auto m_map = fib_lift(rep2, identity_images(rep1.result), rep1);
    out.covers_first = true;
    out.unit_law1 = true;
    for (std::size_t m = 0; m <= N; ++m)
        for (std::size_t s = 0; s < rep1.result.size(m); ++s) {
            if (!m_map.defined[m][s]) out.covers_first = false;
            else if (m_map.images[m][s] != s) out.unit_law1 = false;
        }
    out.faces_commute = true;
    for (std::size_t m = 1; m <= N; ++m)
        for (std::size_t s = 0; s < rep2.result.size(m); ++s) {
            if (!m_map.defined[m][s]) continue;
            for (std::size_t i = 0; i <= m; ++i) {
                std::size_t f = rep2.result.face(m, s, i);
                if (!m_map.defined[m - 1][f] ||
                    m_map.images[m - 1][f] != rep1.result.face(m, m_map.images[m][s], i))
                    out.faces_commute = false;
            }
        }

    auto t_nu = fib_lift(rep1, identity_images(x), rep2);
    auto unit2_lift = compose_lifts(t_nu, m_map);
    out.unit_law2 = t_nu.total && lift_is_identity(unit2_lift) &&
                    lift_defined_count(unit2_lift) == rep1.result.total_size();

    auto m_t = fib_lift(rep3, identity_images(rep2.result), rep2);
    auto t_m = fib_lift(rep3, m_map, rep1);
    auto [assoc, compared] =
        lifts_agree(compose_lifts(m_t, m_map), compose_lifts(t_m, m_map));
    out.associativity = assoc;
    out.assoc_compared = compared;
    out.duplicates = fib_duplicate_horns(rep1);
    return out;
}

} // namespace bkc

#endif // BKC_REPLACEMENT_AXIOMS_HPP
