// Command-line front end for the workbench: fixture ingestion, experiment
// orchestration, and deterministic JSON/TSV reports.
//
// Subcommands:
//   cobar    completion of a module along a tensor triple; spectral pages
//   aq       abelianization/free-forget experiment on a simplicial algebra
//   kan      bounded cofibrant/fibrant replacement of a simplicial set
//   subdiv   edgewise subdivision copy maps and their homotopies
//   selftest invariant suite with a corrupted-fixture negative control
//
// Exit codes: 0 success, 1 validation error, 2 capacity error, 3 invariant
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bkc/cosimplicial.hpp"
#include "bkc/simpalg.hpp"
#include "bkc/simplicial_module.hpp"
#include "bkc/simplicial_set.hpp"
#include "bkc/replacement_axioms.hpp"
#include "bkc/spectral.hpp"
#include "bkc/triple.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bkc;

// ---------------------------------------------------------------------------
// Run configuration and output plumbing
// ---------------------------------------------------------------------------

struct RunConfig {
    std::uint64_t characteristic = 2;
    std::size_t s_max = 3;
    std::size_t t_max = 2;
    std::size_t r_max = 3;
    std::size_t degree = 3;   // monomial-degree truncation (aq)
    std::size_t cap = 4096;   // basis-size cap per level (aq)
    std::size_t stages = 2;   // stage bound B (kan)
    std::size_t dim = 1;      // dimension bound N (kan)
    std::uint64_t seed = 13;
    std::string out;

    json to_json() const {
        return json{{"characteristic", characteristic}, {"s_max", s_max},
                    {"t_max", t_max},                   {"r_max", r_max},
                    {"degree", degree},                 {"cap", cap},
                    {"stage_bound", stages},            {"dim_bound", dim},
                    {"seed", seed}};
    }
};

static void write_file(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + p.string());
    out << text;
}

static json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open fixture " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw std::invalid_argument("fixture " + path + " is empty");
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("fixture " + path + " is not valid JSON");
    return j;
}

/// TSV header lines carrying the run configuration, seed, and reliability
/// window; every emitted table starts with these.
static std::string tsv_header(const RunConfig& cfg, const json& reliability) {
    std::string h;
    h += "# config\t" + cfg.to_json().dump() + "\n";
    h += "# seed\t" + std::to_string(cfg.seed) + "\n";
    h += "# reliability\t" + reliability.dump() + "\n";
    return h;
}

template <class F>
static json matrix_to_json(const Matrix<F>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m.field().to_string(m.at(i, j)));
        rows.push_back(std::move(r));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

template <class F>
static Matrix<F> matrix_from_json(F field, const json& flat, std::size_t rows,
                                  std::size_t cols, const std::string& what) {
    if (!flat.is_array() || flat.size() != rows * cols)
        throw std::invalid_argument(what + ": expected " + std::to_string(rows * cols) +
                                    " row-major entries");
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = field.from_int(flat[i * cols + j].template get<long long>());
    return m;
}

// ---------------------------------------------------------------------------
// Spectral-sequence report serialization
// ---------------------------------------------------------------------------

template <class F>
static json ss_to_json(const SSReport<F>& ss) {
    json pages = json::array();
    for (const auto& page : ss.pages) {
        json entries = json::array();
        for (std::size_t s = 0; s < page.entries.size(); ++s)
            for (std::size_t t = 0; t < page.entries[s].size(); ++t) {
                const auto& e = page.entries[s][t];
                entries.push_back(json{{"s", s},
                                       {"t", t},
                                       {"dim", e.dim},
                                       {"reliable", e.reliable},
                                       {"in_mask", e.in_mask}});
            }
        pages.push_back(json{{"r", page.r}, {"entries", std::move(entries)}});
    }
    return json{{"r_max", ss.r_max},
                {"s_max", ss.s_max},
                {"t_max", ss.t_max},
                {"sign_convention", ss.sign_convention},
                {"pages", std::move(pages)},
                {"stabilized_at", ss.stabilized_at},
                {"quadrant_stable", ss.quadrant_stable}};
}

template <class F>
static std::string page_tsv(const Page<F>& page, const std::string& header) {
    std::string t = header + "s\tt\tdim\tflags\n";
    for (std::size_t s = 0; s < page.entries.size(); ++s)
        for (std::size_t tt = 0; tt < page.entries[s].size(); ++tt) {
            const auto& e = page.entries[s][tt];
            std::string flags;
            flags += e.reliable ? 'R' : '.';
            flags += e.in_mask ? 'M' : '.';
            t += std::to_string(s) + "\t" + std::to_string(tt) + "\t" +
                 std::to_string(e.dim) + "\t" + flags + "\n";
        }
    return t;
}

/// Sidecar with the d_r matrices of every nonzero entry, one block per entry.
template <class F>
static std::string dr_sidecar(const SSReport<F>& ss, const std::string& header) {
    std::string t = header + "r\ts\tt\trows\tcols\tentries(row-major)\n";
    for (const auto& page : ss.pages)
        for (std::size_t s = 0; s < page.entries.size(); ++s)
            for (std::size_t tt = 0; tt < page.entries[s].size(); ++tt) {
                const auto& d = page.entries[s][tt].d;
                if (d.rows() == 0 && d.cols() == 0) continue;
                t += std::to_string(page.r) + "\t" + std::to_string(s) + "\t" +
                     std::to_string(tt) + "\t" + std::to_string(d.rows()) + "\t" +
                     std::to_string(d.cols()) + "\t";
                for (std::size_t i = 0; i < d.rows(); ++i)
                    for (std::size_t j = 0; j < d.cols(); ++j) {
                        if (i + j > 0) t += ",";
                        t += d.field().to_string(d.at(i, j));
                    }
                t += "\n";
            }
    return t;
}

template <class F>
static void emit_ss_files(const fs::path& dir, const std::string& prefix,
                          const SSReport<F>& ss, const RunConfig& cfg,
                          const json& reliability) {
    std::string header = tsv_header(cfg, reliability);
    for (const auto& page : ss.pages)
        write_file(dir / (prefix + "_page_" + std::to_string(page.r) + ".tsv"),
                   page_tsv(page, header));
    write_file(dir / (prefix + "_dr.tsv"), dr_sidecar(ss, header));
}

template <class F>
static json completion_to_json(const CompletionReport<F>& rep) {
    json iso = json::array(), maps = json::array();
    for (std::size_t t = 0; t < rep.completion_iso.size(); ++t) {
        iso.push_back((bool)rep.completion_iso[t]);
        maps.push_back(matrix_to_json(rep.completion_map[t]));
    }
    return json{{"homology", rep.homology},
                {"reliable", rep.reliable},
                {"completion_iso", std::move(iso)},
                {"completion_map", std::move(maps)},
                {"spectral", ss_to_json(rep.ss)}};
}

template <class F>
static std::string homology_tsv(const CompletionReport<F>& rep, const std::string& header) {
    std::string t = header + "t\tdim\treliable\tunit_map_iso\n";
    for (std::size_t m = 0; m < rep.homology.size(); ++m)
        t += std::to_string(m) + "\t" + std::to_string(rep.homology[m]) + "\t" +
             (rep.reliable[m] ? "R" : ".") + "\t" + (rep.completion_iso[m] ? "yes" : "no") +
             "\n";
    return t;
}

// ---------------------------------------------------------------------------
// cobar: completion of a module along the tensor triple of a finite algebra
// ---------------------------------------------------------------------------

template <class F>
static int run_cobar(F field, const json& fx, const RunConfig& cfg) {
    const json& alg = fx.at("algebra");
    AlgebraData<F> a;
    a.field = field;
    a.dim = alg.at("dim").get<std::size_t>();
    if (a.dim == 0) throw std::invalid_argument("cobar: algebra dimension must be positive");
    a.unit = matrix_from_json(field, alg.at("unit"), a.dim, 1, "algebra unit");
    a.mult = matrix_from_json(field, alg.at("mult"), a.dim, a.dim * a.dim, "algebra mult");
    std::size_t module_dim = fx.at("module_dim").get<std::size_t>();

    ModuleCat<F> cat{field};
    auto s = identity_cotriple(cat);
    auto r = tensor_triple(a);  // validates the algebra axioms
    auto [lin_ob, lin_mor] = module_linearization(field, cfg.t_max);
    auto rep = completion<ModuleCat<F>, F>(s, r, module_dim, cfg.s_max, cfg.t_max,
                                           cfg.r_max, lin_ob, lin_mor);

    json reliability{{"homology_reliable", rep.reliable}};
    json out{{"config", cfg.to_json()},
             {"seed", cfg.seed},
             {"reliability", reliability},
             {"algebra_dim", a.dim},
             {"module_dim", module_dim},
             {"completion", completion_to_json(rep)}};
    fs::path dir(cfg.out);
    write_file(dir / "cobar_report.json", out.dump(2) + "\n");
    emit_ss_files(dir, "cobar", rep.ss, cfg, reliability);
    write_file(dir / "cobar_homology.tsv", homology_tsv(rep, tsv_header(cfg, reliability)));
    std::cout << "cobar: wrote " << (dir / "cobar_report.json").string() << "\n";
    return 0;
}

static int cmd_cobar(const std::string& fixture, RunConfig cfg) {
    json fx = load_json(fixture);
    cfg.characteristic = fx.at("characteristic").get<std::uint64_t>();
    if (cfg.characteristic == 0) return run_cobar(RationalField{}, fx, cfg);
    return run_cobar(PrimeField(cfg.characteristic), fx, cfg);
}

// ---------------------------------------------------------------------------
// aq: the free/forget + abelianization experiment on a simplicial algebra
// ---------------------------------------------------------------------------

static AugmentedAlgebraLevel level_from_json(PrimeField field, const json& j,
                                             const std::string& what) {
    AugmentedAlgebraLevel lvl;
    lvl.field = field;
    lvl.dim = j.at("dim").get<std::size_t>();
    if (j.contains("labels")) lvl.labels = j.at("labels").get<std::vector<std::string>>();
    lvl.unit = matrix_from_json(field, j.at("unit"), lvl.dim, 1, what + " unit");
    lvl.aug = matrix_from_json(field, j.at("aug"), 1, lvl.dim, what + " aug");
    // products: sparse triples [i, j, k, coeff] meaning e_i e_j += coeff e_k
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> acc;
    for (const auto& t : j.at("products")) {
        if (!t.is_array() || t.size() != 4)
            throw std::invalid_argument(what + ": product entries are [i,j,k,coeff]");
        std::size_t i = t[0].get<std::size_t>(), jj = t[1].get<std::size_t>(),
                    k = t[2].get<std::size_t>();
        if (i >= lvl.dim || jj >= lvl.dim || k >= lvl.dim)
            throw std::invalid_argument(what + ": product index out of range");
        acc[{std::min(i, jj), std::max(i, jj)}].emplace_back(
            k, field.from_int(t[3].get<long long>()));
    }
    for (auto& [key, v] : acc) lvl.set_product(key.first, key.second, std::move(v));
    return lvl;
}

static SimplicialAlgebra algebra_from_json(const json& fx) {
    std::uint64_t p = fx.at("characteristic").get<std::uint64_t>();
    if (p == 0) throw std::invalid_argument("algebra fixtures require a prime characteristic");
    PrimeField field(p);
    SimplicialAlgebra x;
    x.field = field;
    const json& levels = fx.at("levels");
    for (std::size_t n = 0; n < levels.size(); ++n)
        x.levels.push_back(level_from_json(field, levels[n], "level " + std::to_string(n)));
    x.face.resize(x.levels.size());
    x.degen.resize(x.levels.size());
    const json& face = fx.at("face");
    for (std::size_t n = 1; n < x.levels.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i)
            x.face[n].push_back(matrix_from_json(field, face.at(n - 1).at(i),
                                                 x.levels[n - 1].dim, x.levels[n].dim,
                                                 "face d_" + std::to_string(i)));
    const json& degen = fx.at("degen");
    for (std::size_t n = 0; n + 1 < x.levels.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i)
            x.degen[n].push_back(matrix_from_json(field, degen.at(n).at(i),
                                                  x.levels[n + 1].dim, x.levels[n].dim,
                                                  "degeneracy s_" + std::to_string(i)));
    if (std::string e = x.check(); !e.empty())
        throw std::invalid_argument("algebra fixture: " + e);
    return x;
}

static SimplicialAlgebra builtin_algebra(const std::string& name, const RunConfig& cfg) {
    PrimeField field(cfg.characteristic);
    if (name == "constant-k")
        return square_zero(SimplicialModule<PrimeField>::constant(field, 0, cfg.t_max));
    if (name.rfind("square-zero:", 0) == 0) {
        std::size_t m = std::stoul(name.substr(12));
        return square_zero(SimplicialModule<PrimeField>::constant(field, m, cfg.t_max));
    }
    throw std::invalid_argument("unknown builtin algebra '" + name +
                                "' (use constant-k or square-zero:<m>)");
}

static int cmd_aq(const std::string& fixture, const std::string& builtin, RunConfig cfg) {
    SimplicialAlgebra x;
    if (!fixture.empty()) {
        json fx = load_json(fixture);
        cfg.characteristic = fx.at("characteristic").get<std::uint64_t>();
        x = algebra_from_json(fx);
        if (x.n_max() != cfg.t_max)
            throw std::invalid_argument("aq: fixture has n_max " + std::to_string(x.n_max()) +
                                        " but --tmax is " + std::to_string(cfg.t_max));
    } else {
        x = builtin_algebra(builtin, cfg);
    }
    TruncationPolicy pol{cfg.degree, cfg.cap};
    auto rep = conjecture_experiment(x, cfg.s_max, cfg.t_max, cfg.r_max, pol);

    json reliability{{"homology_reliable", rep.completion.reliable},
                     {"degree_bound", cfg.degree},
                     {"overflow_events", rep.overflow.size()}};
    json out{{"config", cfg.to_json()},
             {"seed", cfg.seed},
             {"reliability", reliability},
             {"connected", rep.connected},
             {"notes", rep.notes},
             {"overflow", rep.overflow},
             {"completion", completion_to_json(rep.completion)}};
    fs::path dir(cfg.out);
    write_file(dir / "aq_report.json", out.dump(2) + "\n");
    emit_ss_files(dir, "aq", rep.completion.ss, cfg, reliability);
    write_file(dir / "aq_homology.tsv",
               homology_tsv(rep.completion, tsv_header(cfg, reliability)));
    std::cout << "aq: wrote " << (dir / "aq_report.json").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// kan: bounded cofibrant/fibrant replacement of a simplicial set
// ---------------------------------------------------------------------------

static FiniteSimplicialSet simplicial_set_fixture(const std::string& fixture,
                                                  const std::string& builtin,
                                                  std::size_t N) {
    if (!fixture.empty()) {
        json fx = load_json(fixture);
        FiniteSimplicialSet x(N);
        for (const auto& c : fx.at("cells")) {
            std::size_t level = c.at("level").get<std::size_t>();
            std::vector<std::size_t> faces;
            if (c.contains("faces")) faces = c.at("faces").get<std::vector<std::size_t>>();
            x.add_cell(level, faces);
        }
        if (std::string e = x.check_identities(); !e.empty())
            throw std::invalid_argument("simplicial set fixture: " + e);
        return x;
    }
    if (builtin == "empty") return FiniteSimplicialSet(N);
    if (builtin == "delta0") return standard_simplex(0, N).cx;
    if (builtin == "delta1") {
        if (N < 1) throw std::invalid_argument("delta1 needs --bound-dim >= 1");
        return standard_simplex(1, N).cx;
    }
    throw std::invalid_argument("unknown builtin simplicial set '" + builtin +
                                "' (use empty, delta0, or delta1)");
}

static json cof_ledger_json(const CofReplacement& rep) {
    json stages = json::array();
    for (std::size_t b = 1; b < rep.ledger.size(); ++b) {
        json atts = json::array();
        for (const auto& a : rep.ledger[b])
            atts.push_back(json{{"n", a.n},
                                {"boundary_images", a.a_images},
                                {"base_top", a.b_top},
                                {"cell", a.cell}});
        stages.push_back(json{{"stage", b}, {"attachments", std::move(atts)}});
    }
    return json{{"kind", "cofibrant"},
                {"complete", rep.complete},
                {"stage_sizes", rep.stage_sizes},
                {"counit_images", rep.eps},
                {"stages", std::move(stages)}};
}

static json fib_ledger_json(const FibReplacement& rep) {
    json stages = json::array();
    for (std::size_t b = 1; b < rep.ledger.size(); ++b) {
        json atts = json::array();
        for (const auto& a : rep.ledger[b])
            atts.push_back(json{{"n", a.n},
                                {"k", a.k},
                                {"horn_images", a.c_images},
                                {"face_cell", a.face_cell},
                                {"top_cell", a.top_cell}});
        stages.push_back(json{{"stage", b}, {"attachments", std::move(atts)}});
    }
    return json{{"kind", "fibrant"},
                {"complete", rep.complete},
                {"stage_sizes", rep.stage_sizes},
                {"stages", std::move(stages)}};
}

static json cof_axiom_report(const FiniteSimplicialSet& x, std::size_t B, std::size_t N) {
    DiagonalAxiomReport a = cofibrant_axioms(x, B, N);
    return json{{"kind", "cofibrant"},
                {"diagonal_total", a.diagonal_total},
                {"diagonal_is_simplicial_map", a.diagonal_is_map},
                {"counit_law_eps_after_diagonal", a.counit_law1},
                {"counit_law_lifted_eps_after_diagonal", a.counit_law2},
                {"coassociativity", a.coassociativity},
                {"coassociativity_cells_compared", a.coassoc_compared},
                {"counit_is_simplicial_map", a.counit_is_map},
                {"duplicate_attachments", a.duplicates},
                {"pass", a.pass()}};
}

static json fib_axiom_report(const FiniteSimplicialSet& x, std::size_t B, std::size_t N) {
    CodiagonalAxiomReport a = fibrant_axioms(x, B, N);
    return json{{"kind", "fibrant"},
                {"codiagonal_defined_on_first_replacement", a.covers_first},
                {"unit_law_on_included_cells", a.unit_law1},
                {"codiagonal_commutes_with_faces", a.faces_commute},
                {"unit_law_through_lifted_inclusion", a.unit_law2},
                {"associativity", a.associativity},
                {"associativity_cells_compared", a.assoc_compared},
                {"duplicate_attachments", a.duplicates},
                {"pass", a.pass()}};
}

static int cmd_kan(const std::string& fixture, const std::string& builtin,
                   const std::string& report, const std::string& mode, RunConfig cfg) {
    FiniteSimplicialSet x = simplicial_set_fixture(fixture, builtin, cfg.dim);
    bool do_cof = mode == "cof" || mode == "both";
    bool do_fib = mode == "fib" || mode == "both";
    if (!do_cof && !do_fib)
        throw std::invalid_argument("kan: --mode must be cof, fib, or both");
    if (report != "axioms" && report != "kan" && report != "ledger")
        throw std::invalid_argument("kan: --report must be axioms, kan, or ledger");

    json reliability{{"stage_bound", cfg.stages}, {"dim_bound", cfg.dim}};
    json out{{"config", cfg.to_json()},
             {"seed", cfg.seed},
             {"reliability", reliability},
             {"report", report}};
    bool all_pass = true;

    if (do_cof) {
        if (report == "ledger") {
            out["cofibrant"] = cof_ledger_json(cofibrant_stages(x, cfg.stages, cfg.dim));
        } else if (report == "kan") {
            auto rep = cofibrant_stages(x, cfg.stages, cfg.dim);
            auto [tested, filled] = cof_lifting_report(rep);
            out["cofibrant"] = json{{"squares_tested", tested},
                                    {"squares_filled", filled},
                                    {"pass", tested == filled}};
            all_pass = all_pass && tested == filled;
        } else {
            json a = cof_axiom_report(x, cfg.stages, cfg.dim);
            all_pass = all_pass && a.at("pass").get<bool>();
            out["cofibrant"] = std::move(a);
        }
    }
    if (do_fib) {
        if (report == "ledger") {
            out["fibrant"] = fib_ledger_json(fibrant_stages(x, cfg.stages, cfg.dim));
        } else if (report == "kan") {
            auto rep = fibrant_stages(x, cfg.stages, cfg.dim);
            auto [tested, filled] = fib_kan_report(rep);
            out["fibrant"] = json{{"horns_tested", tested},
                                  {"horns_filled", filled},
                                  {"pass", tested == filled}};
            all_pass = all_pass && tested == filled;
        } else {
            json a = fib_axiom_report(x, cfg.stages, cfg.dim);
            all_pass = all_pass && a.at("pass").get<bool>();
            out["fibrant"] = std::move(a);
        }
    }
    out["pass"] = all_pass;

    std::string text = out.dump(2) + "\n";
    if (!cfg.out.empty()) {
        write_file(fs::path(cfg.out) / "kan_report.json", text);
        std::cout << "kan: wrote " << (fs::path(cfg.out) / "kan_report.json").string() << "\n";
    } else {
        std::cout << text;
    }
    if (!all_pass) throw std::logic_error("kan: axiom or filler check failed");
    return 0;
}

// ---------------------------------------------------------------------------
// subdiv: edgewise subdivision copy maps and their interpolating homotopies
// ---------------------------------------------------------------------------

/// Deterministic pseudo-random simplicial module: a seeded chain complex is
/// pushed through the levelwise realization, so the simplicial identities
/// hold by construction.
static SimplicialModule<PrimeField> seeded_module(PrimeField f, std::mt19937_64& rng,
                                                  std::size_t n_max) {
    ChainComplex<PrimeField> c;
    c.field = f;
    c.dims.resize(n_max + 1);
    for (auto& d : c.dims) d = 1 + rng() % 2;
    c.diff.resize(n_max + 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        Matrix<PrimeField> ker = (n == 1) ? Matrix<PrimeField>::identity(f, c.dims[0])
                                          : kernel_basis(c.diff[n - 1]);
        Matrix<PrimeField> coeff(f, ker.cols(), c.dims[n]);
        for (std::size_t i = 0; i < coeff.rows(); ++i)
            for (std::size_t j = 0; j < coeff.cols(); ++j) coeff.at(i, j) = rng() & 1;
        c.diff[n] = ker * coeff;
    }
    return dold_kan(c, n_max);
}

/// Transpose a simplicial module into a cosimplicial one.
static CosimplicialObject<ModuleCat<PrimeField>> dualize_module(
    const SimplicialModule<PrimeField>& m) {
    CosimplicialObject<ModuleCat<PrimeField>> y;
    y.cat = ModuleCat<PrimeField>{m.field};
    y.levels = m.dims;
    y.coface.resize(m.dims.size());
    y.codegen.resize(m.dims.size());
    for (std::size_t n = 1; n < m.dims.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i) y.coface[n].push_back(m.d(n, i).transposed());
    for (std::size_t n = 0; n + 1 < m.dims.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i) y.codegen[n].push_back(m.s(n, i).transposed());
    return y;
}

static int cmd_subdiv(std::size_t k_max, std::size_t fixtures, std::size_t n_max,
                      RunConfig cfg) {
    if (k_max < 2) throw std::invalid_argument("subdiv: --kmax must be at least 2");
    PrimeField field(cfg.characteristic);
    std::mt19937_64 rng(cfg.seed);
    json runs = json::array();
    bool all_pass = true;
    for (std::size_t fx = 0; fx < fixtures; ++fx) {
        auto y = dualize_module(seeded_module(field, rng, n_max));
        if (std::string e = y.check(); !e.empty())
            throw std::logic_error("subdiv: generated object fails identities: " + e);
        for (std::size_t k = 2; k <= k_max; ++k) {
            auto sub = subdiv_pullback(y, k);
            bool sub_ok = sub.check().empty();
            auto ytr = truncate_cosimplicial(y, sub.s_max());
            for (std::size_t l = 1; l <= k; ++l)
                for (std::size_t lp = l + 1; lp <= k; ++lp) {
                    auto f = subdiv_copy_map(y, ytr, sub, SubdivisionSpec(k, l));
                    auto g = subdiv_copy_map(y, ytr, sub, SubdivisionSpec(k, lp));
                    bool maps_ok = f.check().empty() && g.check().empty();
                    auto H = subdiv_copy_homotopy(y, k, l, lp, sub.s_max() + 1);
                    bool homotopy_ok = check_homotopy(f, g, H).empty();
                    bool pass = sub_ok && maps_ok && homotopy_ok;
                    all_pass = all_pass && pass;
                    runs.push_back(json{{"fixture", fx},
                                        {"k", k},
                                        {"l", l},
                                        {"l_prime", lp},
                                        {"subdivided_identities", sub_ok},
                                        {"copy_maps_valid", maps_ok},
                                        {"homotopy_verified", homotopy_ok},
                                        {"pass", pass}});
                }
        }
    }
    json reliability{{"levels", n_max}, {"k_max", k_max}};
    json out{{"config", cfg.to_json()},
             {"seed", cfg.seed},
             {"reliability", reliability},
             {"runs", std::move(runs)},
             {"pass", all_pass}};
    std::string text = out.dump(2) + "\n";
    if (!cfg.out.empty()) {
        write_file(fs::path(cfg.out) / "subdiv_report.json", text);
        std::cout << "subdiv: wrote " << (fs::path(cfg.out) / "subdiv_report.json").string()
                  << "\n";
    } else {
        std::cout << text;
    }
    if (!all_pass) throw std::logic_error("subdiv: homotopy check failed");
    return 0;
}

// ---------------------------------------------------------------------------
// selftest: invariant suite with a corrupted-fixture negative control
// ---------------------------------------------------------------------------

namespace {

struct SelfCheck {
    std::string name;
    bool quick;
    std::function<std::string()> run;  // empty string = pass
};

std::vector<SelfCheck> build_selftest(const RunConfig& cfg) {
    std::vector<SelfCheck> checks;
    PrimeField f2(2);

    checks.push_back({"simplicial identities on seeded modules", true, [f2, cfg] {
        std::mt19937_64 rng(cfg.seed);
        for (int t = 0; t < 3; ++t)
            if (std::string e = seeded_module(f2, rng, 3).check(); !e.empty()) return e;
        return std::string();
    }});

    checks.push_back({"corrupted fixture is rejected (negative control)", true, [f2, cfg] {
        std::mt19937_64 rng(cfg.seed);
        auto m = seeded_module(f2, rng, 3);
        // flip one structure-map entry; the identity check must now fail
        m.face[1][0].at(0, 0) = f2.add(m.face[1][0].at(0, 0), f2.one());
        if (m.check().empty()) return std::string("corrupted module passed the check");
        return std::string();
    }});

    checks.push_back({"triple and cotriple axioms on the tensor triple", true, [f2] {
        auto r = tensor_triple(algebra_product(f2, 2));
        std::vector<std::size_t> objs{1, 2, 3};
        if (!verify_triple(r, objs).all_pass()) return std::string("triple axioms failed");
        auto s = identity_cotriple(ModuleCat<PrimeField>{f2});
        if (!verify_cotriple(s, objs).all_pass()) return std::string("cotriple axioms failed");
        return std::string();
    }});

    checks.push_back({"descent sanity: product algebra completion recovers the module", true,
                      [f2] {
        auto s = identity_cotriple(ModuleCat<PrimeField>{f2});
        auto r = tensor_triple(algebra_product(f2, 2));
        auto [lin_ob, lin_mor] = module_linearization(f2, 2);
        auto rep = completion<ModuleCat<PrimeField>, PrimeField>(s, r, std::size_t(1), 3, 2,
                                                                 3, lin_ob, lin_mor);
        const auto& p2 = rep.ss.page(2);
        for (std::size_t si = 0; si < p2.entries.size(); ++si)
            for (std::size_t t = 0; t < p2.entries[si].size(); ++t)
                if (p2.entries[si][t].reliable && p2.entries[si][t].in_mask &&
                    p2.entries[si][t].dim != ((si == 0 && t == 0) ? 1u : 0u))
                    return std::string("E_2 not concentrated in filtration 0");
        if (!rep.completion_iso[0]) return std::string("unit map is not an isomorphism");
        return std::string();
    }});

    checks.push_back({"naturality: distinct triple maps agree on completion homology", true,
                      [f2] {
        auto a = algebra_product(f2, 2);
        auto b = algebra_product(f2, 3);
        auto ra = tensor_triple(a);
        auto rb = tensor_triple(b);
        Matrix<PrimeField> phi(f2, 3, 2), psi(f2, 3, 2);
        phi.at(0, 0) = phi.at(1, 1) = phi.at(2, 1) = f2.one();
        psi.at(0, 0) = psi.at(1, 0) = psi.at(2, 1) = f2.one();
        auto f = algebra_triple_map(ra, rb, phi);
        auto g = algebra_triple_map(ra, rb, psi);
        auto [lin_ob, lin_mor] = module_linearization(f2, 0);
        auto rep = completion_naturality<ModuleCat<PrimeField>, PrimeField>(
            f, g, std::size_t(1), 3, 0, lin_ob, lin_mor);
        if (!rep.maps_verified) return std::string("triple maps failed verification");
        if (!rep.witness_ok) return std::string("homotopy witness failed");
        if (!rep.equal_on_homology) return std::string("induced maps differ");
        return std::string();
    }});

    checks.push_back({"small object: bounded replacements fill all bounded squares/horns",
                      true, [] {
        auto pt = standard_simplex(0, 1);
        auto rc = cofibrant_stages(pt.cx, 3, 1);
        auto [ct, cf] = cof_lifting_report(rc);
        if (ct == 0 || ct != cf) return std::string("cofibrant lifting report failed");
        if (cof_duplicate_squares(rc) != 0) return std::string("duplicate square attachment");
        auto rf = fibrant_stages(pt.cx, 2, 1);
        auto [ft, ff] = fib_kan_report(rf);
        if (ft == 0 || ft != ff) return std::string("fibrant Kan report failed");
        if (fib_duplicate_horns(rf) != 0) return std::string("duplicate horn attachment");
        return std::string();
    }});

    checks.push_back({"edgewise copy maps are homotopic on one seeded object", true,
                      [f2, cfg] {
        std::mt19937_64 rng(cfg.seed);
        auto y = dualize_module(seeded_module(f2, rng, 6));
        auto sub = subdiv_pullback(y, 2);
        auto ytr = truncate_cosimplicial(y, sub.s_max());
        auto f = subdiv_copy_map(y, ytr, sub, SubdivisionSpec(2, 1));
        auto g = subdiv_copy_map(y, ytr, sub, SubdivisionSpec(2, 2));
        auto H = subdiv_copy_homotopy(y, 2, 1, 2, sub.s_max() + 1);
        return check_homotopy(f, g, H);
    }});

    // full-suite additions (skipped by --quick)
    checks.push_back({"algebra experiment: constant coefficients complete end to end", false,
                      [] {
        PrimeField f2(2);
        auto x = square_zero(SimplicialModule<PrimeField>::constant(f2, 0, 1));
        auto rep = conjecture_experiment(x, 1, 1, 2, TruncationPolicy{3, 4096});
        if (!rep.connected) return std::string("constant object reported disconnected");
        return std::string();
    }});

    checks.push_back({"algebra experiment: abelian object concentrates in filtration 0",
                      false, [] {
        // constant coefficients are abelian: the square-zero extension of 0
        PrimeField f2(2);
        auto x = square_zero(SimplicialModule<PrimeField>::constant(f2, 0, 1));
        auto rep = conjecture_experiment(x, 2, 1, 2, TruncationPolicy{3, 4096});
        const auto& p2 = rep.completion.ss.page(2);
        for (std::size_t t = 0; t < p2.entries[1].size(); ++t)
            if (p2.entries[1][t].dim != 0)
                return std::string("nonzero entry in filtration 1");
        return std::string();
    }});

    checks.push_back({"small object: replacement axioms hold on the interval", false, [] {
        auto d1 = standard_simplex(1, 1);
        json c = cof_axiom_report(d1.cx, 2, 1);
        if (!c.at("pass").get<bool>()) return std::string("cofibrant axiom report failed");
        json fj = fib_axiom_report(d1.cx, 2, 1);
        if (!fj.at("pass").get<bool>()) return std::string("fibrant axiom report failed");
        return std::string();
    }});

    return checks;
}

} // namespace

static int cmd_selftest(bool quick, RunConfig cfg) {
    auto checks = build_selftest(cfg);
    json results = json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
        if (quick && !c.quick) continue;
        std::string err = c.run();
        bool pass = err.empty();
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << c.name
                  << (pass ? "" : "  [" + err + "]") << "\n";
        results.push_back(json{{"name", c.name}, {"pass", pass}, {"error", err}});
    }
    json out{{"config", cfg.to_json()},
             {"seed", cfg.seed},
             {"reliability", json{{"quick", quick}}},
             {"results", std::move(results)},
             {"pass", all_pass}};
    if (!cfg.out.empty())
        write_file(fs::path(cfg.out) / "selftest_report.json", out.dump(2) + "\n");
    if (!all_pass) throw std::logic_error("selftest: at least one check failed");
    std::cout << "selftest: all checks passed\n";
    return 0;
}

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"workbench CLI: completions, resolutions, and bounded replacements"};
    app.require_subcommand(1);

    // cobar
    auto* cobar = app.add_subcommand(
        "cobar", "completion of a module along the tensor triple of a finite algebra");
    RunConfig cfg_cobar;
    std::string cobar_fixture;
    cobar->add_option("--fixture", cobar_fixture,
                      "JSON fixture: characteristic, algebra{dim,unit,mult}, module_dim")
        ->required();
    cobar->add_option("--smax", cfg_cobar.s_max, "cosimplicial truncation (default 3)");
    cobar->add_option("--tmax", cfg_cobar.t_max, "simplicial truncation (default 2)");
    cobar->add_option("--rmax", cfg_cobar.r_max, "last spectral page (default 3)");
    cobar->add_option("--out", cfg_cobar.out, "output directory")->required();

    // aq
    auto* aq = app.add_subcommand(
        "aq", "free/forget + abelianization experiment on a simplicial algebra");
    RunConfig cfg_aq;
    cfg_aq.s_max = 1;
    cfg_aq.t_max = 1;
    cfg_aq.r_max = 2;
    std::string aq_fixture, aq_builtin = "constant-k";
    aq->add_option("--fixture", aq_fixture, "JSON algebra fixture");
    aq->add_option("--builtin", aq_builtin,
                   "built-in object: constant-k or square-zero:<m> (default constant-k)");
    aq->add_option("--smax", cfg_aq.s_max, "resolution truncation (default 1)");
    aq->add_option("--tmax", cfg_aq.t_max, "simplicial truncation (default 1)");
    aq->add_option("--rmax", cfg_aq.r_max, "last spectral page (default 2)");
    aq->add_option("--degree", cfg_aq.degree, "monomial-degree truncation (default 3)");
    aq->add_option("--cap", cfg_aq.cap, "basis-size cap per level (default 4096)");
    aq->add_option("-p,--characteristic", cfg_aq.characteristic, "prime characteristic");
    aq->add_option("--out", cfg_aq.out, "output directory")->required();

    // kan
    auto* kan = app.add_subcommand(
        "kan", "bounded cofibrant/fibrant replacement of a simplicial set");
    RunConfig cfg_kan;
    std::string kan_fixture, kan_builtin = "delta0";
    std::string kan_report = "ledger", kan_mode = "both";
    kan->add_option("--fixture", kan_fixture,
                    "JSON fixture: cells = [{level, faces}] of nondegenerate simplices");
    kan->add_option("--builtin", kan_builtin, "built-in set: empty, delta0, delta1");
    kan->add_option("--bound-stages", cfg_kan.stages, "stage bound B (default 2)");
    kan->add_option("--bound-dim", cfg_kan.dim, "dimension bound N (default 1)");
    kan->add_option("--report", kan_report, "report kind: axioms, kan, or ledger");
    kan->add_option("--mode", kan_mode, "replacement flavor: cof, fib, or both");
    kan->add_option("--out", cfg_kan.out, "output directory (default: print to stdout)");

    // subdiv
    auto* subdiv = app.add_subcommand(
        "subdiv", "edgewise subdivision copy maps and interpolating homotopies");
    RunConfig cfg_sub;
    std::size_t sub_kmax = 3, sub_fixtures = 3, sub_levels = 8;
    subdiv->add_option("--kmax", sub_kmax, "largest subdivision parameter (default 3)");
    subdiv->add_option("--fixtures", sub_fixtures, "number of seeded objects (default 3)");
    subdiv->add_option("--levels", sub_levels, "cosimplicial truncation (default 8)");
    subdiv->add_option("--seed", cfg_sub.seed, "seed for the fixture generator");
    subdiv->add_option("--out", cfg_sub.out, "output directory (default: print to stdout)");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
    RunConfig cfg_self;
    bool quick = false;
    selftest->add_flag("--quick", quick, "run only the fast subset");
    selftest->add_option("--seed", cfg_self.seed, "seed for seeded fixtures");
    selftest->add_option("--out", cfg_self.out, "output directory for the JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cobar->parsed()) return cmd_cobar(cobar_fixture, cfg_cobar);
        if (aq->parsed()) return cmd_aq(aq_fixture, aq_builtin, cfg_aq);
        if (kan->parsed())
            return cmd_kan(kan_fixture, kan_builtin, kan_report, kan_mode, cfg_kan);
        if (subdiv->parsed()) return cmd_subdiv(sub_kmax, sub_fixtures, sub_levels, cfg_sub);
        if (selftest->parsed()) return cmd_selftest(quick, cfg_self);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
