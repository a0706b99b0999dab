// sodist.cpp
//
// Command-line interface: padding, search, refutation, certified distance
// queries, table construction, closed-form theorem verification, and seed
// cache maintenance.

#include <CLI11.hpp>

#include <sodist/sodist.hpp>

#include <iostream>

using namespace sodist;

namespace {

// Accepts either a plain matrix file ("k n" header) or a witness file
// ("# n k d so=..." header).
BinaryMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    if (in.peek() == '#') {
        in.close();
        return read_witness(path).matrix;
    }
    return BinaryMatrix::parse(in);
}

void print_entry(const DistanceTableEntry& e) {
    if (e.status == TableStatus::Certified)
        std::cout << "d_so(" << e.n << "," << e.k << ") = " << e.lower.value << " [Certified]\n";
    else
        std::cout << "d_so(" << e.n << "," << e.k << ") in [" << e.lower.value << ","
                  << e.upper.value << "] [Gap]\n";
    std::cout << "  lower " << e.lower.value << "  " << e.lower.provenance << "\n";
    std::cout << "  upper " << e.upper.value << "  " << e.upper.provenance << "\n";
    for (const auto& ch : e.chains) std::cout << "  refuted " << to_string(ch.claim) << "so\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal binary self-orthogonal code distances (k <= 6)"};
    app.require_subcommand(1);

    std::string fixtures = "fixtures";
    app.add_option("--fixtures", fixtures, "seed cache directory")->capture_default_str();
    double g_budget = -1.0;
    app.add_option("--budget", g_budget,
                   "default seconds budget for searching subcommands (0 = unlimited)");
    bool g_det = false;
    app.add_flag("--deterministic", g_det, "force deterministic single-worker search");

    int rc = 0;

    // ---- pad ------------------------------------------------------------
    auto* pad_cmd = app.add_subcommand("pad", "prepend simplex blocks to a seed matrix");
    pad_cmd->fallthrough();
    std::string pad_file;
    int pad_m = 1;
    pad_cmd->add_option("seed", pad_file, "seed matrix or witness file")->required();
    pad_cmd->add_option("-m,--blocks", pad_m, "number of simplex blocks")->capture_default_str();
    pad_cmd->callback([&] {
        BinaryMatrix padded = pad(load_matrix_file(pad_file), pad_m);
        padded.serialize(std::cout);
    });

    // ---- search ---------------------------------------------------------
    auto* search_cmd =
        app.add_subcommand("search", "branch-and-bound over column multiplicity vectors");
    search_cmd->fallthrough();
    int sn = 0, sk = 0, s_target = -1, s_workers = 0, s_maxmult = 0;
    double s_budget = 0.0;
    bool s_so = false, s_parallel = false, s_lift = false, s_nosym = false, s_anneal = false;
    std::uint64_t s_seed = 0;
    std::string s_emit;
    search_cmd->add_option("-n,--length", sn, "code length (nonzero columns)")->required();
    search_cmd->add_option("-k,--dimension", sk, "dimension, 1..6")->required();
    search_cmd->add_flag("--so", s_so, "require self-orthogonality");
    search_cmd->add_option("--target-d", s_target, "feasibility target (omit to maximize)");
    search_cmd->add_option("--budget", s_budget, "seconds before giving up (0 = unlimited)");
    search_cmd->add_flag("--parallel", s_parallel, "multi-worker mode (witness may vary)");
    search_cmd->add_option("--workers", s_workers, "worker count for --parallel");
    search_cmd->add_option("--max-mult", s_maxmult, "column multiplicity cap for the first pass");
    search_cmd->add_flag("--lift-cap", s_lift, "start without the heuristic multiplicity cap");
    search_cmd->add_flag("--no-symmetry", s_nosym, "disable symmetry pruning");
    search_cmd->add_flag("--anneal", s_anneal,
                         "randomized local search (finds witnesses only, proves nothing)");
    search_cmd->add_option("--seed", s_seed, "random seed for --anneal/--from (0: derived)");
    std::string s_from;
    search_cmd->add_option("--from", s_from,
                           "derive from this witness by adding or removing duplicated column "
                           "pairs, plus one zero column when growing by an odd amount (finds "
                           "witnesses only, proves nothing)");
    search_cmd->add_option("--emit-witness", s_emit, "write the found witness to this file");
    search_cmd->callback([&] {
        SearchProblem p;
        p.n = sn;
        p.k = sk;
        p.require_so = s_so;
        if (s_target >= 0) p.target_d = s_target;
        p.budget_seconds = search_cmd->count("--budget") || g_budget < 0 ? s_budget : g_budget;
        p.deterministic = g_det || !s_parallel;
        p.workers = s_workers;
        p.max_mult = s_maxmult;
        p.lift_cap = s_lift;
        p.use_symmetry = !s_nosym;
        if (s_anneal && !s_from.empty())
            throw CLI::ValidationError("--anneal and --from are separate finders; pick one");
        SearchOutcome out;
        if (s_anneal || !s_from.empty()) {
            AnnealOptions aopts;
            if (p.budget_seconds > 0) aopts.budget_seconds = p.budget_seconds;
            aopts.seed = s_seed;
            auto start = std::chrono::steady_clock::now();
            if (s_anneal) {
                out.witness = anneal_find(p, aopts);
            } else {
                MultiplicityVector base = from_matrix(load_matrix_file(s_from));
                out.witness = p.n < base.length() ? shrink_find(p, base, aopts)
                                                  : augment_find(p, base, aopts);
            }
            out.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (out.witness) {
                out.best_d = min_codeword_weight(*out.witness);
                out.status = SearchStatus::FeasibleFound;
            } else {
                out.status = SearchStatus::BudgetExhausted;
            }
        } else {
            out = search(p);
        }
        std::cout << to_string(out.status) << " n=" << sn << " k=" << sk << " so=" << (s_so ? 1 : 0);
        if (out.witness) std::cout << " d=" << out.best_d;
        std::cout << " nodes=" << out.nodes << " seconds=" << out.seconds << "\n";
        if (out.witness) {
            BinaryMatrix m = to_matrix(*out.witness);
            if (!s_emit.empty()) {
                write_witness(s_emit, Witness{CodeParams{m.cols(), m.rows(), out.best_d},
                                              m.is_self_orthogonal(), m});
                std::cout << "witness written to " << s_emit << "\n";
            } else {
                m.serialize(std::cout);
            }
        }
    });

    // ---- refute ---------------------------------------------------------
    auto* refute_cmd =
        app.add_subcommand("refute", "nonexistence chain for a self-orthogonal claim");
    refute_cmd->fallthrough();
    int rn = 0, rk = 0, rd = 0, r_depth = 1;
    refute_cmd->add_option("-n,--length", rn)->required();
    refute_cmd->add_option("-k,--dimension", rk)->required();
    refute_cmd->add_option("-d,--distance", rd)->required();
    refute_cmd->add_option("--depth", r_depth, "residual steps to attempt")->capture_default_str();
    refute_cmd->callback([&] {
        auto chain = refute_so(CodeParams{rn, rk, rd}, r_depth);
        if (chain) {
            std::cout << chain->render();
        } else {
            std::cout << "NOT REFUTED: " << to_string(CodeParams{rn, rk, rd})
                      << "so admits no chain here\n";
            rc = 1;
        }
    });

    // ---- dso ------------------------------------------------------------
    auto* dso_cmd = app.add_subcommand("dso", "certified bounds on d_so(n, k)");
    dso_cmd->fallthrough();
    int dn = 0, dk = 0;
    bool d_search = false;
    double d_budget = 600.0;
    dso_cmd->add_option("-n,--length", dn)->required();
    dso_cmd->add_option("-k,--dimension", dk)->required();
    dso_cmd->add_flag("--search", d_search, "close gaps by exhaustive search");
    dso_cmd->add_option("--budget", d_budget, "seconds per search invocation")
        ->capture_default_str();
    dso_cmd->callback([&] {
        SeedCache cache(fixtures);
        DsoOptions opts;
        opts.allow_search = d_search;
        opts.budget_seconds = dso_cmd->count("--budget") || g_budget < 0 ? d_budget : g_budget;
        print_entry(dso(dn, dk, cache, opts));
    });

    // ---- table ----------------------------------------------------------
    auto* table_cmd = app.add_subcommand("table", "certified d_so table over a length range");
    table_cmd->fallthrough();
    int tk = 0, t_from = 0, t_to = 0;
    bool t_nosearch = false;
    double t_budget = 600.0;
    std::string t_tsv;
    table_cmd->add_option("-k,--dimension", tk)->required();
    table_cmd->add_option("--from", t_from, "first length")->required();
    table_cmd->add_option("--to", t_to, "last length")->required();
    table_cmd->add_option("--tsv", t_tsv, "write the table to this TSV file");
    table_cmd->add_flag("--no-search", t_nosearch, "analytic and cached bounds only");
    table_cmd->add_option("--budget", t_budget, "seconds per search invocation")
        ->capture_default_str();
    table_cmd->callback([&] {
        SeedCache cache(fixtures);
        DsoOptions opts;
        opts.allow_search = !t_nosearch;
        opts.budget_seconds = table_cmd->count("--budget") || g_budget < 0 ? t_budget : g_budget;
        auto rows = build_table(tk, t_from, t_to, cache, opts);
        std::cout << "n\tk\tlower\tupper\tstatus\twitness-file\tchain-file\n";
        for (const auto& e : rows) {
            std::cout << e.n << '\t' << e.k << '\t' << e.lower.value << '\t' << e.upper.value
                      << '\t' << to_string(e.status) << '\t' << e.witness_file << '\t'
                      << (e.chains.empty() ? "-"
                                           : "refute_n" + std::to_string(e.k) + "_" +
                                                 std::to_string(e.n) + ".txt")
                      << '\n';
        }
        if (!t_tsv.empty()) {
            std::filesystem::path tsv_path(t_tsv);
            std::filesystem::path chains_dir = tsv_path;
            chains_dir += ".chains";
            write_tsv(rows, tsv_path, chains_dir);
            std::cout << "table written to " << t_tsv << "\n";
        }
    });

    // ---- verify ---------------------------------------------------------
    auto* verify_cmd =
        app.add_subcommand("verify", "re-derive a closed-form theorem from the cache");
    verify_cmd->fallthrough();
    std::string v_id;
    int v_mmax = 3;
    verify_cmd->add_option("--theorem", v_id, "theorem id: 4.1, 4.3, 5.2 or 5.3")->required();
    verify_cmd->add_option("--m-max", v_mmax, "verify for 1 <= m <= m-max")
        ->capture_default_str();
    verify_cmd->callback([&] {
        SeedCache cache(fixtures);
        TheoremReport report = verify_theorem(v_id, v_mmax, cache);
        for (const auto& row : report.rows) {
            std::cout << "n=" << row.n << " k=" << row.entry.k << " expected=" << row.expected
                      << " lower=" << row.entry.lower.value << " upper=" << row.entry.upper.value
                      << " " << to_string(row.entry.status) << " witness=" << row.entry.witness_file
                      << " refutation=" << row.refutation << "\n";
        }
        std::cout << "THEOREM " << report.id << (report.ok ? " VERIFIED" : " FAILED")
                  << " for m = 1.." << report.m_max << "\n";
        if (!report.ok) rc = 1;
    });

    // ---- seed -----------------------------------------------------------
    auto* seed_cmd = app.add_subcommand("seed", "seed cache maintenance");
    seed_cmd->fallthrough();
    seed_cmd->require_subcommand(1);
    auto* import_cmd = seed_cmd->add_subcommand("import", "verify and store a witness");
    import_cmd->fallthrough();
    std::string seed_file;
    import_cmd->add_option("file", seed_file, "matrix or witness file")->required();
    import_cmd->callback([&] {
        SeedCache cache(fixtures);
        const SeedEntry& e = cache.insert(load_matrix_file(seed_file), "fixture");
        std::cout << "stored " << e.file << " " << to_string(e.witness.params) << "\n";
    });
    auto* list_cmd = seed_cmd->add_subcommand("list", "list verified seeds");
    list_cmd->fallthrough();
    list_cmd->callback([&] {
        SeedCache cache(fixtures);
        for (const SeedEntry* e : cache.entries())
            std::cout << e->file << " " << to_string(e->witness.params)
                      << " origin=" << e->origin << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
