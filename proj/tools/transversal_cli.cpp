// Command-line front door: generate instances, run the solver pipelines,
// decide/verify with the exact oracle, and sweep success rates to CSV.
//
// Exit codes: 0 success/yes, 1 failure/no, 2 usage error, 3 internal error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "transversal/absorber.hpp"
#include "transversal/collection.hpp"
#include "transversal/constructions.hpp"
#include "transversal/factors.hpp"
#include "transversal/oracle.hpp"
#include "transversal/trees.hpp"

using json = nlohmann::json;
using namespace transversal;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TRANSVERSAL_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
        }
    }
    return 0;
}

void write_text_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
}

void write_sidecar(const std::string& path, const json& meta) {
    write_text_file(path + ".json", meta.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// witness files

std::string tree_witness_bytes(const Graph& tree, const RainbowEmbedding& emb) {
    std::ostringstream out;
    out << "witness tree\n";
    out << "T " << tree.size() << '\n';
    for (auto [u, v] : tree.edges()) out << u << ' ' << v << '\n';
    out << "vmap";
    for (int v : emb.vertex_map) out << ' ' << v;
    out << "\ncolours";
    for (int col : emb.edge_colours) out << ' ' << col;
    out << '\n';
    return out.str();
}

std::string factor_witness_bytes(const std::string& mode, const std::string& f_name, int t,
                                 const FactorSpec& spec, const FtFactor& factor) {
    std::ostringstream out;
    out << "witness " << mode << ' ' << f_name;
    if (mode == "factor") out << ' ' << t;
    out << '\n';
    out << "copies " << factor.copies.size() << ' ' << spec.r() << ' ' << spec.edges() << '\n';
    for (const FtCopy& cp : factor.copies) {
        for (std::size_t i = 0; i < cp.vertices.size(); ++i) out << (i ? " " : "") << cp.vertices[i];
        for (int col : cp.edge_colours) out << ' ' << col;
        out << '\n';
    }
    return out.str();
}

struct ParsedWitness {
    std::string mode; // tree | factor | patterned
    std::string f_name;
    int t = 0;
    Graph tree;
    RainbowEmbedding emb;
    int copies = 0;
};

ParsedWitness parse_witness(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open witness " + path);
    ParsedWitness w;
    std::string kw;
    if (!(in >> kw) || kw != "witness") throw std::runtime_error("bad witness header");
    if (!(in >> w.mode)) throw std::runtime_error("bad witness header");
    if (w.mode == "tree") {
        int n;
        if (!(in >> kw >> n) || kw != "T") throw std::runtime_error("bad tree witness");
        w.tree = Graph(n);
        for (int e = 0; e + 1 < n; ++e) {
            int u, v;
            if (!(in >> u >> v)) throw std::runtime_error("bad tree witness edge");
            w.tree.add_edge(u, v);
        }
        if (!(in >> kw) || kw != "vmap") throw std::runtime_error("bad tree witness vmap");
        w.emb.vertex_map.resize(n);
        for (int& x : w.emb.vertex_map)
            if (!(in >> x)) throw std::runtime_error("bad tree witness vmap");
        if (!(in >> kw) || kw != "colours") throw std::runtime_error("bad tree witness colours");
        w.emb.edge_colours.resize(n - 1);
        for (int& x : w.emb.edge_colours)
            if (!(in >> x)) throw std::runtime_error("bad tree witness colours");
        return w;
    }
    if (w.mode == "factor") {
        if (!(in >> w.f_name >> w.t)) throw std::runtime_error("bad factor witness header");
    } else if (w.mode == "patterned") {
        if (!(in >> w.f_name)) throw std::runtime_error("bad patterned witness header");
    } else {
        throw std::runtime_error("unknown witness mode " + w.mode);
    }
    int r, e;
    if (!(in >> kw >> w.copies >> r >> e) || kw != "copies")
        throw std::runtime_error("bad witness copies header");
    for (int cidx = 0; cidx < w.copies; ++cidx) {
        for (int i = 0; i < r; ++i) {
            int x;
            if (!(in >> x)) throw std::runtime_error("bad witness copy vertices");
            w.emb.vertex_map.push_back(x);
        }
        for (int s = 0; s < e; ++s) {
            int x;
            if (!(in >> x)) throw std::runtime_error("bad witness copy colours");
            w.emb.edge_colours.push_back(x);
        }
    }
    return w;
}

std::vector<std::vector<int>> read_pattern_file(const std::string& path, int e_f) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file " + path);
    std::vector<std::vector<int>> patterns;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::vector<int> row;
        int x;
        while (ss >> x) row.push_back(x);
        if (row.empty()) continue;
        if (static_cast<int>(row.size()) != e_f)
            throw std::runtime_error("pattern line has " + std::to_string(row.size()) +
                                     " entries, expected " + std::to_string(e_f));
        patterns.push_back(std::move(row));
    }
    return patterns;
}

std::string pattern_file_bytes(const std::vector<std::vector<int>>& patterns) {
    std::ostringstream out;
    for (const auto& row : patterns) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// oracle plumbing shared by decide and sweep

struct DecideSetup {
    ProblemTemplate tmpl;
    std::string description;
};

Result<DecideSetup> build_template(const std::string& mode, int n, const std::string& tree_file,
                                   const std::string& f_name, int t,
                                   const std::string& pattern_file) {
    using R = Result<DecideSetup>;
    if (mode == "tree") {
        if (tree_file.empty()) return R::fail(FailKind::bad_input, "", "tree mode needs --tree");
        auto tg = read_tree_file(tree_file);
        if (!tg.ok()) return R::fail(tg.failure().kind, "", tg.failure().detail);
        return DecideSetup{ProblemTemplate::whole_graph(*tg), "rainbow tree"};
    }
    if (mode == "hamilton") {
        if (n < 3) return R::fail(FailKind::bad_input, "", "hamilton needs n >= 3");
        return DecideSetup{ProblemTemplate::hamilton_cycle(n), "rainbow hamilton cycle"};
    }
    if (mode == "perfect-matching") {
        if (n % 2) return R::fail(FailKind::bad_input, "", "perfect matching needs even n");
        return DecideSetup{ProblemTemplate::perfect_matching(n), "rainbow perfect matching"};
    }
    if (mode == "factor") {
        if (f_name.empty()) return R::fail(FailKind::bad_input, "", "factor mode needs --F");
        auto spec = builtin_spec(f_name, t);
        if (!spec.ok()) return R::fail(spec.failure().kind, "", spec.failure().detail);
        if (n % spec->r()) return R::fail(FailKind::bad_input, "", "r must divide n");
        return DecideSetup{ProblemTemplate::factor(spec->f, n / spec->r(), spec->t),
                           "(F," + std::to_string(spec->t) + ")-factor"};
    }
    if (mode == "patterned") {
        if (f_name.empty() || pattern_file.empty())
            return R::fail(FailKind::bad_input, "", "patterned mode needs --F and --pattern");
        auto spec = builtin_spec(f_name, 0);
        if (!spec.ok()) return R::fail(spec.failure().kind, "", spec.failure().detail);
        auto patterns = read_pattern_file(pattern_file, spec->edges());
        return DecideSetup{ProblemTemplate::patterned(spec->f, patterns), "patterned copies"};
    }
    return R::fail(FailKind::bad_input, "", "unknown mode " + mode);
}

// ---------------------------------------------------------------------------
// sweep

struct SweepPoint {
    double delta;
    int trials = 0;
    int successes = 0;
    double mean_ms = 0;
};

int run_sweep(const std::string& mode, int n, int trials, const std::string& grid_spec,
              std::uint64_t seed, int threads, double noise, bool stable_output,
              long long budget, const std::string& out_path) {
    double lo, hi, step;
    {
        char c1, c2;
        std::istringstream ss(grid_spec);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 ||
            lo > hi) {
            std::cerr << "bad --delta-grid, expected a:b:step with step > 0\n";
            return kExitUsage;
        }
    }
    int m;
    if (mode == "perfect-matching") {
        if (n % 2) {
            std::cerr << "perfect matching sweep needs even n\n";
            return kExitUsage;
        }
        m = n / 2;
    } else if (mode == "hamilton") {
        m = n;
    } else {
        std::cerr << "sweep supports modes: perfect-matching, hamilton\n";
        return kExitUsage;
    }

    std::vector<double> deltas;
    for (double d = lo; d <= hi + 1e-9; d += step) deltas.push_back(d);
    std::vector<SweepPoint> points(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        points[i].delta = deltas[i];
        points[i].trials = trials;
    }

    // (delta, trial) cells run on a worker pool; per-cell seeds keep the
    // aggregation order-independent
    struct Cell {
        bool success = false;
        double ms = 0;
    };
    std::vector<std::vector<Cell>> cells(deltas.size(), std::vector<Cell>(trials));
    std::vector<std::pair<int, int>> jobs;
    for (std::size_t i = 0; i < deltas.size(); ++i)
        for (int tr = 0; tr < trials; ++tr) jobs.push_back({static_cast<int>(i), tr});

    int workers = threads > 0 ? threads
                              : std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            auto [di, tr] = jobs[j];
            int target = std::clamp(static_cast<int>(std::lround(deltas[di] * n)), 1, n - 1);
            auto inst = dirac_shell_collection(
                n, m, target, noise, Rng::derive(seed, static_cast<std::uint64_t>(di), tr));
            auto t0 = std::chrono::steady_clock::now();
            bool success = false;
            if (inst.ok()) {
                auto tmpl = mode == "perfect-matching" ? ProblemTemplate::perfect_matching(n)
                                                       : ProblemTemplate::hamilton_cycle(n);
                auto out = exists_transversal_exact(*inst, tmpl, budget);
                success = out.yes();
            }
            auto t1 = std::chrono::steady_clock::now();
            cells[di][tr] = {success,
                             std::chrono::duration<double, std::milli>(t1 - t0).count()};
        }
    };
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ostringstream csv;
    csv << "delta_over_n,trials,successes,mean_runtime_ms\n";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        double total_ms = 0;
        for (const Cell& cell : cells[i]) {
            points[i].successes += cell.success;
            total_ms += cell.ms;
        }
        points[i].mean_ms = trials > 0 ? total_ms / trials : 0;
        char line[128];
        std::snprintf(line, sizeof(line), "%.4f,%d,%d,%.3f\n", points[i].delta, points[i].trials,
                      points[i].successes, stable_output ? 0.0 : points[i].mean_ms);
        csv << line;
    }
    write_text_file(out_path, csv.str());
    return kExitYes;
}

// ---------------------------------------------------------------------------
// gen implementations

int run_gen_identical(const std::string& out, int n, int m, const std::string& base, double p,
                      std::uint64_t seed) {
    if (base != "complete" && base != "gnp") {
        std::cerr << "--base must be complete or gnp\n";
        return kExitUsage;
    }
    RandomParams params;
    params.p = p;
    params.complete_base = base == "complete";
    auto c = random_collection(n, m, RandomModel::identical, params, seed);
    if (!c.ok()) {
        std::cerr << c.failure().to_string() << '\n';
        return kExitNo;
    }
    write_collection_file(*c, out);
    write_sidecar(out, json{{"kind", "identical"},
                            {"n", n},
                            {"m", m},
                            {"base", base},
                            {"p", p},
                            {"seed", seed}});
    return kExitYes;
}

int run_gen_random(const std::string& out, const std::string& model, int n, int m, double p,
                   double q, int target, int budget, std::uint64_t seed) {
    RandomModel rm;
    try {
        rm = parse_random_model(model);
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << '\n';
        return kExitUsage;
    }
    RandomParams params;
    params.p = p;
    params.q = q;
    params.min_degree_target = target;
    params.resample_budget = budget;
    auto c = random_collection(n, m, rm, params, seed);
    if (!c.ok()) {
        std::cerr << c.failure().to_string() << '\n';
        return kExitNo;
    }
    write_collection_file(*c, out);
    write_sidecar(out, json{{"kind", "random"},
                            {"model", model},
                            {"n", n},
                            {"m", m},
                            {"p", p},
                            {"q", q},
                            {"min_degree_target", target},
                            {"resample_budget", budget},
                            {"seed", seed}});
    return kExitYes;
}

int run_gen_bridgeless(const std::string& out, const std::string& f_name, int copies) {
    auto spec = builtin_spec(f_name, 0);
    if (!spec.ok()) {
        std::cerr << spec.failure().to_string() << '\n';
        return kExitUsage;
    }
    auto c = bridgeless_lower_bound(*spec, copies);
    if (!c.ok()) {
        std::cerr << c.failure().to_string() << '\n';
        return kExitUsage;
    }
    write_collection_file(*c, out);
    write_sidecar(out, json{{"kind", "bridgeless-lb"},
                            {"F", f_name},
                            {"copies", copies},
                            {"n", c->n},
                            {"m", c->colour_count()},
                            {"min_degree", min_degree(*c)}});
    return kExitYes;
}

int run_gen_patterned_cex(const std::string& out, int t, int k, int n, std::uint64_t seed) {
    PipelineConfig config;
    config.rng_seed = seed;
    Rng rng(Rng::derive(seed, 0xCE8));
    auto cex = patterned_counterexample(t, k, n, config, rng);
    if (!cex.ok()) {
        std::cerr << cex.failure().to_string() << '\n';
        return kExitNo;
    }
    write_collection_file(cex->collection, out);
    write_text_file(out + ".pattern", pattern_file_bytes({cex->pattern}));
    write_sidecar(out, json{{"kind", "patterned-cex"},
                            {"t", t},
                            {"k", k},
                            {"n", n},
                            {"seed", seed},
                            {"F", "K" + std::to_string(t) + "," + std::to_string(t)},
                            {"psi", cex->psi},
                            {"part_of", cex->part_of},
                            {"floor_used", cex->floor_used},
                            {"attempts", cex->attempts},
                            {"min_degree", cex->min_degree}});
    return kExitYes;
}

// ---------------------------------------------------------------------------
// solve implementations

int run_solve_tree(const std::string& instance_path, const std::string& tree_file, int max_degree,
                   std::uint64_t seed, const std::string& out) {
    GraphCollection c = read_collection_file(instance_path);
    Graph tree;
    if (!tree_file.empty()) {
        auto tg = read_tree_file(tree_file);
        if (!tg.ok()) {
            std::cerr << tg.failure().to_string() << '\n';
            return kExitUsage;
        }
        tree = *tg;
    } else {
        Rng rng(Rng::derive(seed, 0x7188EE));
        auto tg = random_tree(c.n, max_degree, rng);
        if (!tg.ok()) {
            std::cerr << tg.failure().to_string() << '\n';
            return kExitUsage;
        }
        tree = *tg;
    }
    PipelineConfig config;
    config.rng_seed = seed;
    auto emb = rainbow_spanning_tree(c, tree, config);
    if (!emb.ok()) {
        std::cerr << "solve failed: " << emb.failure().to_string() << '\n';
        return kExitNo;
    }
    write_text_file(out, tree_witness_bytes(tree, *emb));
    std::cout << "rainbow spanning tree found\n";
    return kExitYes;
}

int run_solve_factor(const std::string& instance_path, const std::string& f_name, int t,
                     std::uint64_t seed, const std::string& out) {
    GraphCollection c = read_collection_file(instance_path);
    auto spec = builtin_spec(f_name, t);
    if (!spec.ok()) {
        std::cerr << spec.failure().to_string() << '\n';
        return kExitUsage;
    }
    PipelineConfig config;
    config.rng_seed = seed;
    auto factor = ft_factor(c, *spec, config);
    if (!factor.ok()) {
        std::cerr << "solve failed: " << factor.failure().to_string() << '\n';
        return kExitNo;
    }
    write_text_file(out, factor_witness_bytes("factor", f_name, spec->t, *spec, *factor));
    std::cout << "(F," << spec->t << ")-factor found\n";
    return kExitYes;
}

int run_solve_patterned(const std::string& instance_path, const std::string& f_name,
                        const std::string& pattern_file, std::uint64_t seed,
                        const std::string& out) {
    GraphCollection c = read_collection_file(instance_path);
    auto spec = builtin_spec(f_name, 0);
    if (!spec.ok()) {
        std::cerr << spec.failure().to_string() << '\n';
        return kExitUsage;
    }
    auto patterns = read_pattern_file(pattern_file, spec->edges());
    PipelineConfig config;
    config.rng_seed = seed;
    auto factor = patterned_factor(c, *spec, patterns, config);
    if (!factor.ok()) {
        std::cerr << "solve failed: " << factor.failure().to_string() << '\n';
        return kExitNo;
    }
    write_text_file(out, factor_witness_bytes("patterned", f_name, 0, *spec, *factor));
    std::cout << "patterned factor found\n";
    return kExitYes;
}

// ---------------------------------------------------------------------------
// oracle implementations

int run_oracle_decide(const std::string& instance_path, const std::string& mode,
                      const std::string& tree_file, const std::string& f_name, int t,
                      const std::string& pattern_file, long long budget) {
    GraphCollection c = read_collection_file(instance_path);
    auto setup = build_template(mode, c.n, tree_file, f_name, t, pattern_file);
    if (!setup.ok()) {
        std::cerr << setup.failure().to_string() << '\n';
        return kExitUsage;
    }
    auto out = exists_transversal_exact(c, setup->tmpl, budget);
    switch (out.status) {
        case ExistsOutcome::Status::yes:
            std::cout << "yes (" << out.nodes << " nodes)\n";
            return kExitYes;
        case ExistsOutcome::Status::no:
            std::cout << "no (" << out.nodes << " nodes)\n";
            return kExitNo;
        case ExistsOutcome::Status::budget_exhausted:
            std::cout << "budget exhausted after " << out.nodes << " nodes\n";
            return kExitInternal;
    }
    return kExitInternal;
}

int run_oracle_verify(const std::string& instance_path, const std::string& witness_path,
                      const std::string& pattern_file) {
    GraphCollection c = read_collection_file(instance_path);
    ParsedWitness w = parse_witness(witness_path);
    ProblemTemplate tmpl;
    if (w.mode == "tree") {
        tmpl = ProblemTemplate::whole_graph(w.tree);
    } else {
        auto spec = builtin_spec(w.f_name, w.mode == "factor" ? w.t : 0);
        if (!spec.ok()) {
            std::cerr << spec.failure().to_string() << '\n';
            return kExitUsage;
        }
        if (w.mode == "factor") {
            tmpl = ProblemTemplate::factor(spec->f, w.copies, spec->t);
        } else {
            if (pattern_file.empty()) {
                std::cerr << "patterned witnesses need --pattern\n";
                return kExitUsage;
            }
            auto patterns = read_pattern_file(pattern_file, spec->edges());
            tmpl = ProblemTemplate::patterned(spec->f, patterns);
        }
    }
    auto violation = verify_transversal(c, tmpl, w.emb);
    if (violation) {
        std::cout << "violation: " << *violation << '\n';
        return kExitNo;
    }
    std::cout << "ok\n";
    return kExitYes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transversal: rainbow spanning trees and factors in graph collections"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed();
    app.add_option("--seed", seed, "rng seed (default: $TRANSVERSAL_SEED or 0)")
        ->capture_default_str();

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate instances (plus a .json metadata sidecar)");
    gen->require_subcommand(1);
    std::string out;

    auto* g_ident = gen->add_subcommand("identical", "m copies of one graph");
    int gi_n = 10, gi_m = 9;
    std::string gi_base = "complete";
    double gi_p = 0.5;
    g_ident->add_option("--n", gi_n)->required();
    g_ident->add_option("--m", gi_m)->required();
    g_ident->add_option("--base", gi_base, "complete | gnp");
    g_ident->add_option("--p", gi_p, "edge probability for gnp base");
    g_ident->add_option("-o,--out", out)->required();

    auto* g_rand = gen->add_subcommand("random", "random collection models");
    std::string gr_model = "iid_gnp";
    int gr_n = 20, gr_m = 19, gr_target = 0, gr_budget = 200;
    double gr_p = 0.5, gr_q = 0.1;
    g_rand->add_option("--model", gr_model,
                       "identical | iid_gnp | shared_base_plus_noise | min_degree_conditioned");
    g_rand->add_option("--n", gr_n)->required();
    g_rand->add_option("--m", gr_m)->required();
    g_rand->add_option("--p", gr_p);
    g_rand->add_option("--q", gr_q, "noise rate (shared_base_plus_noise)");
    g_rand->add_option("--target", gr_target, "min degree target (min_degree_conditioned)");
    g_rand->add_option("--budget", gr_budget, "per-colour resample budget");
    g_rand->add_option("-o,--out", out)->required();

    auto* g_blb = gen->add_subcommand("bridgeless-lb", "two-clique + bipartite lower bound");
    std::string gb_f = "C4";
    int gb_copies = 2;
    g_blb->add_option("--F", gb_f)->required();
    g_blb->add_option("--copies", gb_copies)->required();
    g_blb->add_option("-o,--out", out)->required();

    auto* g_cex = gen->add_subcommand("patterned-cex", "patterned K_{t,t} counterexample");
    int gc_t = 3, gc_k = 3, gc_n = 24;
    g_cex->add_option("--t", gc_t)->required();
    g_cex->add_option("--k", gc_k)->required();
    g_cex->add_option("--n", gc_n)->required();
    g_cex->add_option("-o,--out", out)->required();

    // ---- solve --------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "run the constructive pipelines");
    solve->require_subcommand(1);
    std::string instance_path, witness_path;

    auto* s_tree = solve->add_subcommand("tree", "rainbow spanning tree (m = n-1)");
    std::string st_tree_file;
    int st_maxdeg = 4;
    s_tree->add_option("-i,--instance", instance_path)->required();
    s_tree->add_option("--tree", st_tree_file, "template tree file (default: seeded random tree)");
    s_tree->add_option("--max-degree", st_maxdeg, "degree bound for the random template tree");
    s_tree->add_option("-o,--out", witness_path)->required();

    auto* s_factor = solve->add_subcommand("factor", "(F,t)-factor (m = t*n/r)");
    std::string sf_f = "K3";
    int sf_t = 0;
    s_factor->add_option("-i,--instance", instance_path)->required();
    s_factor->add_option("--F", sf_f)->required();
    s_factor->add_option("--t", sf_t, "1 or e(F); default e(F)");
    s_factor->add_option("-o,--out", witness_path)->required();

    auto* s_pat = solve->add_subcommand("patterned", "factor with prescribed per-edge colours");
    std::string sp_f = "C4", sp_pattern;
    s_pat->add_option("-i,--instance", instance_path)->required();
    s_pat->add_option("--F", sp_f)->required();
    s_pat->add_option("--pattern", sp_pattern, "pattern file: n lines of e(F) colours")->required();
    s_pat->add_option("-o,--out", witness_path)->required();

    // ---- oracle -------------------------------------------------------
    auto* orc = app.add_subcommand("oracle", "exact decision and verification");
    orc->require_subcommand(1);

    auto* o_decide = orc->add_subcommand("decide", "exhaustive transversal decision");
    std::string od_mode = "perfect-matching", od_tree, od_f, od_pattern;
    int od_t = 0;
    long long od_budget = 500'000'000;
    o_decide->add_option("-i,--instance", instance_path)->required();
    o_decide->add_option("--mode", od_mode,
                         "tree | hamilton | perfect-matching | factor | patterned");
    o_decide->add_option("--tree", od_tree);
    o_decide->add_option("--F", od_f);
    o_decide->add_option("--t", od_t);
    o_decide->add_option("--pattern", od_pattern);
    o_decide->add_option("--budget", od_budget, "search node budget");

    auto* o_verify = orc->add_subcommand("verify", "re-verify a solver witness");
    std::string ov_pattern;
    o_verify->add_option("-i,--instance", instance_path)->required();
    o_verify->add_option("-w,--witness", witness_path)->required();
    o_verify->add_option("--pattern", ov_pattern, "pattern file for patterned witnesses");

    // ---- sweep --------------------------------------------------------
    auto* sweep = app.add_subcommand(
        "sweep",
        "Monte-Carlo success sweep over a min-degree grid; emits CSV with columns "
        "delta_over_n (grid point), trials, successes (exact-oracle yes count) and "
        "mean_runtime_ms (wall clock per trial). Instances are dirac-shell collections: "
        "an unbalanced complete bipartite base plus one shared noise graph inside the "
        "larger side, conditioned on the degree target.");
    std::string sw_mode = "perfect-matching", sw_grid = "0.3:0.7:0.1", sw_out;
    int sw_n = 10, sw_trials = 50, sw_threads = 0;
    double sw_noise = 0.04;
    bool sw_stable = false;
    long long sw_budget = 200'000'000;
    sweep->add_option("--mode", sw_mode, "perfect-matching | hamilton");
    sweep->add_option("--n", sw_n)->required();
    sweep->add_option("--trials", sw_trials)->required();
    sweep->add_option("--delta-grid", sw_grid, "a:b:step over delta/n")->required();
    sweep->add_option("--threads", sw_threads, "worker threads (0 = auto)");
    sweep->add_option("--noise", sw_noise, "noise rate of the dirac-shell instances");
    sweep->add_option("--budget", sw_budget, "oracle node budget per trial");
    sweep->add_flag("--stable-output", sw_stable, "zero the runtime column for byte-stable CSVs");
    sweep->add_option("-o,--out", sw_out)->required();

    // let the global --seed appear after subcommand names
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (g_ident->parsed()) return run_gen_identical(out, gi_n, gi_m, gi_base, gi_p, seed);
        if (g_rand->parsed())
            return run_gen_random(out, gr_model, gr_n, gr_m, gr_p, gr_q, gr_target, gr_budget,
                                  seed);
        if (g_blb->parsed()) return run_gen_bridgeless(out, gb_f, gb_copies);
        if (g_cex->parsed()) return run_gen_patterned_cex(out, gc_t, gc_k, gc_n, seed);
        if (s_tree->parsed())
            return run_solve_tree(instance_path, st_tree_file, st_maxdeg, seed, witness_path);
        if (s_factor->parsed())
            return run_solve_factor(instance_path, sf_f, sf_t, seed, witness_path);
        if (s_pat->parsed())
            return run_solve_patterned(instance_path, sp_f, sp_pattern, seed, witness_path);
        if (o_decide->parsed())
            return run_oracle_decide(instance_path, od_mode, od_tree, od_f, od_t, od_pattern,
                                     od_budget);
        if (o_verify->parsed()) return run_oracle_verify(instance_path, witness_path, ov_pattern);
        if (sweep->parsed())
            return run_sweep(sw_mode, sw_n, sw_trials, sw_grid, seed, sw_threads, sw_noise,
                             sw_stable, sw_budget, sw_out);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const ParseError& pe) {
        std::cerr << "instance parse error: " << pe.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << '\n';
        return kExitInternal;
    }
}
