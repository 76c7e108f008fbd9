#include "doctest.h"

#include <functional>

#include "transversal/bipartite.hpp"
#include "transversal/constructions.hpp"
#include "transversal/factor_spec.hpp"
#include "transversal/oracle.hpp"

using namespace transversal;

namespace {

GraphCollection identical_complete(int n, int m) {
    GraphCollection c(n, m);
    for (int i = 0; i < m; ++i) c.colour(i) = Graph::complete(n);
    return c;
}

GraphCollection gnp_collection(int n, int m, double p, std::uint64_t seed) {
    RandomParams params;
    params.p = p;
    auto r = random_collection(n, m, RandomModel::iid_gnp, params, seed);
    REQUIRE(r.ok());
    return *r;
}

// unpruned exhaustive reference: enumerate all injective vertex maps, then try
// to assign colours; no Hall pruning during the walk
bool naive_exists(const GraphCollection& c, const ProblemTemplate& tmpl) {
    int hn = tmpl.h.size();
    auto edges = tmpl.h.edges();
    std::vector<int> vmap(hn, -1);
    std::vector<bool> used(c.n, false);
    int m = c.colour_count();
    int ecf = tmpl.f.edge_count();

    auto colours_ok = [&]() {
        if (tmpl.mode == TransversalMode::pattern) {
            for (std::size_t e = 0; e < edges.size(); ++e) {
                int cp = static_cast<int>(e) / ecf, s = static_cast<int>(e) % ecf;
                auto [u, v] = edges[e];
                if (!c.colour(tmpl.patterns[cp][s]).has_edge(vmap[u], vmap[v])) return false;
            }
            return true;
        }
        if (tmpl.mode == TransversalMode::rainbow) {
            BipartiteGraph bg(static_cast<int>(edges.size()), m);
            for (std::size_t e = 0; e < edges.size(); ++e) {
                auto [u, v] = edges[e];
                for (int i = 0; i < m; ++i)
                    if (c.colour(i).has_edge(vmap[u], vmap[v])) bg.add(static_cast<int>(e), i);
            }
            return has_left_perfect_matching(bg);
        }
        BipartiteGraph bg(tmpl.copy_count, m);
        for (int cp = 0; cp < tmpl.copy_count; ++cp)
            for (int i = 0; i < m; ++i) {
                bool all = true;
                for (int s = 0; s < ecf && all; ++s) {
                    auto [u, v] = edges[cp * ecf + s];
                    all = c.colour(i).has_edge(vmap[u], vmap[v]);
                }
                if (all) bg.add(cp, i);
            }
        return has_left_perfect_matching(bg);
    };

    std::function<bool(int)> rec = [&](int v) {
        if (v == hn) {
            // every template edge must exist somewhere before colour matching
            for (auto [x, y] : edges) {
                bool any = tmpl.mode == TransversalMode::pattern;
                for (int i = 0; i < m && !any; ++i) any = c.colour(i).has_edge(vmap[x], vmap[y]);
                if (!any) return false;
            }
            return colours_ok();
        }
        for (int w = 0; w < c.n; ++w) {
            if (used[w]) continue;
            vmap[v] = w;
            used[w] = true;
            if (rec(v + 1)) {
                used[w] = false;
                return true;
            }
            used[w] = false;
            vmap[v] = -1;
        }
        return false;
    };
    return rec(0);
}

RainbowEmbedding valid_path_embedding(const GraphCollection& c, int len) {
    RainbowEmbedding emb;
    for (int i = 0; i <= len; ++i) emb.vertex_map.push_back(i);
    for (int i = 0; i < len; ++i) emb.edge_colours.push_back(i);
    (void)c;
    return emb;
}

} // namespace

TEST_CASE("verify_transversal accepts valid embeddings and empty templates") {
    auto c = identical_complete(6, 5);
    auto tmpl = ProblemTemplate::whole_graph(Graph(0));
    CHECK_FALSE(verify_transversal(c, tmpl, RainbowEmbedding{}).has_value());

    auto path_tmpl = ProblemTemplate::whole_graph(Graph::path(6));
    auto emb = valid_path_embedding(c, 5);
    CHECK_FALSE(verify_transversal(c, path_tmpl, emb).has_value());
}

TEST_CASE("verify_transversal flags the first violation with coordinates") {
    GraphCollection c(4, 2);
    c.colour(0).add_edge(0, 1);
    c.colour(1).add_edge(2, 3);
    auto tmpl = ProblemTemplate::whole_graph(Graph::path(2));
    RainbowEmbedding good{{0, 1}, {0}};
    CHECK_FALSE(verify_transversal(c, tmpl, good).has_value());
    RainbowEmbedding bad{{0, 1}, {1}}; // colour 1 does not contain edge 01
    auto v = verify_transversal(c, tmpl, bad);
    REQUIRE(v.has_value());
    CHECK(v->find("colour 1") != std::string::npos);
}

TEST_CASE("verify_transversal mutation fuzzing flags every broken rule") {
    auto c = identical_complete(10, 9);
    GraphCollection sparse = gnp_collection(10, 9, 0.5, 77);

    auto tmpl = ProblemTemplate::whole_graph(Graph::path(10));
    auto base = valid_path_embedding(c, 9);
    REQUIRE_FALSE(verify_transversal(c, tmpl, base).has_value());

    Rng rng(123);
    int flagged = 0, total = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        RainbowEmbedding mut = base;
        switch (iter % 4) {
            case 0: { // duplicate a vertex image: injectivity broken
                int a = rng.range(0, 10), b = rng.range(0, 10);
                if (a == b) b = (b + 1) % 10;
                mut.vertex_map[a] = mut.vertex_map[b];
                break;
            }
            case 1: { // duplicate a colour: rainbow broken
                int a = rng.range(0, 9), b = rng.range(0, 9);
                if (a == b) b = (b + 1) % 9;
                mut.edge_colours[a] = mut.edge_colours[b];
                break;
            }
            case 2: // colour out of range
                mut.edge_colours[rng.range(0, 9)] = 9 + rng.range(0, 3);
                break;
            case 3: // vertex image out of range
                mut.vertex_map[rng.range(0, 10)] = 10 + rng.range(0, 3);
                break;
        }
        ++total;
        if (verify_transversal(c, tmpl, mut).has_value()) ++flagged;
    }
    CHECK(flagged == total);

    // membership violations against a sparse collection
    int membership_flagged = 0, membership_broken = 0;
    for (int e = 0; e < 9; ++e) {
        if (sparse.colour(e).has_edge(e, e + 1)) continue;
        ++membership_broken;
        if (verify_transversal(sparse, tmpl, base).has_value()) ++membership_flagged;
    }
    if (membership_broken > 0) CHECK(verify_transversal(sparse, tmpl, base).has_value());
}

TEST_CASE("verify_transversal enforces ft and pattern rules") {
    auto c = identical_complete(6, 4);
    auto spec = builtin_spec("K3", 1);
    REQUIRE(spec.ok());
    auto tmpl = ProblemTemplate::factor(spec->f, 2, 1);
    RainbowEmbedding emb{{0, 1, 2, 3, 4, 5}, {0, 0, 0, 2, 2, 2}};
    CHECK_FALSE(verify_transversal(c, tmpl, emb).has_value());
    RainbowEmbedding not_mono = emb;
    not_mono.edge_colours[1] = 1;
    CHECK(verify_transversal(c, tmpl, not_mono).has_value());
    RainbowEmbedding share = emb;
    share.edge_colours = {0, 0, 0, 0, 0, 0};
    CHECK(verify_transversal(c, tmpl, share).has_value());

    auto pat = ProblemTemplate::patterned(spec->f, {{0, 1, 2}, {3, 0, 1}});
    RainbowEmbedding pemb{{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 0, 1}};
    CHECK_FALSE(verify_transversal(c, pat, pemb).has_value());
    pemb.edge_colours[4] = 2;
    CHECK(verify_transversal(c, pat, pemb).has_value());
}

TEST_CASE("exists: single edge and forced hamilton cycle") {
    GraphCollection c(3, 1);
    c.colour(0).add_edge(0, 1);
    auto tmpl = ProblemTemplate::whole_graph(Graph::path(2));
    auto out = exists_transversal_exact(c, tmpl);
    CHECK(out.yes());
    REQUIRE(out.witness.has_value());
    CHECK_FALSE(verify_transversal(c, tmpl, *out.witness).has_value());

    // 8 identical copies of C8: the unique cycle is the only witness
    GraphCollection c8(8, 8);
    for (int i = 0; i < 8; ++i) c8.colour(i) = Graph::cycle(8);
    auto ham = exists_transversal_exact(c8, ProblemTemplate::hamilton_cycle(8));
    CHECK(ham.yes());
    REQUIRE(ham.witness.has_value());
    CHECK_FALSE(verify_transversal(c8, ProblemTemplate::hamilton_cycle(8), *ham.witness).has_value());
}

TEST_CASE("exists: pigeonhole shortcuts") {
    auto c = identical_complete(6, 3);
    auto tmpl = ProblemTemplate::whole_graph(Graph::path(6)); // 5 edges, 3 colours
    CHECK(exists_transversal_exact(c, tmpl).no());
}

TEST_CASE("exists agrees with unpruned exhaustive enumeration") {
    Rng seeds(2024);
    int trials_per_mode = 200;

    // rainbow spanning paths, n in {6,7,8}
    for (int trial = 0; trial < trials_per_mode; ++trial) {
        int n = 6 + trial % 3;
        auto c = gnp_collection(n, n - 1, 0.35, seeds.next_u64());
        auto tmpl = ProblemTemplate::whole_graph(Graph::path(n));
        auto fast = exists_transversal_exact(c, tmpl);
        REQUIRE_FALSE(fast.status == ExistsOutcome::Status::budget_exhausted);
        CHECK(fast.yes() == naive_exists(c, tmpl));
        if (fast.yes()) CHECK_FALSE(verify_transversal(c, tmpl, *fast.witness).has_value());
    }

    // rainbow perfect matchings (factor of K2), n in {6,8}
    for (int trial = 0; trial < trials_per_mode; ++trial) {
        int n = trial % 2 ? 6 : 8;
        auto c = gnp_collection(n, n / 2, 0.3, seeds.next_u64());
        auto tmpl = ProblemTemplate::perfect_matching(n);
        auto fast = exists_transversal_exact(c, tmpl);
        CHECK(fast.yes() == naive_exists(c, tmpl));
        if (fast.yes()) CHECK_FALSE(verify_transversal(c, tmpl, *fast.witness).has_value());
    }

    // monochromatic triangle factors (ft, t=1)
    auto k3 = builtin_spec("K3", 1);
    REQUIRE(k3.ok());
    for (int trial = 0; trial < trials_per_mode; ++trial) {
        auto c = gnp_collection(6, 4, 0.55, seeds.next_u64());
        auto tmpl = ProblemTemplate::factor(k3->f, 2, 1);
        auto fast = exists_transversal_exact(c, tmpl);
        CHECK(fast.yes() == naive_exists(c, tmpl));
        if (fast.yes()) CHECK_FALSE(verify_transversal(c, tmpl, *fast.witness).has_value());
    }

    // patterned copies, n in {7,8}
    for (int trial = 0; trial < trials_per_mode; ++trial) {
        int n = 7 + trial % 2;
        auto c = gnp_collection(n, 4, 0.5, seeds.next_u64());
        Graph f = Graph::cycle(4);
        auto tmpl = ProblemTemplate::patterned(f, {{0, 1, 2, 3}});
        auto fast = exists_transversal_exact(c, tmpl);
        CHECK(fast.yes() == naive_exists(c, tmpl));
        if (fast.yes()) CHECK_FALSE(verify_transversal(c, tmpl, *fast.witness).has_value());
    }
}

TEST_CASE("find_subgraph basics and pins") {
    Graph host = Graph::cycle(4);
    Graph single(1);
    auto r = find_subgraph(host, single);
    REQUIRE(r.ok());

    // K_{2,2} into C4: an identity-type embedding exists
    Graph k22(4);
    k22.add_edge(0, 2);
    k22.add_edge(0, 3);
    k22.add_edge(1, 2);
    k22.add_edge(1, 3);
    auto e = find_subgraph(host, k22);
    REQUIRE(e.ok());
    for (auto [x, y] : k22.edges()) CHECK(host.has_edge((*e)[x], (*e)[y]));

    // pins respected exactly
    auto pinned = find_subgraph(host, Graph::path(3), {{0, 0}, {2, 2}});
    REQUIRE(pinned.ok());
    CHECK((*pinned)[0] == 0);
    CHECK((*pinned)[2] == 2);
    CHECK(host.has_edge((*pinned)[0], (*pinned)[1]));
    CHECK(host.has_edge((*pinned)[1], (*pinned)[2]));

    // impossible pin: adjacent pattern vertices pinned to non-adjacent hosts
    auto bad = find_subgraph(host, Graph::path(2), {{0, 0}, {1, 2}});
    CHECK_FALSE(bad.ok());
}

TEST_CASE("find_subgraph agrees with a naive enumerator") {
    Rng rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        Graph host = random_gnp(14, 0.5, rng);
        Graph pattern = random_gnp(5, 0.55, rng);
        auto fast = find_subgraph(host, pattern);

        // naive: all injective maps
        std::vector<int> vmap(5, -1);
        std::vector<bool> used(14, false);
        auto pedges = pattern.edges();
        std::function<bool(int)> rec = [&](int v) -> bool {
            if (v == 5) return true;
            for (int w = 0; w < 14; ++w) {
                if (used[w]) continue;
                bool ok = true;
                for (auto [x, y] : pedges) {
                    if (x == v && vmap[y] != -1 && !host.has_edge(w, vmap[y])) ok = false;
                    if (y == v && vmap[x] != -1 && !host.has_edge(vmap[x], w)) ok = false;
                    if (!ok) break;
                }
                if (!ok) continue;
                vmap[v] = w;
                used[w] = true;
                if (rec(v + 1)) return true;
                used[w] = false;
                vmap[v] = -1;
            }
            return false;
        };
        CHECK(fast.ok() == rec(0));
        if (fast.ok())
            for (auto [x, y] : pedges) CHECK(host.has_edge((*fast)[x], (*fast)[y]));
    }
}

TEST_CASE("find_pattern_copy finds per-edge-coloured copies") {
    GraphCollection c(6, 3);
    c.colour(0).add_edge(0, 1);
    c.colour(1).add_edge(1, 2);
    c.colour(2).add_edge(2, 3);
    Graph p3 = Graph::path(4); // edges (0,1),(1,2),(2,3) lex
    Bitset all(6);
    all.set_all();
    auto r = find_pattern_copy(c, p3, {0, 1, 2}, all);
    REQUIRE(r.ok());
    CHECK(c.colour(0).has_edge((*r)[0], (*r)[1]));
    CHECK(c.colour(1).has_edge((*r)[1], (*r)[2]));
    CHECK(c.colour(2).has_edge((*r)[2], (*r)[3]));

    // (0,1) in colour 1 = {1,2}, (1,2) in colour 0 = {0,1}, (2,3) in colour 2
    // = {2,3}: no vertex sequence satisfies all three
    auto none = find_pattern_copy(c, p3, {1, 0, 2}, all);
    CHECK_FALSE(none.ok());
}

TEST_CASE("automorphism orbits") {
    auto orb_path = automorphism_vertex_orbits(Graph::path(3));
    CHECK(orb_path[0] == orb_path[2]);
    CHECK(orb_path[0] != orb_path[1]);
    auto orb_k4 = automorphism_vertex_orbits(Graph::complete(4));
    CHECK(orb_k4[0] == orb_k4[3]);
    auto orb_star = automorphism_vertex_orbits(Graph::star(3));
    CHECK(orb_star[1] == orb_star[3]);
    CHECK(orb_star[0] != orb_star[1]);
}
