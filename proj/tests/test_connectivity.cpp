#include "doctest.h"

#include <functional>

#include "transversal/connectivity.hpp"
#include "transversal/constructions.hpp"
#include "transversal/rng.hpp"

using namespace transversal;

namespace {

// brute force: smallest vertex set whose removal disconnects (or n-1 for K_n)
int kappa_brute(const Graph& g) {
    int n = g.size();
    Bitset all(n);
    all.set_all();
    if (!g.connected_within(all)) return 0;
    for (int size = 1; size <= n - 2; ++size) {
        std::vector<int> pick(size);
        std::function<bool(int, int)> rec = [&](int start, int at) {
            if (at == size) {
                Bitset keep = all;
                for (int v : pick) keep.reset(v);
                return !g.connected_within(keep);
            }
            for (int v = start; v < n; ++v) {
                pick[at] = v;
                if (rec(v + 1, at + 1)) return true;
            }
            return false;
        };
        if (rec(0, 0)) return size;
    }
    return n - 1;
}

} // namespace

TEST_CASE("vertex connectivity of standard graphs") {
    CHECK(vertex_connectivity(Graph::complete(5)) == 4);
    CHECK(vertex_connectivity(Graph::path(4)) == 1);
    CHECK(vertex_connectivity(Graph::cycle(6)) == 2);
    Graph two(5); // two components
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    CHECK(vertex_connectivity(two) == 0);
}

TEST_CASE("vertex connectivity agrees with exhaustive cut enumeration") {
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_gnp(12, 0.4, rng);
        CHECK(vertex_connectivity(g) == kappa_brute(g));
    }
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random_gnp(8, 0.45, rng);
        CHECK(vertex_connectivity(g) == kappa_brute(g));
    }
}

TEST_CASE("min_vertex_cut really disconnects at the optimum") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_gnp(10, 0.4, rng);
        Bitset all(10);
        all.set_all();
        int kappa = vertex_connectivity(g);
        auto cut = min_vertex_cut(g, all);
        if (kappa == 0 || kappa == 9) {
            CHECK(cut.empty());
            continue;
        }
        CHECK(static_cast<int>(cut.size()) == kappa);
        Bitset keep = all;
        for (int v : cut) keep.reset(v);
        CHECK_FALSE(g.connected_within(keep));
    }
}

TEST_CASE("mader extraction on cliques") {
    for (int k : {1, 2, 3}) {
        Graph g = Graph::complete(4 * k + 1);
        auto h = find_highly_connected_subgraph(g, k);
        REQUIRE(h.ok());
        CHECK(static_cast<int>(h->size()) == 4 * k + 1);
    }
}

TEST_CASE("mader extraction descends through a cut vertex") {
    // two K6 cliques sharing vertex 0
    Graph g(11);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) g.add_edge(u, v);
    std::vector<int> right{0, 6, 7, 8, 9, 10};
    for (std::size_t a = 0; a < right.size(); ++a)
        for (std::size_t b = a + 1; b < right.size(); ++b) g.add_edge(right[a], right[b]);
    auto h = find_highly_connected_subgraph(g, 2);
    REQUIRE(h.ok());
    CHECK(h->size() == 6); // one of the cliques
    Bitset hb = Bitset::of(11, *h);
    CHECK(vertex_connectivity(g, hb) >= 3);
}

TEST_CASE("mader extraction output verified on random graphs") {
    Rng rng(11);
    int done = 0;
    for (int trial = 0; done < 50; ++trial) {
        REQUIRE(trial < 200);
        Graph g = random_gnp(40, 0.5, rng);
        if (g.edge_count() < 2 * 4 * 40) continue; // keep the theorem's hypothesis
        ++done;
        auto h = find_highly_connected_subgraph(g, 4);
        REQUIRE(h.ok());
        Bitset hb = Bitset::of(40, *h);
        CHECK(vertex_connectivity(g, hb) >= 5);
        CHECK(static_cast<int>(h->size()) >= 6);
    }
}

TEST_CASE("disjoint paths on complete graphs and k=1") {
    Graph g = Graph::complete(8);
    auto r = disjoint_paths(g, {0, 1, 2}, {5, 6, 7}, 3);
    REQUIRE(r.ok());
    CHECK(r->size() == 3);

    Graph p = Graph::path(6);
    auto one = disjoint_paths(p, {0}, {5}, 1);
    REQUIRE(one.ok());
    CHECK((*one)[0].front() == 0);
    CHECK((*one)[0].back() == 5);
}

TEST_CASE("disjoint paths structural verification on random graphs") {
    Rng rng(3);
    int checked = 0;
    for (int trial = 0; checked < 50; ++trial) {
        REQUIRE(trial < 300);
        Graph g = random_gnp(25, 0.5, rng);
        std::vector<int> ids(25);
        for (int i = 0; i < 25; ++i) ids[i] = i;
        auto pick = rng.sample(ids, 6);
        std::vector<int> a(pick.begin(), pick.begin() + 3), b(pick.begin() + 3, pick.end());
        auto r = disjoint_paths(g, a, b, 3);
        if (!r.ok()) continue; // sparse instance without routing; precondition failed
        ++checked;
        Bitset used(25);
        Bitset aset = Bitset::of(25, a), bset = Bitset::of(25, b);
        for (const auto& path : *r) {
            CHECK(aset.test(path.front()));
            CHECK(bset.test(path.back()));
            for (std::size_t i = 0; i + 1 < path.size(); ++i)
                CHECK(g.has_edge(path[i], path[i + 1]));
            for (int v : path) {
                CHECK_FALSE(used.test(v)); // pairwise disjoint incl. endpoints
                used.set(v);
            }
        }
        // each endpoint set hit exactly once per path
        int astarts = 0;
        for (const auto& path : *r) astarts += aset.test(path.front());
        CHECK(astarts == 3);
    }
}

TEST_CASE("disjoint paths reports no routing through a bottleneck") {
    // two cliques joined by a single vertex cannot route 2 disjoint paths
    Graph g(9);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) g.add_edge(u, v);
    for (int u = 5; u < 9; ++u)
        for (int v = u + 1; v < 9; ++v) g.add_edge(u, v);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    auto r = disjoint_paths(g, {0, 1}, {7, 8}, 2);
    CHECK_FALSE(r.ok());
    CHECK(r.failure().kind == FailKind::no_routing);
}

TEST_CASE("mader extraction survives pruning that disconnects the residue") {
    // two K6 cliques joined by a degree-2 path: pruning at k=2 removes the
    // path and leaves two components, one of which must still be returned
    Graph g(15);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) g.add_edge(u, v);
    for (int u = 9; u < 15; ++u)
        for (int v = u + 1; v < 15; ++v) g.add_edge(u, v);
    g.add_edge(5, 6);
    g.add_edge(6, 7);
    g.add_edge(7, 8);
    g.add_edge(8, 9);
    auto h = find_highly_connected_subgraph(g, 2);
    REQUIRE(h.ok());
    Bitset hb = Bitset::of(15, *h);
    CHECK(vertex_connectivity(g, hb) >= 3);
}
