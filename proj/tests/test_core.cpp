#include "doctest.h"

#include <sstream>

#include <limits>

#include "transversal/collection.hpp"
#include "transversal/config.hpp"
#include "transversal/constructions.hpp"
#include "transversal/rng.hpp"

using namespace transversal;

namespace {

GraphCollection gnp_collection(int n, int m, double p, std::uint64_t seed) {
    RandomParams params;
    params.p = p;
    auto r = random_collection(n, m, RandomModel::iid_gnp, params, seed);
    REQUIRE(r.ok());
    return *r;
}

// independent recount straight off the edge lists
int min_degree_by_edge_scan(const GraphCollection& c) {
    int best = -1;
    for (const Graph& g : c.colours) {
        std::vector<int> deg(c.n, 0);
        for (auto [u, v] : g.edges()) {
            ++deg[u];
            ++deg[v];
        }
        for (int v = 0; v < c.n; ++v)
            if (best < 0 || deg[v] < best) best = deg[v];
    }
    return best;
}

} // namespace

TEST_CASE("min_degree basics") {
    GraphCollection c(4, 3);
    for (int i = 0; i < 3; ++i) c.colour(i) = Graph::complete(4);
    CHECK(min_degree(c) == 3);

    GraphCollection d(4, 2);
    d.colour(0) = Graph::complete(4);
    CHECK(min_degree(d) == 0);

    CHECK_THROWS_AS(min_degree(GraphCollection(3, 0)), std::invalid_argument);
}

TEST_CASE("min_degree matches an independent edge-list recount") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto c = gnp_collection(20, 6, 0.5, seed);
        CHECK(min_degree(c) == min_degree_by_edge_scan(c));
    }
}

TEST_CASE("threshold_graph on identical and near-empty collections") {
    GraphCollection c(5, 3);
    for (int i = 0; i < 3; ++i) c.colour(i) = Graph::complete(5);
    CHECK(threshold_graph(c, 2) == Graph::complete(5));

    GraphCollection d(3, 3);
    d.colour(0).add_edge(0, 1);
    Graph out = threshold_graph(d, 2);
    CHECK_FALSE(out.has_edge(0, 1));
    CHECK(out.edge_count() == 0);
}

TEST_CASE("threshold_graph degree inequality, exact arithmetic") {
    // m * delta(out) >= m * delta(C) - (n-1) * min_count, over random inputs
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto c = gnp_collection(20, 10, 0.5, seed);
        int delta = min_degree(c);
        for (int mc : {1, 3, 10}) {
            Graph out = threshold_graph(c, mc);
            CHECK(10LL * out.min_degree() >= 10LL * delta - 19LL * mc);
        }
    }
}

TEST_CASE("threshold_graph monotone in min_count; 1 = union, m = intersection") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto c = gnp_collection(12, 5, 0.4, seed);
        Graph prev = threshold_graph(c, 1);
        for (int mc = 2; mc <= 5; ++mc) {
            Graph cur = threshold_graph(c, mc);
            for (auto [u, v] : cur.edges()) CHECK(prev.has_edge(u, v));
            prev = cur;
        }
        Graph uni(12), inter(12);
        for (int u = 0; u < 12; ++u)
            for (int v = u + 1; v < 12; ++v) {
                int cnt = 0;
                for (const Graph& g : c.colours) cnt += g.has_edge(u, v);
                if (cnt >= 1) uni.add_edge(u, v);
                if (cnt == 5) inter.add_edge(u, v);
            }
        CHECK(threshold_graph(c, 1) == uni);
        CHECK(threshold_graph(c, 5) == inter);
    }
}

TEST_CASE("instance io round-trips") {
    GraphCollection empty(3, 2);
    std::stringstream s1;
    write_collection(empty, s1);
    CHECK(read_collection(s1) == empty);

    GraphCollection one(3, 1);
    one.colour(0).add_edge(0, 1);
    std::stringstream s2;
    write_collection(one, s2);
    CHECK(read_collection(s2) == one);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto c = gnp_collection(10, 4, 0.4, seed);
        std::stringstream ss;
        write_collection(c, ss);
        std::string bytes = ss.str();
        GraphCollection back = read_collection(ss);
        CHECK(back == c);
        // serialisation is canonical: write(read(s)) == s
        std::stringstream again;
        write_collection(back, again);
        CHECK(again.str() == bytes);
    }
}

TEST_CASE("instance io reports parse errors with line numbers") {
    auto expect_error = [](const std::string& text, int line) {
        std::stringstream ss(text);
        try {
            read_collection(ss);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error("nonsense\n", 1);
    expect_error("2\n", 1);
    expect_error("3 1\ncolour 0 1\n0 7\n", 3);       // vertex out of range
    expect_error("3 1\ncolour 0 2\n0 1\n0 1\n", 4);  // duplicate edge
    expect_error("3 1\ncolour 0 1\n1 0\n", 3);       // u < v violated
    expect_error("3 2\ncolour 1 0\n", 2);            // wrong colour index
}

TEST_CASE("blank lines are ignored") {
    std::stringstream ss("\n3 1\n\ncolour 0 1\n\n0 2\n\n");
    GraphCollection c = read_collection(ss);
    CHECK(c.n == 3);
    CHECK(c.colour(0).has_edge(0, 2));
}

TEST_CASE("pipeline config validation") {
    PipelineConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    PipelineConfig bad = cfg;
    bad.gamma = bad.beta; // hierarchy broken
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.retries = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.mu = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
