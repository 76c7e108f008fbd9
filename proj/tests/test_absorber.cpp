#include "doctest.h"

#include "transversal/absorber.hpp"
#include "transversal/constructions.hpp"
#include "transversal/trees.hpp"

using namespace transversal;

namespace {

BipartiteGraph random_bipartite(int slots, int colours, double density, Rng& rng) {
    BipartiteGraph b(slots, colours);
    for (int s = 0; s < slots; ++s)
        for (int c = 0; c < colours; ++c)
            if (rng.chance(density)) b.add(s, c);
    return b;
}

BipartiteGraph complete_bipartite(int slots, int colours) {
    BipartiteGraph b(slots, colours);
    for (int s = 0; s < slots; ++s)
        for (int c = 0; c < colours; ++c) b.add(s, c);
    return b;
}

bool template_invariants_hold(const AbsorberTemplate& t) {
    // injective system of adjacent colours
    Bitset seen(t.colour_count());
    for (int i = 0; i < t.slot_count(); ++i) {
        if (!t.slots_colours.has(i, t.base_match[i])) return false;
        if (seen.test(t.base_match[i])) return false;
        seen.set(t.base_match[i]);
    }
    // B0 = base colours off the sinks
    Bitset sinks = Bitset::of(t.slot_count(), t.sinks);
    std::vector<int> b0;
    for (int i = 0; i < t.slot_count(); ++i)
        if (!sinks.test(i)) b0.push_back(t.base_match[i]);
    std::sort(b0.begin(), b0.end());
    if (b0 != t.fixed_colours) return false;
    // reservoir disjoint from the base system, correct degree threshold
    std::vector<int> a0;
    for (int v : t.core)
        if (!sinks.test(v)) a0.push_back(v);
    for (int col : t.reservoir) {
        if (seen.test(col)) return false;
        int deg = 0;
        for (int d : a0) deg += t.slots_colours.has(d, col);
        if (deg < t.ell) return false;
    }
    // aux graph definition spot check
    for (int i = 0; i < t.slot_count(); ++i)
        for (int j = i + 1; j < t.slot_count(); ++j) {
            bool expect = t.slots_colours.has(j, t.base_match[i]) &&
                          t.slots_colours.has(i, t.base_match[j]);
            if (t.aux.has_edge(i, j) != expect) return false;
        }
    return true;
}

} // namespace

TEST_CASE("absorber over a complete slot-colour graph") {
    PipelineConfig cfg;
    Rng rng(1);
    auto bip = complete_bipartite(10, 30);
    auto t = build_absorber(bip, 3, cfg, rng);
    REQUIRE(t.ok());
    CHECK(template_invariants_hold(*t));
    CHECK_FALSE(t->reservoir.empty());
    CHECK(static_cast<int>(t->fixed_colours.size()) == 10 - 3);

    std::vector<int> u(t->reservoir.begin(), t->reservoir.begin() + 3);
    auto a = absorb(*t, u, true);
    REQUIRE(a.ok());
    CHECK(absorption_valid(*t, u, *a));
}

TEST_CASE("absorber with ell = 0 returns the base match") {
    PipelineConfig cfg;
    Rng rng(2);
    auto bip = complete_bipartite(6, 20);
    auto t = build_absorber(bip, 0, cfg, rng);
    REQUIRE(t.ok());
    auto a = absorb(*t, {});
    REQUIRE(a.ok());
    CHECK(*a == t->base_match);
    CHECK(absorption_valid(*t, {}, *a));
}

TEST_CASE("absorber templates at the benchmark scale verify on sampled subsets") {
    PipelineConfig cfg;
    cfg.absorber_verify_samples = 64; // build-time certification samples
    int built = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(Rng::derive(seed, 1));
        auto bip = random_bipartite(40, 600, 0.35, rng);
        auto t = build_absorber(bip, 4, cfg, rng);
        if (!t.ok()) continue;
        ++built;
        CHECK(template_invariants_hold(*t));
        CHECK(static_cast<int>(t->reservoir.size()) >= 4);
        // fresh samples, not the ones used during certification
        Rng srng(Rng::derive(seed, 2));
        for (int s = 0; s < 50; ++s) {
            auto u = srng.sample(t->reservoir, 4);
            std::sort(u.begin(), u.end());
            auto a = absorb(*t, u);
            REQUIRE(a.ok());
            CHECK(absorption_valid(*t, u, *a));
            // independent maximum-matching oracle agrees a perfect matching exists
            Bitset right(t->colour_count());
            for (int col : t->fixed_colours) right.set(col);
            for (int col : u) right.set(col);
            CHECK(has_left_perfect_matching(t->slots_colours, &right));
        }
    }
    CHECK(built >= 9);
}

TEST_CASE("absorber builds are deterministic under a fixed seed") {
    PipelineConfig cfg;
    Rng r1(77), r2(77);
    auto bip = random_bipartite(20, 100, 0.4, r1);
    Rng r1b(99), r2b(99);
    Rng rx(77);
    auto bip2 = random_bipartite(20, 100, 0.4, rx);
    auto t1 = build_absorber(bip, 2, cfg, r1b);
    auto t2 = build_absorber(bip2, 2, cfg, r2b);
    REQUIRE(t1.ok());
    REQUIRE(t2.ok());
    CHECK(t1->base_match == t2->base_match);
    CHECK(t1->core == t2->core);
    CHECK(t1->reservoir == t2->reservoir);
}

TEST_CASE("absorb rejects subsets outside the reservoir") {
    PipelineConfig cfg;
    Rng rng(5);
    auto bip = complete_bipartite(8, 25);
    auto t = build_absorber(bip, 2, cfg, rng);
    REQUIRE(t.ok());
    CHECK_THROWS_AS((void)absorb(*t, {t->base_match[0], t->reservoir[0]}), std::invalid_argument);
    CHECK_THROWS_AS((void)absorb(*t, {t->reservoir[0]}), std::invalid_argument);
}

TEST_CASE("colour absorber on a single edge with ell = 0") {
    GraphCollection c(6, 5);
    for (int i = 0; i < 5; ++i) c.colour(i) = Graph::complete(6);
    PipelineConfig cfg;
    Rng rng(3);
    Graph h(2);
    h.add_edge(0, 1);
    UncolouredEmbedder embedder = [&](const Graph& host, const Graph& hh) {
        auto ht = Tree::from_graph(hh);
        REQUIRE(ht.ok());
        return embed_tree_anywhere(host, *ht, 0);
    };
    auto ca = build_colour_absorber(c, h, 0, embedder, cfg, rng);
    REQUIRE(ca.ok());
    CHECK(ca->tmpl.fixed_colours.size() == 1);
    auto cols = colour_absorber_colours(*ca, {});
    REQUIRE(cols.ok());
    CHECK((*cols)[0] == ca->tmpl.fixed_colours[0]);
    CHECK(c.colour((*cols)[0]).has_edge(ca->slot_edges[0].first, ca->slot_edges[0].second));
}

TEST_CASE("colour absorber property on a dense instance") {
    RandomParams params;
    params.p = 0.9;
    params.min_degree_target = 48;
    auto cr = random_collection(60, 59, RandomModel::min_degree_conditioned, params, 2024);
    REQUIRE(cr.ok());
    const GraphCollection& c = *cr;

    // a 12-edge subtree as H
    Rng trng(5);
    auto h = random_tree(13, 4, trng);
    REQUIRE(h.ok());

    PipelineConfig cfg;
    Rng rng(6);
    UncolouredEmbedder embedder = [&](const Graph& host, const Graph& hh) {
        auto ht = Tree::from_graph(hh);
        REQUIRE(ht.ok());
        return embed_tree_anywhere(host, *ht, 0);
    };
    auto ca = build_colour_absorber(c, *h, 2, embedder, cfg, rng);
    REQUIRE(ca.ok());
    CHECK(static_cast<int>(ca->tmpl.fixed_colours.size()) == 12 - 2);

    // any 2-subset of the reservoir colours S exactly A u B
    Rng srng(7);
    for (int s = 0; s < 100; ++s) {
        auto u = srng.sample(ca->tmpl.reservoir, 2);
        std::sort(u.begin(), u.end());
        auto cols = colour_absorber_colours(*ca, u);
        REQUIRE(cols.ok());
        CHECK(absorption_valid(ca->tmpl, u, *cols));
        for (std::size_t slot = 0; slot < ca->slot_edges.size(); ++slot)
            CHECK(c.colour((*cols)[slot])
                      .has_edge(ca->slot_edges[slot].first, ca->slot_edges[slot].second));
    }
}
