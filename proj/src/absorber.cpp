#include "transversal/absorber.hpp"

#include <algorithm>
#include <stdexcept>

#include "transversal/maxflow.hpp"

namespace transversal {

bool absorption_valid(const AbsorberTemplate& tmpl, const std::vector<int>& u_set,
                      const std::vector<int>& assignment) {
    int ms = tmpl.slot_count();
    if (static_cast<int>(assignment.size()) != ms) return false;
    Bitset used(tmpl.colour_count());
    for (int i = 0; i < ms; ++i) {
        int col = assignment[i];
        if (col < 0 || col >= tmpl.colour_count()) return false;
        if (!tmpl.slots_colours.has(i, col)) return false;
        if (used.test(col)) return false;
        used.set(col);
    }
    Bitset expect(tmpl.colour_count());
    for (int col : tmpl.fixed_colours) expect.set(col);
    for (int col : u_set) expect.set(col);
    return used == expect;
}

namespace {

// entry-slot matching: each u needs a distinct non-sink core slot adjacent to it
std::vector<int> match_entries(const AbsorberTemplate& tmpl, const std::vector<int>& u_set,
                               const std::vector<int>& a0) {
    BipartiteGraph bg(static_cast<int>(u_set.size()), static_cast<int>(a0.size()));
    for (std::size_t j = 0; j < u_set.size(); ++j)
        for (std::size_t d = 0; d < a0.size(); ++d)
            if (tmpl.slots_colours.has(a0[d], u_set[j])) bg.add(static_cast<int>(j), static_cast<int>(d));
    auto match = max_bipartite_matching(bg);
    std::vector<int> entries(u_set.size(), -1);
    for (std::size_t j = 0; j < u_set.size(); ++j)
        if (match[j] != -1) entries[j] = a0[match[j]];
    return entries;
}

// one max flow choosing entry slots and core routes together; returns per-u
// directed slot paths (entry .. sink), or empty on failure
std::vector<std::vector<int>> integrated_routes(const AbsorberTemplate& tmpl,
                                                const std::vector<int>& u_set,
                                                const std::vector<int>& a0) {
    int ell = static_cast<int>(u_set.size());
    int ms = tmpl.slot_count();
    Bitset core_mask = Bitset::of(ms, tmpl.core);
    Bitset sink_mask = Bitset::of(ms, tmpl.sinks);

    // nodes: u_j -> j; in(v) 2v+ell; out(v) 2v+ell+1... use offsets
    int base = ell;
    auto in_node = [&](int v) { return base + 2 * v; };
    auto out_node = [&](int v) { return base + 2 * v + 1; };
    MaxFlow mf(base + 2 * ms + 2);
    int src = base + 2 * ms, snk = base + 2 * ms + 1;

    for (int j = 0; j < ell; ++j) mf.add_edge(src, j, 1);
    std::vector<std::vector<std::pair<int, int>>> u_entry_edges(ell); // (edge id, slot)
    for (int j = 0; j < ell; ++j)
        for (int d : a0)
            if (tmpl.slots_colours.has(d, u_set[j]))
                u_entry_edges[j].push_back({mf.add_edge(j, in_node(d), 1), d});
    for (int v : tmpl.core) mf.add_edge(in_node(v), out_node(v), 1);
    std::vector<std::vector<std::pair<int, int>>> out_edges(ms);
    for (int v : tmpl.core)
        tmpl.aux.neighbours(v).for_each([&](int w) {
            if (core_mask.test(w)) out_edges[v].push_back({mf.add_edge(out_node(v), in_node(w), 1), w});
        });
    for (int z : tmpl.sinks) mf.add_edge(out_node(z), snk, 1);

    if (mf.run(src, snk) < ell) return {};

    std::vector<int> rem(mf.edges().size() / 2);
    for (std::size_t e = 0; e < rem.size(); ++e) rem[e] = mf.flow_on(static_cast<int>(2 * e));
    auto consume = [&](int eid) {
        if (rem[eid / 2] <= 0) return false;
        --rem[eid / 2];
        return true;
    };
    std::vector<std::vector<int>> routes(ell);
    for (int j = 0; j < ell; ++j) {
        int at = -1;
        for (auto [eid, d] : u_entry_edges[j])
            if (rem[eid / 2] > 0 && consume(eid)) {
                at = d;
                break;
            }
        if (at == -1) return {};
        routes[j].push_back(at);
        while (!sink_mask.test(at)) {
            bool moved = false;
            for (auto [eid, w] : out_edges[at])
                if (rem[eid / 2] > 0 && consume(eid)) {
                    at = w;
                    routes[j].push_back(at);
                    moved = true;
                    break;
                }
            if (!moved) return {};
        }
    }
    return routes;
}

bool assignment_consistent(const AbsorberTemplate& tmpl, const std::vector<int>& assignment) {
    Bitset used(tmpl.colour_count());
    for (int i = 0; i < tmpl.slot_count(); ++i) {
        int col = assignment[i];
        if (col < 0) return false;
        if (!tmpl.slots_colours.has(i, col)) return false;
        if (used.test(col)) return false;
        used.set(col);
    }
    return true;
}

} // namespace

Result<std::vector<int>> absorb(const AbsorberTemplate& tmpl, const std::vector<int>& u_set,
                                bool debug_stepwise) {
    using R = Result<std::vector<int>>;
    if (static_cast<int>(u_set.size()) != tmpl.ell)
        throw std::invalid_argument("absorb: |U| must equal ell");
    {
        Bitset res = Bitset::of(tmpl.colour_count(), tmpl.reservoir);
        for (int u : u_set)
            if (!res.test(u)) throw std::invalid_argument("absorb: U must lie in the reservoir");
    }
    std::vector<int> assignment = tmpl.base_match;
    if (tmpl.ell == 0) return assignment;

    Bitset sink_mask = Bitset::of(tmpl.slot_count(), tmpl.sinks);
    std::vector<int> a0;
    for (int v : tmpl.core)
        if (!sink_mask.test(v)) a0.push_back(v);

    // route: matched entries + disjoint_paths first, integrated flow as fallback
    std::vector<std::vector<int>> routes;
    std::vector<int> entries = match_entries(tmpl, u_set, a0);
    bool matched = std::find(entries.begin(), entries.end(), -1) == entries.end();
    if (matched) {
        std::vector<int> uniq = entries;
        std::sort(uniq.begin(), uniq.end());
        if (std::unique(uniq.begin(), uniq.end()) == uniq.end()) {
            Graph core_graph = tmpl.aux.induced(Bitset::of(tmpl.slot_count(), tmpl.core));
            auto paths = disjoint_paths(core_graph, entries, tmpl.sinks, tmpl.ell);
            if (paths.ok()) {
                // paths come back per entry in order; keep them matched to u_set
                routes = *paths;
            }
        }
    }
    if (routes.empty()) routes = integrated_routes(tmpl, u_set, a0);
    if (routes.empty())
        return R::fail(FailKind::no_routing, "",
                       "no vertex-disjoint entry->sink routing in the core (template invariant "
                       "violated)");

    for (std::size_t j = 0; j < routes.size(); ++j) {
        const std::vector<int>& path = routes[j];
        // rotate colours backwards along the path, then feed u into the entry
        for (std::size_t s = path.size(); s-- > 1;)
            assignment[path[s]] = tmpl.base_match[path[s - 1]];
        assignment[path[0]] = u_set[j];
        if (debug_stepwise && !assignment_consistent(tmpl, assignment))
            return R::fail(FailKind::no_routing, "",
                           "intermediate assignment broken after switching path " +
                               std::to_string(j));
    }
    if (!absorption_valid(tmpl, u_set, assignment))
        return R::fail(FailKind::no_routing, "", "final assignment failed verification");
    return assignment;
}

namespace {

// sampled (exhaustive when small) certification of the absorption property
bool certify_by_sampling(const AbsorberTemplate& tmpl, const PipelineConfig& config, Rng& rng) {
    if (tmpl.ell == 0) {
        auto r = absorb(tmpl, {});
        return r.ok() && absorption_valid(tmpl, {}, *r);
    }
    long long combos = 1;
    int b1 = static_cast<int>(tmpl.reservoir.size());
    for (int i = 0; i < tmpl.ell && combos <= config.absorber_verify_samples; ++i)
        combos = combos * (b1 - i) / (i + 1);
    if (combos <= config.absorber_verify_samples) {
        // exhaust all ell-subsets of the reservoir
        std::vector<int> idx(tmpl.ell);
        std::function<bool(int, int)> rec = [&](int start, int at) {
            if (at == tmpl.ell) {
                std::vector<int> u;
                for (int i : idx) u.push_back(tmpl.reservoir[i]);
                auto r = absorb(tmpl, u);
                return r.ok();
            }
            for (int i = start; i <= b1 - (tmpl.ell - at); ++i) {
                idx[at] = i;
                if (!rec(i + 1, at + 1)) return false;
            }
            return true;
        };
        return rec(0, 0);
    }
    for (int s = 0; s < config.absorber_verify_samples; ++s) {
        std::vector<int> u = rng.sample(tmpl.reservoir, static_cast<std::size_t>(tmpl.ell));
        std::sort(u.begin(), u.end());
        auto r = absorb(tmpl, u);
        if (!r.ok()) return false;
    }
    return true;
}

} // namespace

Result<AbsorberTemplate> build_absorber(const BipartiteGraph& slot_colour_graph, int ell,
                                        const PipelineConfig& config, Rng& rng) {
    using R = Result<AbsorberTemplate>;
    int ms = slot_colour_graph.left;
    int nc = slot_colour_graph.right;
    if (ell < 0 || ell > ms) throw std::invalid_argument("build_absorber: need 0 <= ell <= slots");

    int best_kappa = -1, best_b1 = -1;
    for (int attempt = 0; attempt < config.retries; ++attempt) {
        AbsorberTemplate t;
        t.slots_colours = slot_colour_graph;
        t.ell = ell;

        // sequential random greedy base match
        t.base_match.assign(ms, -1);
        Bitset used(nc);
        bool ok = true;
        for (int i = 0; i < ms && ok; ++i) {
            Bitset cand = slot_colour_graph.adj[i];
            cand.and_not(used);
            int deg = cand.count();
            if (deg == 0) {
                ok = false;
                break;
            }
            int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(deg)));
            int col = cand.next(0);
            while (pick-- > 0) col = cand.next(col + 1);
            t.base_match[i] = col;
            used.set(col);
        }
        if (!ok) continue;

        if (ell == 0) {
            t.fixed_colours = t.base_match;
            std::sort(t.fixed_colours.begin(), t.fixed_colours.end());
            for (int v = 0; v < nc; ++v)
                if (!used.test(v)) t.reservoir.push_back(v);
            t.aux = Graph(ms);
            t.core_connectivity = 0;
            if (certify_by_sampling(t, config, rng)) return t;
            continue;
        }

        // auxiliary mutual-adjacency graph on slots
        t.aux = Graph(ms);
        for (int i = 0; i < ms; ++i)
            for (int j = i + 1; j < ms; ++j)
                if (slot_colour_graph.has(j, t.base_match[i]) &&
                    slot_colour_graph.has(i, t.base_match[j]))
                    t.aux.add_edge(i, j);

        // best available well-connected core, target max(ell,2) then relax
        int need_core = std::max(2 * ell, ell + 2);
        t.core.clear();
        for (int target = std::max(ell, 2); target >= 2; --target) {
            auto h = find_highly_connected_subgraph(t.aux, target - 1);
            if (h.ok() && static_cast<int>(h->size()) >= need_core) {
                t.core = *h;
                break;
            }
        }
        if (t.core.empty()) continue;
        Bitset core_mask = Bitset::of(ms, t.core);
        t.core_connectivity = vertex_connectivity(t.aux, core_mask);

        t.sinks.assign(t.core.begin(), t.core.begin() + ell);
        Bitset sink_mask = Bitset::of(ms, t.sinks);
        for (int i = 0; i < ms; ++i)
            if (!sink_mask.test(i)) t.fixed_colours.push_back(t.base_match[i]);
        std::sort(t.fixed_colours.begin(), t.fixed_colours.end());

        std::vector<int> a0;
        for (int v : t.core)
            if (!sink_mask.test(v)) a0.push_back(v);
        for (int col = 0; col < nc; ++col) {
            if (used.test(col)) continue;
            int deg = 0;
            for (int d : a0)
                if (slot_colour_graph.has(d, col) && ++deg >= ell) break;
            if (deg >= ell) t.reservoir.push_back(col);
        }
        best_kappa = std::max(best_kappa, t.core_connectivity);
        best_b1 = std::max(best_b1, static_cast<int>(t.reservoir.size()));
        if (static_cast<int>(t.reservoir.size()) < ell) continue;

        if (certify_by_sampling(t, config, rng)) return t;
    }
    return R::fail(FailKind::retries_exhausted, "",
                   "no certified template in " + std::to_string(config.retries) +
                       " attempts (best core connectivity " + std::to_string(best_kappa) +
                       ", best |B1| " + std::to_string(best_b1) + ", ell " + std::to_string(ell) +
                       ")");
}

Result<ColourAbsorber> build_colour_absorber(const GraphCollection& c, const Graph& h, int ell,
                                             const UncolouredEmbedder& embedder,
                                             const PipelineConfig& config, Rng& rng,
                                             const std::vector<int>* allowed_colours,
                                             const Bitset* allowed_vertices) {
    using R = Result<ColourAbsorber>;
    std::vector<int> colours;
    if (allowed_colours) {
        colours = *allowed_colours;
    } else {
        colours.resize(c.colour_count());
        for (int i = 0; i < c.colour_count(); ++i) colours[i] = i;
    }
    Bitset verts = allowed_vertices ? *allowed_vertices : [&] {
        Bitset b(c.n);
        b.set_all();
        return b;
    }();
    if (ell > h.edge_count())
        return R::fail(FailKind::bad_input, "", "ell exceeds e(H)");

    int min_count = std::max(1, static_cast<int>(std::ceil(config.alpha * colours.size())));
    Graph host = threshold_graph(c, min_count, colours, verts);
    auto embedding = embedder(host, h);
    if (!embedding.ok()) {
        Failure f = embedding.failure();
        return R::fail(FailKind::embed_failed, f.stage, "uncoloured embedding failed: " + f.detail);
    }

    ColourAbsorber ca;
    ca.vertex_map = *embedding;
    for (auto [u, v] : h.edges())
        ca.slot_edges.push_back({ca.vertex_map[u], ca.vertex_map[v]});

    BipartiteGraph bip(static_cast<int>(ca.slot_edges.size()), c.colour_count());
    for (std::size_t s = 0; s < ca.slot_edges.size(); ++s)
        for (int j : colours)
            if (c.colour(j).has_edge(ca.slot_edges[s].first, ca.slot_edges[s].second))
                bip.add(static_cast<int>(s), j);

    auto tmpl = build_absorber(bip, ell, config, rng);
    if (!tmpl.ok()) return R::fail(tmpl.failure().kind, tmpl.failure().stage, tmpl.failure().detail);
    ca.tmpl = std::move(*tmpl);
    return ca;
}

Result<std::vector<int>> colour_absorber_colours(const ColourAbsorber& ca,
                                                 const std::vector<int>& u_set) {
    return absorb(ca.tmpl, u_set);
}

} // namespace transversal
