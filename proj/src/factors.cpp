#include "transversal/factors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "transversal/absorber.hpp"
#include "transversal/partition.hpp"

namespace transversal {

RainbowEmbedding FtFactor::to_embedding(const Graph& f) const {
    RainbowEmbedding emb;
    for (const FtCopy& cp : copies) {
        emb.vertex_map.insert(emb.vertex_map.end(), cp.vertices.begin(), cp.vertices.end());
        emb.edge_colours.insert(emb.edge_colours.end(), cp.edge_colours.begin(),
                                cp.edge_colours.end());
    }
    (void)f;
    return emb;
}

namespace {

std::vector<int> colour_range(const GraphCollection& c) {
    std::vector<int> v(c.colour_count());
    for (int i = 0; i < c.colour_count(); ++i) v[i] = i;
    return v;
}

// edge set of an embedded copy in canonical order
std::vector<std::pair<int, int>> image_edges(const Graph& f, const std::vector<int>& vmap) {
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : f.edges()) {
        int u = vmap[a], v = vmap[b];
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

Bitset colours_containing(const GraphCollection& c, const std::vector<std::pair<int, int>>& edges,
                          const Bitset& pool) {
    Bitset out = pool;
    for (auto [u, v] : edges) {
        Bitset has(c.colour_count());
        for (int j = out.next(0); j != -1; j = out.next(j + 1))
            if (c.colour(j).has_edge(u, v)) has.set(j);
        out &= has;
        if (out.none()) break;
    }
    return out;
}

Graph union_graph(const GraphCollection& c, const std::vector<int>& colours, const Bitset& verts) {
    Graph g(c.n);
    auto vs = verts.to_vector();
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            for (int j : colours)
                if (c.colour(j).has_edge(vs[a], vs[b])) {
                    g.add_edge(vs[a], vs[b]);
                    break;
                }
    return g;
}

// escalating-slack degree-preserving split of a vertex pool
Result<PartitionPlan> split_pool(const GraphCollection& c, const std::vector<int>& ground,
                                 const std::vector<int>& sizes, const PipelineConfig& config,
                                 Rng& rng) {
    Result<PartitionPlan> plan = Result<PartitionPlan>::fail(FailKind::retries_exhausted, "", "");
    for (double slack = config.partition_slack; slack < 0.95; slack += 0.15) {
        plan = split_preserving_degrees(c, ground, sizes, slack, config, rng);
        if (plan.ok()) return plan;
    }
    return plan;
}

} // namespace

Result<std::pair<std::vector<int>, std::vector<int>>> common_colour_F_copy(
    const GraphCollection& c, const FactorSpec& spec, const Bitset& forbidden_vertices,
    const Bitset& forbidden_colours, const PipelineConfig& config, Rng& rng) {
    using R = Result<std::pair<std::vector<int>, std::vector<int>>>;
    int r = spec.r();
    Bitset allowed_v(c.n);
    allowed_v.set_all();
    allowed_v.and_not(forbidden_vertices);
    std::vector<int> allowed_c;
    for (int j = 0; j < c.colour_count(); ++j)
        if (!forbidden_colours.test(j)) allowed_c.push_back(j);
    if (allowed_v.count() < r) return R::fail(FailKind::bad_input, "", "not enough free vertices");
    if (allowed_c.empty()) return R::fail(FailKind::bad_input, "", "no free colours");

    double delta_rel = static_cast<double>(min_degree(c)) / c.n;
    int window = std::min(r * std::max(config.k, 2), allowed_v.count());
    int support_floor =
        std::max(1, static_cast<int>(std::ceil(config.beta_bar * allowed_c.size())));

    int best_support_seen = 0;
    for (int attempt = 0; attempt < config.retries; ++attempt) {
        std::vector<int> win = rng.sample(allowed_v.to_vector(), window);
        std::sort(win.begin(), win.end());
        Bitset win_mask = Bitset::of(c.n, win);

        // colours keeping their scaled min degree on the window
        std::vector<int> good;
        int need = static_cast<int>(std::floor((delta_rel - config.degree_slack) * window));
        for (int j : allowed_c)
            if (c.colour(j).min_degree_within(win_mask) >= need) good.push_back(j);
        if (good.empty()) continue;

        Graph host = union_graph(c, good, win_mask);
        Bitset good_mask = Bitset::of(c.colour_count(), good);

        std::set<std::vector<std::pair<int, int>>> seen;
        std::vector<int> best_copy;
        int best_count = -1;
        enumerate_subgraph_embeddings(
            host, spec.f, {}, config.search_budget, &win_mask, [&](const std::vector<int>& vmap) {
                auto edges = image_edges(spec.f, vmap);
                if (!seen.insert(edges).second) return true;
                int count = colours_containing(c, edges, good_mask).count();
                if (count > best_count) {
                    best_count = count;
                    best_copy = vmap;
                }
                return true;
            });
        best_support_seen = std::max(best_support_seen, best_count);
        if (best_count < support_floor) continue;

        // all allowed colours containing the copy
        Bitset all_allowed = Bitset::of(c.colour_count(), allowed_c);
        auto j_set = colours_containing(c, image_edges(spec.f, best_copy), all_allowed);
        return std::make_pair(best_copy, j_set.to_vector());
    }
    return R::fail(FailKind::retries_exhausted, "",
                   "no copy with colour support >= " + std::to_string(support_floor) + " in " +
                       std::to_string(config.retries) + " windows (best " +
                       std::to_string(best_support_seen) + ")");
}

namespace {

// per-block factor search: vertex-disjoint copies covering the block, all
// contained in a common colour set of size >= needed
struct BlockFactorSearch {
    const GraphCollection& c;
    const Graph& f;
    int needed;
    long long cap;
    long long nodes = 0;
    const std::vector<int>& orbit_reps;
    Graph host; // union graph over the pool on the block

    std::vector<FtCopy> placed;
    std::vector<Bitset> commons; // common colour sets along the stack
    Bitset free;
    bool done = false;

    BlockFactorSearch(const GraphCollection& cc, const Graph& ff, int need, long long cap_,
                      const std::vector<int>& orbits, Graph h, Bitset free0, Bitset pool0)
        : c(cc), f(ff), needed(need), cap(cap_), orbit_reps(orbits), host(std::move(h)),
          free(std::move(free0)) {
        commons.push_back(std::move(pool0));
    }

    bool rec(int copies_left) {
        if (done) return true;
        if (copies_left == 0) {
            done = true;
            return true;
        }
        if (nodes > cap) return false;
        int anchor = free.next(0);
        if (anchor == -1) return false;

        // candidate copies through the anchor vertex, deduplicated by edge set
        std::set<std::vector<std::pair<int, int>>> seen;
        std::vector<std::pair<std::vector<int>, Bitset>> candidates;
        for (int p : orbit_reps) {
            enumerate_subgraph_embeddings(host, f, {{p, anchor}}, cap - nodes, &free,
                                          [&](const std::vector<int>& vmap) {
                                              ++nodes;
                                              auto edges = image_edges(f, vmap);
                                              if (!seen.insert(edges).second) return nodes <= cap;
                                              Bitset common =
                                                  colours_containing(c, edges, commons.back());
                                              if (common.count() >= needed)
                                                  candidates.push_back({vmap, std::move(common)});
                                              return nodes <= cap;
                                          });
            if (nodes > cap) break;
        }
        for (auto& [vmap, common] : candidates) {
            FtCopy cp;
            cp.vertices = vmap;
            placed.push_back(cp);
            commons.push_back(common);
            for (int v : vmap) free.reset(v);
            if (rec(copies_left - 1)) return true;
            for (int v : vmap) free.set(v);
            commons.pop_back();
            placed.pop_back();
            if (nodes > cap) return false;
        }
        return false;
    }
};

} // namespace

Result<FtFactor> ft_factor_surplus(const GraphCollection& c, const FactorSpec& spec,
                                   const PipelineConfig& config, Rng& rng,
                                   const std::vector<int>* allowed_colours,
                                   const Bitset* allowed_vertices, int copies_needed) {
    using R = Result<FtFactor>;
    int r = spec.r();
    int t = spec.t;
    std::vector<int> colours = allowed_colours ? *allowed_colours : colour_range(c);
    Bitset verts(c.n);
    if (allowed_vertices)
        verts = *allowed_vertices;
    else
        verts.set_all();
    if (copies_needed < 0) copies_needed = verts.count() / r;
    if (verts.count() != copies_needed * r)
        return R::fail(FailKind::bad_input, "", "vertex pool is not r * copies");
    if (static_cast<int>(colours.size()) < t * copies_needed)
        return R::fail(FailKind::bad_input, "", "not enough colours");
    if (copies_needed == 0) return FtFactor{};

    auto orbits = automorphism_vertex_orbits(spec.f);
    std::vector<int> orbit_reps;
    {
        std::set<int> taken;
        for (int v = 0; v < r; ++v)
            if (taken.insert(orbits[v]).second) orbit_reps.push_back(v);
    }

    // blocks of k..2k copies; with a thin colour surplus the per-block
    // common-colour demand t*k is unaffordable, so fall back to single copies
    std::vector<int> chunks;
    {
        int k = std::max(1, config.k);
        if (static_cast<double>(colours.size()) < 1.25 * t * copies_needed) k = 1;
        int left = copies_needed;
        while (left >= 2 * k) {
            chunks.push_back(k);
            left -= k;
        }
        if (left > 0) chunks.push_back(left); // in [k, 2k-1]
    }
    int k_min_copies = *std::min_element(chunks.begin(), chunks.end());

    Failure last{FailKind::retries_exhausted, "", "no attempt ran"};
    for (int attempt = 0; attempt < config.retries; ++attempt) {
        std::vector<int> block_sizes;
        for (int q : chunks) block_sizes.push_back(q * r);
        Result<PartitionPlan> plan = Result<PartitionPlan>::fail(FailKind::retries_exhausted, "", "");
        for (double slack = config.degree_slack;; slack += 0.15) {
            plan = good_partition_on(c, verts.to_vector(), block_sizes, k_min_copies * r, slack,
                                     config, rng);
            if (plan.ok() || slack >= 0.95) break;
        }
        if (!plan.ok()) {
            last = {plan.failure().kind, "block partition", plan.failure().detail};
            continue;
        }

        FtFactor factor;
        Bitset used_colours(c.colour_count());
        bool all_blocks_ok = true;
        for (std::size_t b = 0; b < chunks.size() && all_blocks_ok; ++b) {
            Bitset pool = Bitset::of(c.colour_count(), colours);
            pool.and_not(used_colours);
            for (int bad : plan->bad_colours[b]) pool.reset(bad);
            int needed = t * chunks[b];
            if (pool.count() < needed) {
                all_blocks_ok = false;
                last = {FailKind::retries_exhausted, "block " + std::to_string(b),
                        "colour pool exhausted"};
                break;
            }
            Bitset block_mask = Bitset::of(c.n, plan->parts[b]);
            Graph host = union_graph(c, pool.to_vector(), block_mask);
            BlockFactorSearch search(c, spec.f, needed, config.factor_enum_cap, orbit_reps,
                                     std::move(host), block_mask, pool);
            if (!search.rec(chunks[b])) {
                all_blocks_ok = false;
                last = {FailKind::retries_exhausted, "block " + std::to_string(b),
                        "no factor with " + std::to_string(needed) + " common colours (" +
                            std::to_string(search.nodes) + " nodes)"};
                break;
            }
            // hand each copy t fresh colours from the common set
            Bitset common = search.commons.back();
            std::vector<int> common_list = common.to_vector();
            for (std::size_t i = 0; i < search.placed.size(); ++i) {
                FtCopy cp = search.placed[i];
                cp.edge_colours.clear();
                if (t == 1) {
                    cp.edge_colours.assign(spec.edges(), common_list[i]);
                    used_colours.set(common_list[i]);
                } else {
                    for (int s = 0; s < t; ++s) {
                        cp.edge_colours.push_back(common_list[i * t + s]);
                        used_colours.set(common_list[i * t + s]);
                    }
                }
                factor.copies.push_back(std::move(cp));
            }
        }
        if (all_blocks_ok) return factor;
    }
    return R::fail(last.kind, last.stage,
                   last.detail + " (after " + std::to_string(config.retries) + " attempts)");
}

Result<FtCopy> t_copy_with_colour(const GraphCollection& c, const FactorSpec& spec,
                                  int target_colour, const Bitset& allowed_vertices,
                                  const std::vector<int>& allowed_other_colours,
                                  const PipelineConfig& config) {
    using R = Result<FtCopy>;
    int t = spec.t;
    for (int j : allowed_other_colours)
        if (j == target_colour)
            return R::fail(FailKind::bad_input, "", "target colour inside the other-colour pool");

    if (t == 1) {
        auto vmap = find_subgraph(c.colour(target_colour), spec.f, {}, config.search_budget,
                                  &allowed_vertices);
        if (!vmap.ok())
            return R::fail(FailKind::not_found, "",
                           "no copy inside colour " + std::to_string(target_colour));
        FtCopy cp;
        cp.vertices = *vmap;
        cp.edge_colours.assign(spec.edges(), target_colour);
        return cp;
    }

    // t = e(F): threshold graph over the other colours, pinned through an edge
    // of the target colour
    Graph base = threshold_graph(c, std::min<int>(t, allowed_other_colours.size()),
                                 allowed_other_colours, allowed_vertices);
    auto f_edges = spec.f.edges();
    auto target_edges = c.colour(target_colour).induced(allowed_vertices).edges();
    for (auto [x, y] : target_edges) {
        Graph host = base;
        host.add_edge(x, y);
        for (auto [a, b] : f_edges) {
            for (auto [pa, pb] : {std::pair{x, y}, std::pair{y, x}}) {
                auto vmap =
                    find_subgraph(host, spec.f, {{a, pa}, {b, pb}}, config.search_budget,
                                  &allowed_vertices);
                if (!vmap.ok()) continue;
                // colour: target on (a,b), distinct pool colours elsewhere
                FtCopy cp;
                cp.vertices = *vmap;
                cp.edge_colours.assign(f_edges.size(), -1);
                Bitset used(c.colour_count());
                bool ok = true;
                for (std::size_t s = 0; s < f_edges.size() && ok; ++s) {
                    auto [fa, fb] = f_edges[s];
                    if ((fa == a && fb == b) || (fa == b && fb == a)) {
                        cp.edge_colours[s] = target_colour;
                        continue;
                    }
                    int iu = (*vmap)[fa], iv = (*vmap)[fb];
                    int chosen = -1;
                    for (int jc : allowed_other_colours) {
                        if (used.test(jc)) continue;
                        if (c.colour(jc).has_edge(iu, iv)) {
                            chosen = jc;
                            break;
                        }
                    }
                    if (chosen == -1) {
                        ok = false;
                        break;
                    }
                    used.set(chosen);
                    cp.edge_colours[s] = chosen;
                }
                if (ok) return cp;
            }
        }
    }
    return R::fail(FailKind::not_found, "",
                   "no pinned copy through an edge of colour " + std::to_string(target_colour));
}

Result<FtFactor> colour_covering_factor(const GraphCollection& c, const FactorSpec& spec,
                                        const std::vector<int>& targets,
                                        const Bitset& allowed_vertices,
                                        const std::vector<int>& allowed_other_colours,
                                        const PipelineConfig& config) {
    using R = Result<FtFactor>;
    FtFactor factor;
    Bitset free = allowed_vertices;
    std::vector<int> pool = allowed_other_colours;
    for (int j : targets) {
        auto cp = t_copy_with_colour(c, spec, j, free, pool, config);
        if (!cp.ok())
            return R::fail(cp.failure().kind, "colour " + std::to_string(j), cp.failure().detail);
        for (int v : cp->vertices) free.reset(v);
        for (int col : cp->edge_colours)
            if (col != j) pool.erase(std::remove(pool.begin(), pool.end(), col), pool.end());
        factor.copies.push_back(std::move(*cp));
    }
    return factor;
}

// ---------------------------------------------------------------------------
// five-step factor pipeline

namespace {

Result<FtFactor> ft_factor_attempt(const GraphCollection& c, const FactorSpec& spec,
                                   const PipelineConfig& config, Rng& rng) {
    using R = Result<FtFactor>;
    int r = spec.r();
    int t = spec.t;
    int n_cop = c.n / r;
    int m = c.colour_count();

    // enough absorber slots that the switching core can hold >= 1 reservoir
    // colour: (t*n1 - 2)/2 >= 1
    int n1 = std::max({static_cast<int>(std::lround(config.beta * n_cop / 2)), (4 + t - 1) / t, 1});
    int n3 = static_cast<int>(std::lround(config.gamma * n_cop));
    int n4 = static_cast<int>(std::lround(config.beta * n_cop));
    int n2 = n_cop - n1 - n3 - n4;
    bool degenerate = n2 < 1;
    if (degenerate) {
        n1 = n_cop;
        n2 = n3 = n4 = 0;
    }
    int ell = degenerate
                  ? 0
                  : std::max(0, std::min({static_cast<int>(std::lround(config.gamma * n_cop)),
                                          (t * n1 - 2) / 2, n1 * t - 1}));

    // Step 1: absorber copies with wide colour support
    Bitset used_verts(c.n);
    Bitset no_colours(m);
    std::vector<FtCopy> absorber_copies;
    BipartiteGraph bip(n1 * t, m);
    for (int i = 0; i < n1; ++i) {
        auto found = common_colour_F_copy(c, spec, used_verts, no_colours, config, rng);
        if (!found.ok())
            return R::fail(found.failure().kind, "step1: copy " + std::to_string(i),
                           found.failure().detail);
        auto& [vmap, j_set] = *found;
        FtCopy cp;
        cp.vertices = vmap;
        absorber_copies.push_back(cp);
        for (int v : vmap) used_verts.set(v);
        for (int j : j_set)
            for (int s = 0; s < t; ++s) bip.add(i * t + s, j);
    }
    Rng arng = rng.fork();
    auto tmpl = build_absorber(bip, ell, config, arng);
    if (!tmpl.ok()) return R::fail(tmpl.failure().kind, "step1: absorber", tmpl.failure().detail);

    int want_c = t * n4 + ell + (t - 1) * n3;
    if (static_cast<int>(tmpl->reservoir.size()) < want_c)
        return R::fail(FailKind::retries_exhausted, "step1: absorber",
                       "reservoir " + std::to_string(tmpl->reservoir.size()) +
                           " below required " + std::to_string(want_c));
    tmpl->reservoir.resize(want_c);

    Bitset in_a = Bitset::of(m, tmpl->fixed_colours);
    Bitset in_c = Bitset::of(m, tmpl->reservoir);
    Bitset used_colours(m);

    FtFactor factor;

    // Step 2: bulk surplus factor outside A u C
    Bitset rest(c.n);
    rest.set_all();
    rest.and_not(used_verts);
    Bitset v2(c.n), v3(c.n);
    if (n2 > 0 || n3 + n4 > 0) {
        std::vector<int> sizes;
        if (n2 > 0) sizes.push_back(r * n2);
        if (n3 + n4 > 0) sizes.push_back(r * (n3 + n4));
        auto plan = split_pool(c, rest.to_vector(), sizes, config, rng);
        if (!plan.ok())
            return R::fail(plan.failure().kind, "step2: vertex split", plan.failure().detail);
        int at = 0;
        if (n2 > 0) v2 = Bitset::of(c.n, plan->parts[at++]);
        if (n3 + n4 > 0) v3 = Bitset::of(c.n, plan->parts[at]);
    }

    if (n2 > 0) {
        std::vector<int> outside;
        for (int j = 0; j < m; ++j)
            if (!in_a.test(j) && !in_c.test(j)) outside.push_back(j);
        auto bulk = ft_factor_surplus(c, spec, config, rng, &outside, &v2, n2);
        if (!bulk.ok())
            return R::fail(bulk.failure().kind, "step2: bulk (" + bulk.failure().stage + ")",
                           bulk.failure().detail);
        for (auto& cp : bulk->copies) {
            for (int col : cp.edge_colours) used_colours.set(col);
            factor.copies.push_back(std::move(cp));
        }
    }

    // Step 3: exact cover of the leftover colours outside A u C
    Bitset v3_free = v3;
    if (n3 > 0) {
        std::vector<int> b_colours;
        for (int j = 0; j < m; ++j)
            if (!in_a.test(j) && !in_c.test(j) && !used_colours.test(j)) b_colours.push_back(j);
        if (static_cast<int>(b_colours.size()) != n3)
            return R::fail(FailKind::bad_input, "step3: cover",
                           "colour accounting broke: " + std::to_string(b_colours.size()) +
                               " leftovers for n3=" + std::to_string(n3));
        std::vector<int> c_pool;
        for (int j : tmpl->reservoir)
            if (!used_colours.test(j)) c_pool.push_back(j);
        auto cover = colour_covering_factor(c, spec, b_colours, v3_free, c_pool, config);
        if (!cover.ok())
            return R::fail(cover.failure().kind, "step3: cover (" + cover.failure().stage + ")",
                           cover.failure().detail);
        for (auto& cp : cover->copies) {
            for (int v : cp.vertices) v3_free.reset(v);
            for (int col : cp.edge_colours) used_colours.set(col);
            factor.copies.push_back(std::move(cp));
        }
    }

    // Step 4: reservoir tail
    if (n4 > 0) {
        std::vector<int> c_bar;
        for (int j : tmpl->reservoir)
            if (!used_colours.test(j)) c_bar.push_back(j);
        auto tail = ft_factor_surplus(c, spec, config, rng, &c_bar, &v3_free, n4);
        if (!tail.ok())
            return R::fail(tail.failure().kind, "step4: tail (" + tail.failure().stage + ")",
                           tail.failure().detail);
        for (auto& cp : tail->copies) {
            for (int col : cp.edge_colours) used_colours.set(col);
            factor.copies.push_back(std::move(cp));
        }
    }

    // Step 5: absorb the leftovers into the absorber copies
    std::vector<int> leftovers;
    for (int j = 0; j < m; ++j)
        if (!used_colours.test(j) && !in_a.test(j)) leftovers.push_back(j);
    if (static_cast<int>(leftovers.size()) != ell)
        return R::fail(FailKind::bad_input, "step5: absorb",
                       "leftover count " + std::to_string(leftovers.size()) + " != ell " +
                           std::to_string(ell));
    auto assignment = absorb(*tmpl, leftovers);
    if (!assignment.ok())
        return R::fail(assignment.failure().kind, "step5: absorb", assignment.failure().detail);
    for (int i = 0; i < n1; ++i) {
        FtCopy cp = absorber_copies[i];
        if (t == 1) {
            cp.edge_colours.assign(spec.edges(), (*assignment)[i]);
        } else {
            for (int s = 0; s < t; ++s) cp.edge_colours.push_back((*assignment)[i * t + s]);
        }
        factor.copies.push_back(std::move(cp));
    }

    auto violation =
        verify_transversal(c, ProblemTemplate::factor(spec.f, n_cop, t), factor.to_embedding(spec.f));
    if (violation) return R::fail(FailKind::bad_input, "verify", *violation);
    return factor;
}

} // namespace

Result<FtFactor> ft_factor(const GraphCollection& c, const FactorSpec& spec,
                           const PipelineConfig& config) {
    using R = Result<FtFactor>;
    config.validate();
    int r = spec.r();
    if (c.n % r != 0) return R::fail(FailKind::bad_input, "input", "r must divide the vertex count");
    int n_cop = c.n / r;
    if (c.colour_count() != spec.t * n_cop)
        return R::fail(FailKind::bad_input, "input",
                       "need exactly t*n colours, have " + std::to_string(c.colour_count()));

    Rng rng(Rng::derive(config.rng_seed, 0xFAC7));
    Failure last;
    int attempts = std::max(1, config.retries / 5);
    for (int a = 0; a < attempts; ++a) {
        Rng attempt_rng = rng.fork();
        auto res = ft_factor_attempt(c, spec, config, attempt_rng);
        if (res.ok()) return res;
        last = res.failure();
    }
    return R::fail(last.kind, last.stage,
                   last.detail + " (after " + std::to_string(attempts) + " pipeline attempts)");
}

// ---------------------------------------------------------------------------
// patterned factors

Result<FtFactor> patterned_copies_one_pattern(const GraphCollection& c, const Graph& f,
                                              const std::vector<int>& pattern, int count,
                                              const PipelineConfig& config, Rng& rng,
                                              const Bitset* allowed_vertices) {
    using R = Result<FtFactor>;
    int r = f.size();
    Bitset verts(c.n);
    if (allowed_vertices)
        verts = *allowed_vertices;
    else
        verts.set_all();
    if (verts.count() % r != 0)
        return R::fail(FailKind::bad_input, "", "vertex pool is not a multiple of r");
    if (count * r > verts.count()) return R::fail(FailKind::bad_input, "", "pool too small");

    // r-way degree-preserving split; F-vertex i lives in part i
    std::vector<int> sizes(r, verts.count() / r);
    auto plan = split_pool(c, verts.to_vector(), sizes, config, rng);
    if (!plan.ok()) return R::fail(plan.failure().kind, "vertex split", plan.failure().detail);
    std::vector<Bitset> domains;
    for (int i = 0; i < r; ++i) domains.push_back(Bitset::of(c.n, plan->parts[i]));

    FtFactor factor;
    Bitset free = verts;
    for (int i = 0; i < count; ++i) {
        auto vmap = find_pattern_copy(c, f, pattern, free, config.search_budget, {}, &domains);
        if (!vmap.ok())
            return R::fail(vmap.failure().kind, "copy " + std::to_string(i),
                           vmap.failure().detail);
        FtCopy cp;
        cp.vertices = *vmap;
        cp.edge_colours = pattern;
        for (int v : *vmap) free.reset(v);
        factor.copies.push_back(std::move(cp));
    }
    return factor;
}

namespace {

int count_matching_patterns(const GraphCollection& c, const Graph& f,
                            const std::vector<std::vector<int>>& patterns,
                            const std::vector<int>& vmap, std::vector<int>* out) {
    auto f_edges = f.edges();
    int count = 0;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        bool all = true;
        for (std::size_t s = 0; s < f_edges.size() && all; ++s) {
            auto [a, b] = f_edges[s];
            all = c.colour(patterns[p][s]).has_edge(vmap[a], vmap[b]);
        }
        if (all) {
            ++count;
            if (out) out->push_back(static_cast<int>(p));
        }
    }
    return count;
}

Result<FtFactor> patterned_attempt(const GraphCollection& c, const FactorSpec& spec,
                                   const std::vector<std::vector<int>>& patterns,
                                   const PipelineConfig& config, Rng& rng) {
    using R = Result<FtFactor>;
    int r = spec.r();
    int n_cop = static_cast<int>(patterns.size());

    int n1 = std::max(1, static_cast<int>(std::lround(config.beta * n_cop / 2)));
    if (n1 >= n_cop) n1 = std::max(1, n_cop / 3);
    if (n_cop == 1) n1 = 1;
    int ell = std::max(0, std::min(static_cast<int>(std::floor(config.gamma * n_cop)),
                                   (n1 - 2) / 2));
    int n4 = static_cast<int>(std::lround(config.beta * n_cop));
    int want_c = ell == 0 ? 0 : ell + n4;

    // Step 1: pattern-absorber copies
    Bitset used_verts(c.n);
    std::vector<FtCopy> absorber_copies;
    BipartiteGraph bip(n1, n_cop);
    std::vector<int> all_cols = colour_range(c);
    for (int i = 0; i < n1; ++i) {
        Bitset free(c.n);
        free.set_all();
        free.and_not(used_verts);
        int window = std::min(r * std::max(config.k, 2), free.count());
        int support_floor = std::max(1, static_cast<int>(std::ceil(config.beta_bar * n_cop)));
        std::vector<int> best;
        std::vector<int> best_pats;
        for (int attempt = 0; attempt < config.retries && best.empty(); ++attempt) {
            std::vector<int> win = rng.sample(free.to_vector(), window);
            std::sort(win.begin(), win.end());
            Bitset win_mask = Bitset::of(c.n, win);
            Graph host = union_graph(c, all_cols, win_mask);
            int best_count = -1;
            std::vector<int> best_local;
            enumerate_subgraph_embeddings(host, spec.f, {}, config.search_budget, &win_mask,
                                          [&](const std::vector<int>& vmap) {
                                              int cnt = count_matching_patterns(c, spec.f, patterns,
                                                                                vmap, nullptr);
                                              if (cnt > best_count) {
                                                  best_count = cnt;
                                                  best_local = vmap;
                                              }
                                              return true;
                                          });
            if (best_count >= support_floor) {
                best = best_local;
                count_matching_patterns(c, spec.f, patterns, best, &best_pats);
            }
        }
        if (best.empty())
            return R::fail(FailKind::retries_exhausted, "step1: copy " + std::to_string(i),
                           "no copy matching enough patterns");
        FtCopy cp;
        cp.vertices = best;
        absorber_copies.push_back(cp);
        for (int v : best) used_verts.set(v);
        for (int p : best_pats) bip.add(i, p);
    }
    Rng arng = rng.fork();
    auto tmpl = build_absorber(bip, ell, config, arng);
    if (!tmpl.ok()) return R::fail(tmpl.failure().kind, "step1: absorber", tmpl.failure().detail);
    if (static_cast<int>(tmpl->reservoir.size()) < want_c)
        return R::fail(FailKind::retries_exhausted, "step1: absorber",
                       "reservoir " + std::to_string(tmpl->reservoir.size()) +
                           " below required " + std::to_string(want_c));
    tmpl->reservoir.resize(want_c);

    Bitset in_a = Bitset::of(n_cop, tmpl->fixed_colours);
    Bitset in_c = Bitset::of(n_cop, tmpl->reservoir);

    // Steps 2-4 merged: patterns have no surplus, so cover the non-absorber
    // patterns one pinned copy each; reservoir patterns may be skipped up to
    // the absorbable count
    std::vector<std::pair<int, FtCopy>> placed; // (pattern, copy)
    Bitset free(c.n);
    free.set_all();
    free.and_not(used_verts);
    for (int p = 0; p < n_cop; ++p) {
        if (in_a.test(p) || in_c.test(p)) continue;
        auto vmap = find_pattern_copy(c, spec.f, patterns[p], free, config.search_budget);
        if (!vmap.ok())
            return R::fail(vmap.failure().kind, "step2: pattern " + std::to_string(p),
                           vmap.failure().detail);
        FtCopy cp;
        cp.vertices = *vmap;
        cp.edge_colours = patterns[p];
        for (int v : *vmap) free.reset(v);
        placed.push_back({p, std::move(cp)});
    }
    int needed_from_c = static_cast<int>(tmpl->reservoir.size()) - ell;
    std::vector<int> skipped;
    for (int p : tmpl->reservoir) {
        if (needed_from_c == 0) {
            skipped.push_back(p);
            continue;
        }
        auto vmap = find_pattern_copy(c, spec.f, patterns[p], free, config.search_budget);
        if (!vmap.ok()) {
            skipped.push_back(p);
            if (static_cast<int>(skipped.size()) > ell)
                return R::fail(FailKind::retries_exhausted, "step4: pattern " + std::to_string(p),
                               "more reservoir patterns failed than the absorber can take");
            continue;
        }
        FtCopy cp;
        cp.vertices = *vmap;
        cp.edge_colours = patterns[p];
        for (int v : *vmap) free.reset(v);
        placed.push_back({p, std::move(cp)});
        --needed_from_c;
    }
    if (needed_from_c != 0 || static_cast<int>(skipped.size()) != ell)
        return R::fail(FailKind::retries_exhausted, "step4",
                       "reservoir accounting: " + std::to_string(needed_from_c) + " missing, " +
                           std::to_string(skipped.size()) + " skipped vs ell " +
                           std::to_string(ell));

    // Step 5: absorb the skipped patterns
    auto assignment = absorb(*tmpl, skipped);
    if (!assignment.ok())
        return R::fail(assignment.failure().kind, "step5: absorb", assignment.failure().detail);
    for (int i = 0; i < n1; ++i) {
        FtCopy cp = absorber_copies[i];
        cp.edge_colours = patterns[(*assignment)[i]];
        placed.push_back({(*assignment)[i], std::move(cp)});
    }

    // order copies by pattern index for the patterned template
    std::sort(placed.begin(), placed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    FtFactor factor;
    for (auto& [p, cp] : placed) factor.copies.push_back(std::move(cp));

    auto violation = verify_transversal(c, ProblemTemplate::patterned(spec.f, patterns),
                                        factor.to_embedding(spec.f));
    if (violation) return R::fail(FailKind::bad_input, "verify", *violation);
    return factor;
}

} // namespace

Result<FtFactor> patterned_factor(const GraphCollection& c, const FactorSpec& spec,
                                  const std::vector<std::vector<int>>& patterns,
                                  const PipelineConfig& config) {
    using R = Result<FtFactor>;
    config.validate();
    int r = spec.r();
    int t = spec.edges();
    int n_cop = static_cast<int>(patterns.size());
    if (c.n != r * n_cop)
        return R::fail(FailKind::bad_input, "input", "need r * n vertices for n patterns");
    if (c.colour_count() != t * n_cop)
        return R::fail(FailKind::bad_input, "input", "patterns must partition t*n colours");
    Bitset seen(c.colour_count());
    for (const auto& pat : patterns) {
        if (static_cast<int>(pat.size()) != t)
            return R::fail(FailKind::bad_input, "input", "pattern length != e(F)");
        for (int col : pat) {
            if (col < 0 || col >= c.colour_count() || seen.test(col))
                return R::fail(FailKind::bad_input, "input",
                               "patterns must partition the colour set");
            seen.set(col);
        }
    }

    Rng rng(Rng::derive(config.rng_seed, 0xBA77E12));
    Failure last;
    int attempts = std::max(1, config.retries / 5);
    for (int a = 0; a < attempts; ++a) {
        Rng attempt_rng = rng.fork();
        auto res = patterned_attempt(c, spec, patterns, config, attempt_rng);
        if (res.ok()) return res;
        last = res.failure();
    }
    return R::fail(last.kind, last.stage,
                   last.detail + " (after " + std::to_string(attempts) + " pipeline attempts)");
}

} // namespace transversal
