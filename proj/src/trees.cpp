#include "transversal/trees.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "transversal/absorber.hpp"
#include "transversal/partition.hpp"

namespace transversal {

namespace {

std::vector<int> all_colours(const GraphCollection& c) {
    std::vector<int> v(c.colour_count());
    for (int i = 0; i < c.colour_count(); ++i) v[i] = i;
    return v;
}

Bitset all_vertices(const GraphCollection& c) {
    Bitset b(c.n);
    b.set_all();
    return b;
}

struct EmbedState {
    const Graph& host;
    const Tree& t;
    Bitset allowed; // free hosts
    std::vector<int> map;
    long long budget;
    long long nodes = 0;
    bool out_of_budget = false;

    std::vector<int> parent;
    std::vector<int> order; // preorder, children largest-subtree-first

    EmbedState(const Graph& h, const Tree& tree, const Bitset* allow, long long b)
        : host(h), t(tree), allowed(h.size()), map(tree.g.size(), -1), budget(b) {
        if (allow)
            allowed = *allow;
        else
            allowed.set_all();
    }

    void root_at(int root) {
        int n = t.g.size();
        parent.assign(n, -1);
        std::vector<int> sub(n, 1);
        std::vector<std::vector<int>> kids(n);
        std::vector<int> bfs{root};
        Bitset seen(n);
        seen.set(root);
        for (std::size_t i = 0; i < bfs.size(); ++i) {
            int v = bfs[i];
            t.g.neighbours(v).for_each([&](int w) {
                if (!seen.test(w)) {
                    seen.set(w);
                    parent[w] = v;
                    kids[v].push_back(w);
                    bfs.push_back(w);
                }
            });
        }
        for (auto it = bfs.rbegin(); it != bfs.rend(); ++it)
            if (parent[*it] != -1) sub[parent[*it]] += sub[*it];
        for (int v : t.verts)
            std::stable_sort(kids[v].begin(), kids[v].end(),
                             [&](int a, int b) { return sub[a] > sub[b]; });
        order.clear();
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
        }
    }

    // complete backtracking over the fixed preorder
    bool place_from(std::size_t at) {
        if (at == order.size()) return true;
        if (out_of_budget) return false;
        int v = order[at];
        Bitset cand = host.neighbours(map[parent[v]]) & allowed;
        // most-constrained first: fewest free neighbours
        std::vector<std::pair<int, int>> ranked;
        cand.for_each([&](int w) { ranked.push_back({host.degree_in(w, allowed), w}); });
        std::sort(ranked.begin(), ranked.end());
        for (auto [key, w] : ranked) {
            if (++nodes > budget) {
                out_of_budget = true;
                return false;
            }
            map[v] = w;
            allowed.reset(w);
            if (place_from(at + 1)) return true;
            allowed.set(w);
            map[v] = -1;
        }
        return false;
    }
};

} // namespace

Result<std::vector<int>> embed_tree_rooted(const Graph& host, const Tree& t, int root,
                                           int root_image, const Bitset* allowed,
                                           long long budget) {
    using R = Result<std::vector<int>>;
    if (!t.contains(root)) return R::fail(FailKind::bad_input, "", "root not in tree");
    if (root_image < 0 || root_image >= host.size())
        return R::fail(FailKind::bad_input, "", "root image out of range");
    EmbedState st(host, t, allowed, budget);
    st.root_at(root);
    st.map[root] = root_image;
    st.allowed.reset(root_image);
    if (st.place_from(1)) return st.map;
    if (st.out_of_budget)
        return R::fail(FailKind::budget_exhausted, "", "embedding budget exhausted");
    return R::fail(FailKind::not_found, "", "no embedding with the requested root image");
}

Result<std::vector<int>> embed_tree_anywhere(const Graph& host, const Tree& t, int root,
                                             const Bitset* allowed, long long budget) {
    using R = Result<std::vector<int>>;
    Bitset cand(host.size());
    if (allowed)
        cand = *allowed;
    else
        cand.set_all();
    long long per = std::max<long long>(budget / std::max(1, cand.count()), 1024);
    for (int v = cand.next(0); v != -1; v = cand.next(v + 1)) {
        auto r = embed_tree_rooted(host, t, root, v, allowed, per);
        if (r.ok()) return r;
    }
    return R::fail(FailKind::not_found, "", "no embedding at any root image");
}

Result<TreeEmbedding> embed_tree_rainbow_surplus(const GraphCollection& c, const Tree& t, int root,
                                                 int root_image, int min_count,
                                                 const PipelineConfig& config,
                                                 const std::vector<int>* allowed_colours,
                                                 const Bitset* allowed_vertices) {
    using R = Result<TreeEmbedding>;
    std::vector<int> colours = allowed_colours ? *allowed_colours : all_colours(c);
    Bitset verts = allowed_vertices ? *allowed_vertices : all_vertices(c);
    if (min_count < 1 || min_count > static_cast<int>(colours.size()))
        return R::fail(FailKind::bad_input, "", "min_count out of range");

    Bitset host_verts = verts;
    host_verts.set(root_image);
    Graph host = threshold_graph(c, min_count, colours, host_verts);
    auto emb = embed_tree_rooted(host, t, root, root_image, &verts, config.embed_budget);
    if (!emb.ok())
        return R::fail(FailKind::embed_failed, "",
                       "uncoloured embedding failed: " + emb.failure().detail);

    TreeEmbedding out;
    out.vertex_map = *emb;
    Bitset used(c.colour_count());
    for (auto [u, v] : t.edge_list()) {
        int iu = out.vertex_map[u], iv = out.vertex_map[v];
        int chosen = -1;
        for (int j : colours) {
            if (used.test(j)) continue;
            if (c.colour(j).has_edge(iu, iv)) {
                chosen = j;
                break;
            }
        }
        if (chosen == -1)
            return R::fail(FailKind::embed_failed, "",
                           "greedy colouring stuck at edge (" + std::to_string(u) + "," +
                               std::to_string(v) + ")");
        used.set(chosen);
        out.edge_colours.push_back({{u, v}, chosen});
    }
    return out;
}

Result<TreeEmbedding> embed_tree_rainbow_few_surplus(const GraphCollection& c, const Tree& t,
                                                     int root, int root_image,
                                                     const PipelineConfig& config, Rng& rng,
                                                     const std::vector<int>* allowed_colours,
                                                     const Bitset* allowed_vertices) {
    using R = Result<TreeEmbedding>;
    std::vector<int> colours = allowed_colours ? *allowed_colours : all_colours(c);
    Bitset verts = allowed_vertices ? *allowed_vertices : all_vertices(c);
    verts.reset(root_image);
    if (static_cast<int>(colours.size()) < t.edges())
        return R::fail(FailKind::bad_input, "", "fewer colours than tree edges");
    if (verts.count() < t.size() - 1)
        return R::fail(FailKind::bad_input, "", "not enough vertices");
    if (t.edges() == 0) {
        TreeEmbedding out;
        out.vertex_map.assign(t.g.size(), -1);
        out.vertex_map[root] = root_image;
        return out;
    }

    int block = std::max(2, static_cast<int>(std::lround(config.mu * t.size())));
    auto blocks = decompose_tree(t, std::min(block, t.size()), root);
    if (!blocks.ok()) return R::fail(blocks.failure().kind, "", blocks.failure().detail);

    // vertex pool partition: one part per block sized e(block), slop part last
    std::vector<int> sizes;
    for (const Tree& b : *blocks) sizes.push_back(b.edges());
    int slop = verts.count() - (t.size() - 1);
    if (slop > 0) sizes.push_back(slop);
    Result<PartitionPlan> plan = Result<PartitionPlan>::fail(FailKind::retries_exhausted, "", "");
    for (double slack = config.partition_slack; slack < 0.95; slack += 0.15) {
        plan = split_preserving_degrees(c, verts.to_vector(), sizes, slack, config, rng);
        if (plan.ok()) break;
    }
    if (!plan.ok())
        return R::fail(plan.failure().kind, "", "vertex split failed: " + plan.failure().detail);

    TreeEmbedding out;
    out.vertex_map.assign(t.g.size(), -1);
    out.vertex_map[root] = root_image;
    Bitset remaining = Bitset::of(c.colour_count(), colours);

    for (std::size_t bi = 0; bi < blocks->size(); ++bi) {
        const Tree& b = (*blocks)[bi];
        // attach vertex: already embedded (root for the first block)
        int attach = -1;
        for (int v : b.verts)
            if (out.vertex_map[v] != -1) attach = v;
        if (attach == -1)
            return R::fail(FailKind::embed_failed, "block " + std::to_string(bi),
                           "no embedded attach vertex");
        if (b.edges() == 0) continue;
        Bitset part = Bitset::of(c.n, plan->parts[bi]);
        std::vector<int> pool = remaining.to_vector();
        int mc = std::min<int>(b.edges(), static_cast<int>(pool.size()));
        auto sub = embed_tree_rainbow_surplus(c, b, attach, out.vertex_map[attach], mc, config,
                                              &pool, &part);
        if (!sub.ok())
            return R::fail(sub.failure().kind, "block " + std::to_string(bi),
                           sub.failure().detail);
        for (int v : b.verts) out.vertex_map[v] = sub->vertex_map[v];
        for (auto& ec : sub->edge_colours) {
            remaining.reset(ec.second);
            out.edge_colours.push_back(ec);
        }
    }
    return out;
}

Result<TreeEmbedding> greedy_colour_cover_tree(const GraphCollection& c, const Tree& t, int root,
                                               int root_image, const std::vector<int>* colours_in,
                                               const Bitset* allowed_vertices) {
    using R = Result<TreeEmbedding>;
    std::vector<int> colours = colours_in ? *colours_in : all_colours(c);
    Bitset free = allowed_vertices ? *allowed_vertices : all_vertices(c);
    if (static_cast<int>(colours.size()) != t.edges())
        return R::fail(FailKind::bad_input, "", "need exactly e(T) colours, got " +
                                                    std::to_string(colours.size()));
    TreeEmbedding out;
    out.vertex_map.assign(t.g.size(), -1);
    out.vertex_map[root] = root_image;
    free.reset(root_image);

    auto order = leaf_removal_order(t, root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [ti, parent] = order[i];
        int colour = colours[i];
        int pimg = out.vertex_map[parent];
        Bitset cand = c.colour(colour).neighbours(pimg) & free;
        int img = cand.next(0);
        if (img == -1)
            return R::fail(FailKind::embed_failed, "",
                           "step " + std::to_string(i + 1) + ": no unused neighbour of vertex " +
                               std::to_string(pimg) + " in colour " + std::to_string(colour) +
                               " (precondition violated)");
        out.vertex_map[ti] = img;
        free.reset(img);
        int u = std::min(ti, parent), v = std::max(ti, parent);
        out.edge_colours.push_back({{u, v}, colour});
    }
    return out;
}

// ---------------------------------------------------------------------------
// five-step pipeline

namespace {

struct Ledger {
    Bitset used;
    explicit Ledger(int m) : used(m) {}
    void spend(const TreeEmbedding& e) {
        for (auto& ec : e.edge_colours) used.set(ec.second);
    }
};

Result<RainbowEmbedding> pipeline_attempt(const GraphCollection& c, const Tree& t,
                                          const PipelineConfig& config, Rng& rng) {
    using R = Result<RainbowEmbedding>;
    int n = c.n;
    int m = c.colour_count();

    int m1 = std::clamp(static_cast<int>(std::lround(config.beta * n)), 1, std::max(1, n / 10));
    int m3 = std::clamp(static_cast<int>(std::lround(config.gamma * n)), 1, std::max(1, n / 10));
    bool degenerate = 10 * std::max(m1, m3) > n;

    Tree t1, t2, t3, t4;
    if (!degenerate) {
        auto four = split_four(t, m1, m3, m1);
        if (!four.ok()) {
            degenerate = true;
        } else {
            t1 = (*four)[0];
            t2 = (*four)[1];
            t3 = (*four)[2];
            t4 = (*four)[3];
        }
    }
    if (degenerate) {
        // tiny instances: absorber piece + exact cover of the rest
        int ms = std::max(1, std::min(m1, t.size() / 3));
        if (3 * ms > t.size())
            return R::fail(FailKind::bad_input, "split",
                           "tree too small to carve an absorber piece");
        auto two = split_tree(t, t.verts.front(), ms);
        if (!two.ok()) return R::fail(two.failure().kind, "split", two.failure().detail);
        t3 = two->first;
        t1 = two->second;
        t2 = Tree{Graph(t.g.size()), {}};
        t4 = Tree{Graph(t.g.size()), {}};
    }

    // the core needs max(2*ell, ell+2) of T1's e(T1) slots; keep a margin of 2
    int ell = degenerate ? 0
                         : std::max(0, std::min(static_cast<int>(std::floor(config.gamma * n)),
                                                (t1.edges() - 2) / 2));

    // Step 1: colour absorber on T1
    Rng arng = rng.fork();
    UncolouredEmbedder embedder = [&](const Graph& host, const Graph& h) {
        auto ht = Tree::from_graph(h);
        if (!ht.ok()) return Result<std::vector<int>>::fail(FailKind::bad_input, "", "not a tree");
        return embed_tree_anywhere(host, *ht, 0, nullptr, config.embed_budget);
    };
    Graph h1 = t.g.relabelled(t1.verts);
    auto ca = build_colour_absorber(c, h1, ell, embedder, config, arng);
    if (!ca.ok()) return R::fail(ca.failure().kind, "step1: absorber", ca.failure().detail);

    // reservoir trim: |C| = e(T4) + ell
    int want_c = t4.edges() + ell;
    if (static_cast<int>(ca->tmpl.reservoir.size()) < want_c)
        return R::fail(FailKind::retries_exhausted, "step1: absorber",
                       "reservoir " + std::to_string(ca->tmpl.reservoir.size()) +
                           " below required " + std::to_string(want_c));
    ca->tmpl.reservoir.resize(want_c);

    std::vector<int> vertex_map(t.g.size(), -1);
    for (std::size_t i = 0; i < t1.verts.size(); ++i)
        vertex_map[t1.verts[i]] = ca->vertex_map[i];

    Ledger ledger(m);
    Bitset in_a = Bitset::of(m, ca->tmpl.fixed_colours);
    Bitset in_c = Bitset::of(m, ca->tmpl.reservoir);

    Bitset v1 = Bitset::of(n, std::vector<int>());
    for (int v : t1.verts) v1.set(vertex_map[v]);

    std::vector<std::pair<std::pair<int, int>, int>> collected;

    // Step 2: bulk of the colours outside A u C into T2
    Bitset rest = all_vertices(c);
    rest.and_not(v1);
    Bitset v2(n), v3(n);
    if (!degenerate) {
        std::vector<int> sizes{t2.edges(), t3.edges() + t4.edges()};
        Result<PartitionPlan> plan =
            Result<PartitionPlan>::fail(FailKind::retries_exhausted, "", "");
        for (double slack = config.partition_slack; slack < 0.95; slack += 0.15) {
            plan = split_preserving_degrees(c, rest.to_vector(), sizes, slack, config, rng);
            if (plan.ok()) break;
        }
        if (!plan.ok()) return R::fail(plan.failure().kind, "step2: vertex split",
                                       plan.failure().detail);
        v2 = Bitset::of(n, plan->parts[0]);
        v3 = Bitset::of(n, plan->parts[1]);
    } else {
        v3 = rest;
    }

    if (t2.edges() > 0) {
        std::vector<int> outside;
        for (int j = 0; j < m; ++j)
            if (!in_a.test(j) && !in_c.test(j)) outside.push_back(j);
        int attach = -1;
        for (int v : t2.verts)
            if (vertex_map[v] != -1) attach = v;
        auto e2 = embed_tree_rainbow_few_surplus(c, t2, attach, vertex_map[attach], config, rng,
                                                 &outside, &v2);
        if (!e2.ok()) return R::fail(e2.failure().kind, "step2: bulk embedding",
                                     e2.failure().detail);
        for (int v : t2.verts) vertex_map[v] = e2->vertex_map[v];
        ledger.spend(*e2);
        for (auto& ec : e2->edge_colours) collected.push_back(ec);
    }

    // Step 3: exact cover of the remaining colours outside A u C on T3
    Bitset v3_free = v3;
    if (t3.edges() > 0) {
        std::vector<int> b_colours;
        for (int j = 0; j < m; ++j)
            if (!in_a.test(j) && !in_c.test(j) && !ledger.used.test(j)) b_colours.push_back(j);
        if (static_cast<int>(b_colours.size()) != t3.edges())
            return R::fail(FailKind::bad_input, "step3: exact cover",
                           "colour accounting broke: " + std::to_string(b_colours.size()) +
                               " leftover for " + std::to_string(t3.edges()) + " edges");
        int attach = -1;
        for (int v : t3.verts)
            if (vertex_map[v] != -1) attach = v;
        auto e3 = greedy_colour_cover_tree(c, t3, attach, vertex_map[attach], &b_colours, &v3_free);
        if (!e3.ok()) return R::fail(e3.failure().kind, "step3: exact cover",
                                     e3.failure().detail);
        for (int v : t3.verts)
            if (v != attach) {
                vertex_map[v] = e3->vertex_map[v];
                v3_free.reset(e3->vertex_map[v]);
            }
        ledger.spend(*e3);
        for (auto& ec : e3->edge_colours) collected.push_back(ec);
    }

    // Step 4: T4 from the reservoir
    if (t4.edges() > 0) {
        std::vector<int> c_colours;
        for (int j : ca->tmpl.reservoir)
            if (!ledger.used.test(j)) c_colours.push_back(j);
        int attach = -1;
        for (int v : t4.verts)
            if (vertex_map[v] != -1) attach = v;
        auto e4 = embed_tree_rainbow_few_surplus(c, t4, attach, vertex_map[attach], config, rng,
                                                 &c_colours, &v3_free);
        if (!e4.ok()) return R::fail(e4.failure().kind, "step4: reservoir embedding",
                                     e4.failure().detail);
        for (int v : t4.verts) vertex_map[v] = e4->vertex_map[v];
        ledger.spend(*e4);
        for (auto& ec : e4->edge_colours) collected.push_back(ec);
    }

    // Step 5: absorb the leftovers into T1
    std::vector<int> leftovers;
    for (int j = 0; j < m; ++j)
        if (!ledger.used.test(j) && !in_a.test(j)) leftovers.push_back(j);
    if (static_cast<int>(leftovers.size()) != ell)
        return R::fail(FailKind::bad_input, "step5: absorb",
                       "leftover count " + std::to_string(leftovers.size()) + " != ell " +
                           std::to_string(ell));
    auto colours1 = colour_absorber_colours(*ca, leftovers);
    if (!colours1.ok()) return R::fail(colours1.failure().kind, "step5: absorb",
                                       colours1.failure().detail);
    auto t1_edges = t1.edge_list();
    for (std::size_t s = 0; s < t1_edges.size(); ++s)
        collected.push_back({t1_edges[s], (*colours1)[s]});

    // assemble and verify
    RainbowEmbedding emb;
    emb.vertex_map = vertex_map;
    auto tedges = t.edge_list();
    emb.edge_colours.assign(tedges.size(), -1);
    for (auto& [edge, colour] : collected) {
        auto it = std::lower_bound(tedges.begin(), tedges.end(), edge);
        if (it == tedges.end() || *it != edge)
            return R::fail(FailKind::bad_input, "assemble", "unknown edge in records");
        emb.edge_colours[it - tedges.begin()] = colour;
    }
    auto violation = verify_transversal(c, ProblemTemplate::whole_graph(t.g), emb);
    if (violation)
        return R::fail(FailKind::bad_input, "verify", *violation);
    return emb;
}

} // namespace

Result<RainbowEmbedding> rainbow_spanning_tree(const GraphCollection& c, const Graph& tree,
                                               const PipelineConfig& config) {
    using R = Result<RainbowEmbedding>;
    config.validate();
    auto t = Tree::from_graph(tree);
    if (!t.ok()) return R::fail(FailKind::bad_input, "input", t.failure().detail);
    if (tree.size() != c.n)
        return R::fail(FailKind::bad_input, "input", "tree must span the vertex set");
    if (c.colour_count() != c.n - 1)
        return R::fail(FailKind::bad_input, "input", "need exactly n-1 colours");

    Rng rng(Rng::derive(config.rng_seed, 0x7EEE));
    Failure last;
    int attempts = std::max(1, config.retries / 5);
    for (int a = 0; a < attempts; ++a) {
        Rng attempt_rng = rng.fork();
        auto r = pipeline_attempt(c, *t, config, attempt_rng);
        if (r.ok()) return r;
        last = r.failure();
    }
    return R::fail(last.kind, last.stage,
                   last.detail + " (after " + std::to_string(attempts) + " pipeline attempts)");
}

} // namespace transversal
