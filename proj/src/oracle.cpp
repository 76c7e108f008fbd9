#include "transversal/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "transversal/bipartite.hpp"

namespace transversal {

namespace {

Graph disjoint_copies(const Graph& f, int copies) {
    int r = f.size();
    Graph h(r * copies);
    auto fe = f.edges();
    for (int c = 0; c < copies; ++c)
        for (auto [u, v] : fe) h.add_edge(c * r + u, c * r + v);
    return h;
}

} // namespace

ProblemTemplate ProblemTemplate::whole_graph(Graph h) {
    ProblemTemplate t;
    t.f = h;
    t.h = std::move(h);
    t.copy_count = 1;
    t.mode = TransversalMode::rainbow;
    return t;
}

ProblemTemplate ProblemTemplate::factor(const Graph& f, int copies, int t) {
    if (t != 1 && t != f.edge_count())
        throw std::invalid_argument("factor template: t must be 1 or e(F)");
    ProblemTemplate p;
    p.f = f;
    p.copy_count = copies;
    p.h = disjoint_copies(f, copies);
    p.mode = (t == 1) ? TransversalMode::ft_mono : TransversalMode::rainbow;
    return p;
}

ProblemTemplate ProblemTemplate::perfect_matching(int n) {
    if (n % 2) throw std::invalid_argument("perfect matching needs even n");
    return factor(Graph::path(2), n / 2, 1);
}

ProblemTemplate ProblemTemplate::hamilton_cycle(int n) { return whole_graph(Graph::cycle(n)); }

ProblemTemplate ProblemTemplate::patterned(const Graph& f, std::vector<std::vector<int>> patterns) {
    ProblemTemplate p;
    p.f = f;
    p.copy_count = static_cast<int>(patterns.size());
    p.h = disjoint_copies(f, p.copy_count);
    p.mode = TransversalMode::pattern;
    for (const auto& pat : patterns)
        if (static_cast<int>(pat.size()) != f.edge_count())
            throw std::invalid_argument("pattern length must equal e(F)");
    p.patterns = std::move(patterns);
    return p;
}

std::vector<int> automorphism_vertex_orbits(const Graph& f) {
    int r = f.size();
    std::vector<int> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> perm(r, -1);
    std::vector<bool> used(r, false);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == r) {
            for (int i = 0; i < r; ++i) {
                int a = find(i), b = find(perm[i]);
                if (a != b) parent[a] = b;
            }
            return;
        }
        for (int w = 0; w < r; ++w) {
            if (used[w] || f.degree(w) != f.degree(v)) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (f.has_edge(u, v) != f.has_edge(perm[u], w)) ok = false;
            if (!ok) continue;
            perm[v] = w;
            used[w] = true;
            self(self, v + 1);
            used[w] = false;
            perm[v] = -1;
        }
    };
    rec(rec, 0);
    std::vector<int> orbit(r);
    for (int i = 0; i < r; ++i) orbit[i] = find(i);
    return orbit;
}

// -------------------------------------------------------------------------
// verification

std::optional<std::string> verify_transversal(const GraphCollection& c, const ProblemTemplate& tmpl,
                                              const RainbowEmbedding& emb) {
    int hn = tmpl.h.size();
    int m = c.colour_count();
    auto he = tmpl.h.edges();
    if (static_cast<int>(emb.vertex_map.size()) != hn)
        return "vertex_map size " + std::to_string(emb.vertex_map.size()) + " != |template| " +
               std::to_string(hn);
    if (emb.edge_colours.size() != he.size())
        return "edge_colours size " + std::to_string(emb.edge_colours.size()) + " != e(template) " +
               std::to_string(he.size());
    std::vector<int> seen(c.n, -1);
    for (int v = 0; v < hn; ++v) {
        int img = emb.vertex_map[v];
        if (img < 0 || img >= c.n)
            return "vertex " + std::to_string(v) + " mapped outside host: " + std::to_string(img);
        if (seen[img] != -1)
            return "vertex map not injective: " + std::to_string(seen[img]) + " and " +
                   std::to_string(v) + " both map to " + std::to_string(img);
        seen[img] = v;
    }
    for (std::size_t e = 0; e < he.size(); ++e) {
        auto [u, v] = he[e];
        int col = emb.edge_colours[e];
        if (col < 0 || col >= m)
            return "edge " + std::to_string(e) + " has colour " + std::to_string(col) +
                   " outside [0," + std::to_string(m) + ")";
        if (!c.colour(col).has_edge(emb.vertex_map[u], emb.vertex_map[v]))
            return "edge (" + std::to_string(u) + "," + std::to_string(v) + ") image (" +
                   std::to_string(emb.vertex_map[u]) + "," + std::to_string(emb.vertex_map[v]) +
                   ") not present in colour " + std::to_string(col);
    }
    int ecf = tmpl.f.edge_count();
    switch (tmpl.mode) {
        case TransversalMode::rainbow: {
            std::vector<int> owner(m, -1);
            for (std::size_t e = 0; e < he.size(); ++e) {
                if (owner[emb.edge_colours[e]] != -1)
                    return "colour " + std::to_string(emb.edge_colours[e]) + " used by edges " +
                           std::to_string(owner[emb.edge_colours[e]]) + " and " + std::to_string(e);
                owner[emb.edge_colours[e]] = static_cast<int>(e);
            }
            break;
        }
        case TransversalMode::ft_mono: {
            std::vector<int> owner(m, -1);
            for (int cp = 0; cp < tmpl.copy_count; ++cp) {
                int col = emb.edge_colours[cp * ecf];
                for (int s = 1; s < ecf; ++s)
                    if (emb.edge_colours[cp * ecf + s] != col)
                        return "copy " + std::to_string(cp) + " not monochromatic: colours " +
                               std::to_string(col) + " and " +
                               std::to_string(emb.edge_colours[cp * ecf + s]);
                if (owner[col] != -1)
                    return "copies " + std::to_string(owner[col]) + " and " + std::to_string(cp) +
                           " share colour " + std::to_string(col);
                owner[col] = cp;
            }
            break;
        }
        case TransversalMode::pattern: {
            for (int cp = 0; cp < tmpl.copy_count; ++cp)
                for (int s = 0; s < ecf; ++s)
                    if (emb.edge_colours[cp * ecf + s] != tmpl.patterns[cp][s])
                        return "copy " + std::to_string(cp) + " edge " + std::to_string(s) +
                               " has colour " + std::to_string(emb.edge_colours[cp * ecf + s]) +
                               ", pattern prescribes " + std::to_string(tmpl.patterns[cp][s]);
            break;
        }
    }
    return std::nullopt;
}

// -------------------------------------------------------------------------
// exact existence search

namespace {

struct Searcher {
    const GraphCollection& c;
    const ProblemTemplate& tmpl;
    long long budget;
    long long nodes = 0;
    bool out_of_budget = false;
    bool found = false;

    int n, m, r, ecf;
    std::vector<std::pair<int, int>> f_edges;
    Bitset free_hosts;
    std::vector<int> vmap; // template vertex -> host
    std::vector<Bitset> union_rows;

    // per anchor: placement order and, per step, edges to already-placed vertices
    struct StepPlan {
        int fv;
        std::vector<std::pair<int, int>> back_edges; // (f edge index, placed f endpoint)
    };
    std::vector<std::vector<StepPlan>> plans; // indexed by anchor f-vertex
    std::vector<int> anchors;                 // anchor candidates (orbit reps for factors)

    std::vector<int> placed_edges;   // flat template edge ids
    std::vector<Bitset> edge_cands;  // colour candidates per placed edge
    std::vector<Bitset> copy_cands;  // ft_mono: per copy, intersection of edge candidates

    RainbowEmbedding witness;

    Searcher(const GraphCollection& c_, const ProblemTemplate& t_, long long b)
        : c(c_), tmpl(t_), budget(b), n(c_.n), m(c_.colour_count()), r(t_.f.size()),
          ecf(t_.f.edge_count()), free_hosts(c_.n), vmap(t_.h.size(), -1) {
        f_edges = tmpl.f.edges();
        free_hosts.set_all();
        union_rows.assign(n, Bitset(n));
        for (int v = 0; v < n; ++v)
            for (const Graph& g : c.colours) union_rows[v] |= g.neighbours(v);
        if (tmpl.mode == TransversalMode::ft_mono) {
            Bitset all(m);
            all.set_all();
            copy_cands.assign(tmpl.copy_count, all);
        }
        build_plans();
    }

    bool factor_structured() const { return tmpl.copy_count > 1 || tmpl.f.size() != tmpl.h.size(); }

    void build_plans() {
        plans.assign(r, {});
        bool symmetric = factor_structured() && tmpl.mode != TransversalMode::pattern;
        if (symmetric) {
            auto orbit = automorphism_vertex_orbits(tmpl.f);
            std::vector<bool> taken(r, false);
            for (int v = 0; v < r; ++v)
                if (!taken[orbit[v]]) {
                    taken[orbit[v]] = true;
                    anchors.push_back(v);
                }
        } else if (tmpl.mode == TransversalMode::pattern) {
            anchors.push_back(0);
        } else {
            int best = 0;
            for (int v = 1; v < r; ++v)
                if (tmpl.f.degree(v) > tmpl.f.degree(best)) best = v;
            anchors.push_back(best);
        }
        for (int a : anchors) plans[a] = plan_from(a);
    }

    std::vector<StepPlan> plan_from(int anchor) {
        std::vector<StepPlan> plan;
        std::vector<bool> placed(r, false);
        plan.push_back({anchor, {}});
        placed[anchor] = true;
        for (int step = 1; step < r; ++step) {
            int best = -1, best_nb = -1;
            for (int v = 0; v < r; ++v) {
                if (placed[v]) continue;
                int nb = 0;
                for (int u = 0; u < r; ++u)
                    if (placed[u] && tmpl.f.has_edge(u, v)) ++nb;
                if (nb > best_nb || (nb == best_nb && best != -1 && tmpl.f.degree(v) > tmpl.f.degree(best))) {
                    best = v;
                    best_nb = nb;
                }
            }
            StepPlan sp{best, {}};
            for (std::size_t e = 0; e < f_edges.size(); ++e) {
                auto [x, y] = f_edges[e];
                if (x == best && placed[y]) sp.back_edges.push_back({static_cast<int>(e), y});
                if (y == best && placed[x]) sp.back_edges.push_back({static_cast<int>(e), x});
            }
            placed[best] = true;
            plan.push_back(std::move(sp));
        }
        return plan;
    }

    Bitset edge_colour_candidates(int u, int w) const {
        Bitset cand(m);
        for (int i = 0; i < m; ++i)
            if (c.colour(i).has_edge(u, w)) cand.set(i);
        return cand;
    }

    bool hall_ok(int active_copies) {
        if (tmpl.mode == TransversalMode::pattern) return true;
        if (tmpl.mode == TransversalMode::rainbow) {
            BipartiteGraph bg(static_cast<int>(placed_edges.size()), m);
            for (std::size_t i = 0; i < placed_edges.size(); ++i) bg.adj[i] = edge_cands[i];
            return has_left_perfect_matching(bg);
        }
        BipartiteGraph bg(active_copies, m);
        for (int i = 0; i < active_copies; ++i) bg.adj[i] = copy_cands[i];
        return has_left_perfect_matching(bg);
    }

    void finalize() {
        witness.vertex_map = vmap;
        witness.edge_colours.assign(tmpl.h.edge_count(), -1);
        if (tmpl.mode == TransversalMode::pattern) {
            for (int cp = 0; cp < tmpl.copy_count; ++cp)
                for (int s = 0; s < ecf; ++s) witness.edge_colours[cp * ecf + s] = tmpl.patterns[cp][s];
        } else if (tmpl.mode == TransversalMode::rainbow) {
            BipartiteGraph bg(static_cast<int>(placed_edges.size()), m);
            for (std::size_t i = 0; i < placed_edges.size(); ++i) bg.adj[i] = edge_cands[i];
            auto match = max_bipartite_matching(bg);
            for (std::size_t i = 0; i < placed_edges.size(); ++i)
                witness.edge_colours[placed_edges[i]] = match[i];
        } else {
            BipartiteGraph bg(tmpl.copy_count, m);
            for (int i = 0; i < tmpl.copy_count; ++i) bg.adj[i] = copy_cands[i];
            auto match = max_bipartite_matching(bg);
            for (int cp = 0; cp < tmpl.copy_count; ++cp)
                for (int s = 0; s < ecf; ++s) witness.edge_colours[cp * ecf + s] = match[cp];
        }
        found = true;
    }

    // place template vertex of copy `cp`, f-vertex `sp.fv`, at host w
    bool place(int cp, const StepPlan& sp, int w, Bitset& saved_copy_cand, int& pushed) {
        int tv = cp * r + sp.fv;
        vmap[tv] = w;
        free_hosts.reset(w);
        pushed = 0;
        saved_copy_cand = tmpl.mode == TransversalMode::ft_mono ? copy_cands[cp] : Bitset();
        for (auto [fe, other] : sp.back_edges) {
            int img_other = vmap[cp * r + other];
            if (tmpl.mode == TransversalMode::pattern) {
                int col = tmpl.patterns[cp][fe];
                if (!c.colour(col).has_edge(img_other, w)) return false;
                continue;
            }
            Bitset cand = edge_colour_candidates(img_other, w);
            if (cand.none()) return false;
            placed_edges.push_back(cp * ecf + fe);
            edge_cands.push_back(cand);
            ++pushed;
            if (tmpl.mode == TransversalMode::ft_mono) {
                copy_cands[cp] &= cand;
                if (copy_cands[cp].none()) return false;
            }
        }
        if (!sp.back_edges.empty() && !hall_ok(cp + 1)) return false;
        return true;
    }

    void unplace(int cp, const StepPlan& sp, int w, const Bitset& saved_copy_cand, int pushed) {
        vmap[cp * r + sp.fv] = -1;
        free_hosts.set(w);
        for (int i = 0; i < pushed; ++i) {
            placed_edges.pop_back();
            edge_cands.pop_back();
        }
        if (tmpl.mode == TransversalMode::ft_mono) copy_cands[cp] = saved_copy_cand;
    }

    Bitset host_candidates(int cp, const StepPlan& sp) const {
        Bitset cand = free_hosts;
        if (sp.back_edges.empty()) return cand;
        for (auto [fe, other] : sp.back_edges) {
            int img = vmap[cp * r + other];
            if (tmpl.mode == TransversalMode::pattern)
                cand &= c.colour(tmpl.patterns[cp][fe]).neighbours(img);
            else
                cand &= union_rows[img];
        }
        return cand;
    }

    void rec_steps(int cp, const std::vector<StepPlan>& plan, int step) {
        if (found || out_of_budget) return;
        if (step == r) {
            rec_copy(cp + 1);
            return;
        }
        const StepPlan& sp = plan[step];
        Bitset cand = host_candidates(cp, sp);
        for (int w = cand.next(0); w != -1 && !found && !out_of_budget; w = cand.next(w + 1)) {
            if (++nodes > budget) {
                out_of_budget = true;
                return;
            }
            Bitset saved;
            int pushed = 0;
            if (place(cp, sp, w, saved, pushed)) rec_steps(cp, plan, step + 1);
            unplace(cp, sp, w, saved, pushed);
        }
    }

    void rec_copy(int cp) {
        if (found || out_of_budget) return;
        if (cp == tmpl.copy_count) {
            finalize();
            return;
        }
        if (free_hosts.count() < (tmpl.copy_count - cp) * r) return;
        bool symmetric = factor_structured() && tmpl.mode != TransversalMode::pattern;
        if (symmetric) {
            // copies are interchangeable: this copy takes the lowest free host
            int w = free_hosts.next(0);
            for (int a : anchors) {
                if (found || out_of_budget) return;
                if (++nodes > budget) {
                    out_of_budget = true;
                    return;
                }
                const auto& plan = plans[a];
                Bitset saved;
                int pushed = 0;
                if (place(cp, plan[0], w, saved, pushed)) rec_steps(cp, plan, 1);
                unplace(cp, plan[0], w, saved, pushed);
            }
        } else {
            const auto& plan = plans[anchors[0]];
            Bitset cand = free_hosts;
            for (int w = cand.next(0); w != -1 && !found && !out_of_budget; w = cand.next(w + 1)) {
                if (++nodes > budget) {
                    out_of_budget = true;
                    return;
                }
                Bitset saved;
                int pushed = 0;
                if (place(cp, plan[0], w, saved, pushed)) rec_steps(cp, plan, 1);
                unplace(cp, plan[0], w, saved, pushed);
            }
        }
    }
};

} // namespace

ExistsOutcome exists_transversal_exact(const GraphCollection& c, const ProblemTemplate& tmpl,
                                       long long budget) {
    ExistsOutcome out{ExistsOutcome::Status::no, std::nullopt, 0};
    if (tmpl.h.size() > c.n) return out;
    // pigeonhole quick exits keep exhaustion honest and cheap
    if (tmpl.mode == TransversalMode::rainbow && tmpl.h.edge_count() > c.colour_count()) return out;
    if (tmpl.mode == TransversalMode::ft_mono && tmpl.copy_count > c.colour_count()) return out;
    if (tmpl.mode == TransversalMode::pattern)
        for (const auto& pat : tmpl.patterns)
            for (int col : pat)
                if (col < 0 || col >= c.colour_count())
                    throw std::invalid_argument("pattern colour out of range");
    if (tmpl.h.size() == 0) {
        out.status = ExistsOutcome::Status::yes;
        out.witness = RainbowEmbedding{};
        return out;
    }
    Searcher s(c, tmpl, budget);
    s.rec_copy(0);
    out.nodes = s.nodes;
    if (s.found) {
        out.status = ExistsOutcome::Status::yes;
        out.witness = std::move(s.witness);
    } else if (s.out_of_budget) {
        out.status = ExistsOutcome::Status::budget_exhausted;
    }
    return out;
}

// -------------------------------------------------------------------------
// pinned subgraph search

namespace {

struct SubgraphSearcher {
    const Graph& host;
    const Graph& pattern;
    const GraphCollection* colours = nullptr;      // pattern-copy mode
    const std::vector<int>* edge_colour = nullptr; // per pattern edge (lex), pattern-copy mode
    long long budget;
    long long nodes = 0;
    bool out_of_budget = false;

    int pn;
    std::vector<std::pair<int, int>> p_edges;
    std::vector<int> vmap;
    Bitset used;
    Bitset allowed;
    const std::function<bool(const std::vector<int>&)>* cb = nullptr;
    const std::vector<Bitset>* domains = nullptr; // optional per-pattern-vertex host sets
    bool done = false;
    std::vector<int> result;

    SubgraphSearcher(const Graph& h, const Graph& p, long long b, const Bitset* allow)
        : host(h), pattern(p), budget(b), pn(p.size()), vmap(p.size(), -1), used(h.size()),
          allowed(h.size()) {
        p_edges = pattern.edges();
        if (allow)
            allowed = *allow;
        else
            allowed.set_all();
    }

    bool apply_pins(const std::vector<std::pair<int, int>>& pins) {
        for (auto [pv, hv] : pins) {
            if (pv < 0 || pv >= pn || hv < 0 || hv >= host.size()) return false;
            if (vmap[pv] != -1 && vmap[pv] != hv) return false;
            if (vmap[pv] == -1 && used.test(hv)) return false;
            vmap[pv] = hv;
            used.set(hv);
        }
        // pinned pairs must already respect pattern edges
        for (std::size_t e = 0; e < p_edges.size(); ++e) {
            auto [x, y] = p_edges[e];
            if (vmap[x] != -1 && vmap[y] != -1 && !edge_ok(static_cast<int>(e), vmap[x], vmap[y]))
                return false;
        }
        return true;
    }

    bool edge_ok(int pe, int a, int b) const {
        if (edge_colour) return colours->colour((*edge_colour)[pe]).has_edge(a, b);
        return host.has_edge(a, b);
    }

    const Bitset& row(int pe, int v) const {
        if (edge_colour) return colours->colour((*edge_colour)[pe]).neighbours(v);
        return host.neighbours(v);
    }

    int pick_next() const {
        int best = -1, best_nb = -1, best_deg = -1;
        for (int v = 0; v < pn; ++v) {
            if (vmap[v] != -1) continue;
            int nb = 0;
            for (int u = 0; u < pn; ++u)
                if (vmap[u] != -1 && pattern.has_edge(u, v)) ++nb;
            int deg = pattern.degree(v);
            if (nb > best_nb || (nb == best_nb && deg > best_deg)) {
                best = v;
                best_nb = nb;
                best_deg = deg;
            }
        }
        return best;
    }

    void rec(int remaining) {
        if (done || out_of_budget) return;
        if (remaining == 0) {
            if (cb) {
                if (!(*cb)(vmap)) done = true;
            } else {
                result = vmap;
                done = true;
            }
            return;
        }
        int v = pick_next();
        Bitset cand = allowed;
        cand.and_not(used);
        if (domains) cand &= (*domains)[v];
        for (std::size_t e = 0; e < p_edges.size(); ++e) {
            auto [x, y] = p_edges[e];
            if (x == v && vmap[y] != -1) cand &= row(static_cast<int>(e), vmap[y]);
            if (y == v && vmap[x] != -1) cand &= row(static_cast<int>(e), vmap[x]);
        }
        for (int w = cand.next(0); w != -1 && !done && !out_of_budget; w = cand.next(w + 1)) {
            if (++nodes > budget) {
                out_of_budget = true;
                return;
            }
            vmap[v] = w;
            used.set(w);
            rec(remaining - 1);
            vmap[v] = -1;
            used.reset(w);
        }
    }

    int unplaced() const {
        int k = 0;
        for (int v = 0; v < pn; ++v) k += vmap[v] == -1;
        return k;
    }
};

} // namespace

Result<std::vector<int>> find_subgraph(const Graph& host, const Graph& pattern,
                                       const std::vector<std::pair<int, int>>& pins, long long budget,
                                       const Bitset* allowed) {
    if (pattern.size() > host.size())
        return Result<std::vector<int>>::fail(FailKind::not_found, "", "pattern larger than host");
    SubgraphSearcher s(host, pattern, budget, allowed);
    if (!s.apply_pins(pins))
        return Result<std::vector<int>>::fail(FailKind::not_found, "", "pins are inconsistent");
    s.rec(s.unplaced());
    if (!s.result.empty() || (s.done && s.pn == 0)) return s.vmap.empty() ? std::vector<int>{} : s.result;
    if (s.out_of_budget)
        return Result<std::vector<int>>::fail(FailKind::budget_exhausted, "",
                                              "search budget exhausted");
    return Result<std::vector<int>>::fail(FailKind::not_found, "", "no embedding");
}

bool enumerate_subgraph_embeddings(const Graph& host, const Graph& pattern,
                                   const std::vector<std::pair<int, int>>& pins, long long budget,
                                   const Bitset* allowed,
                                   const std::function<bool(const std::vector<int>&)>& cb) {
    if (pattern.size() > host.size()) return true;
    SubgraphSearcher s(host, pattern, budget, allowed);
    if (!s.apply_pins(pins)) return true;
    s.cb = &cb;
    s.rec(s.unplaced());
    return !s.out_of_budget;
}

Result<std::vector<int>> find_pattern_copy(const GraphCollection& c, const Graph& f,
                                           const std::vector<int>& edge_colours,
                                           const Bitset& allowed_vertices, long long budget,
                                           const std::vector<std::pair<int, int>>& pins,
                                           const std::vector<Bitset>* vertex_domains) {
    if (static_cast<int>(edge_colours.size()) != f.edge_count())
        throw std::invalid_argument("find_pattern_copy: need one colour per pattern edge");
    Graph dummy(c.n); // adjacency comes from the per-edge colour graphs
    SubgraphSearcher s(dummy, f, budget, &allowed_vertices);
    s.colours = &c;
    s.edge_colour = &edge_colours;
    s.domains = vertex_domains;
    if (!s.apply_pins(pins))
        return Result<std::vector<int>>::fail(FailKind::not_found, "", "pins are inconsistent");
    s.rec(s.unplaced());
    if (!s.result.empty()) return s.result;
    if (s.out_of_budget)
        return Result<std::vector<int>>::fail(FailKind::budget_exhausted, "",
                                              "search budget exhausted");
    return Result<std::vector<int>>::fail(FailKind::not_found, "", "no pattern-respecting copy");
}

} // namespace transversal
