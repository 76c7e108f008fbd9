#include "transversal/connectivity.hpp"

#include <algorithm>
#include <stdexcept>

#include "transversal/maxflow.hpp"

namespace transversal {

namespace {

// vertex-split network over the vertices of `within`; in(v) = 2*pos, out(v) = 2*pos+1
struct SplitNet {
    std::vector<int> verts;
    std::vector<int> pos; // vertex -> index in verts, -1 outside

    SplitNet(const Graph& g, const Bitset& within) : pos(g.size(), -1) {
        verts = within.to_vector();
        for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    }

    // local vertex connectivity between non-adjacent s,t; also exposes the cut
    int local(const Graph& g, const Bitset& within, int s, int t, std::vector<int>* cut) const {
        int n = static_cast<int>(verts.size());
        MaxFlow mf(2 * n);
        std::vector<int> split_edge(n, -1);
        for (int i = 0; i < n; ++i) {
            int cap = (verts[i] == s || verts[i] == t) ? n : 1;
            split_edge[i] = mf.add_edge(2 * i, 2 * i + 1, cap);
        }
        for (int i = 0; i < n; ++i) {
            int u = verts[i];
            Bitset nb = g.neighbours(u) & within;
            nb.for_each([&](int v) {
                if (v > u) {
                    mf.add_edge(2 * pos[u] + 1, 2 * pos[v], n);
                    mf.add_edge(2 * pos[v] + 1, 2 * pos[u], n);
                }
            });
        }
        int flow = mf.run(2 * pos[s] + 1, 2 * pos[t]);
        if (cut) {
            auto side = mf.min_cut_side(2 * pos[s] + 1);
            cut->clear();
            for (int i = 0; i < n; ++i)
                if (side[2 * i] && !side[2 * i + 1]) cut->push_back(verts[i]);
        }
        return flow;
    }
};

int connectivity_impl(const Graph& g, const Bitset& within, std::vector<int>* best_cut) {
    int n = within.count();
    if (n < 2) throw std::invalid_argument("vertex_connectivity: |G| >= 2 required");
    if (!g.connected_within(within)) {
        if (best_cut) best_cut->clear();
        return 0;
    }
    SplitNet net(g, within);
    int best = n - 1; // complete-graph value; also an upper bound
    std::vector<int> cut;
    for (std::size_t a = 0; a < net.verts.size(); ++a)
        for (std::size_t b = a + 1; b < net.verts.size(); ++b) {
            int s = net.verts[a], t = net.verts[b];
            if (g.has_edge(s, t)) continue;
            int local = net.local(g, within, s, t, best_cut ? &cut : nullptr);
            if (local < best) {
                best = local;
                if (best_cut) *best_cut = cut;
            }
        }
    if (best == n - 1 && best_cut) best_cut->clear(); // complete graph, no cut
    return best;
}

} // namespace

int vertex_connectivity(const Graph& g, const Bitset& within) {
    return connectivity_impl(g, within, nullptr);
}

int vertex_connectivity(const Graph& g) {
    Bitset all(g.size());
    all.set_all();
    return vertex_connectivity(g, all);
}

std::vector<int> min_vertex_cut(const Graph& g, const Bitset& within) {
    std::vector<int> cut;
    connectivity_impl(g, within, &cut);
    return cut;
}

namespace {

long long side_score(const Graph& g, const Bitset& side, int k) {
    long long e = 0;
    side.for_each([&](int v) { e += g.degree_in(v, side); });
    e /= 2;
    return e - 2LL * k * side.count();
}

bool mader_descend(const Graph& g, Bitset within, int k, std::vector<int>& out) {
    // delete low-degree vertices; invariant e >= 2k|G| survives this
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = within.next(0); v != -1; v = within.next(v + 1))
            if (g.degree_in(v, within) <= 2 * k) {
                within.reset(v);
                changed = true;
            }
    }
    if (within.count() < k + 2) return false;
    std::vector<int> cut;
    int kappa = connectivity_impl(g, within, &cut);
    if (kappa >= k + 1) {
        out = within.to_vector();
        return true;
    }
    // kappa == 0: pruning disconnected the residue; descend into the plain
    // components (an empty cut). Complete residues have no cut either, but
    // they were returned above (kappa = |within|-1 >= k+1 fails only when the
    // residue is too small, and then no side can succeed).
    if (cut.empty() && kappa > 0) return false;
    Bitset cut_bits = Bitset::of(g.size(), cut);

    // components of g[within - cut], each extended by the cut
    Bitset rest = within;
    rest.and_not(cut_bits);
    std::vector<Bitset> sides;
    Bitset seen(g.size());
    for (int s = rest.next(0); s != -1; s = rest.next(s + 1)) {
        if (seen.test(s)) continue;
        Bitset comp(g.size());
        std::vector<int> stack{s};
        comp.set(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Bitset nb = g.neighbours(v) & rest;
            nb.and_not(comp);
            nb.for_each([&](int w) {
                comp.set(w);
                stack.push_back(w);
            });
        }
        seen |= comp;
        comp |= cut_bits;
        sides.push_back(comp);
    }
    std::stable_sort(sides.begin(), sides.end(), [&](const Bitset& x, const Bitset& y) {
        return side_score(g, x, k) > side_score(g, y, k);
    });
    for (const Bitset& side : sides) {
        if (side.count() >= within.count()) continue; // no progress, skip
        if (mader_descend(g, side, k, out)) return true;
    }
    return false;
}

} // namespace

Result<std::vector<int>> find_highly_connected_subgraph(const Graph& g, int k) {
    std::vector<int> out;
    Bitset all(g.size());
    all.set_all();

    // disconnected graphs: run per component
    Bitset seen(g.size());
    for (int s = 0; s < g.size(); ++s) {
        if (seen.test(s)) continue;
        Bitset comp(g.size());
        std::vector<int> stack{s};
        comp.set(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Bitset nb = g.neighbours(v);
            nb.and_not(comp);
            nb.for_each([&](int w) {
                comp.set(w);
                stack.push_back(w);
            });
        }
        seen |= comp;
        if (comp.count() >= k + 2 && mader_descend(g, comp, k, out))
            return out;
    }
    return Result<std::vector<int>>::fail(
        FailKind::not_found, "",
        "no (k+1)-connected subgraph found for k=" + std::to_string(k) +
            " (average degree " + std::to_string(g.size() ? 2.0 * g.edge_count() / g.size() : 0.0) + ")");
}

Result<std::vector<std::vector<int>>> disjoint_paths(const Graph& g, const std::vector<int>& a,
                                                     const std::vector<int>& b, int k,
                                                     bool verify_connectivity) {
    using Paths = std::vector<std::vector<int>>;
    if (static_cast<int>(a.size()) != k || static_cast<int>(b.size()) != k)
        throw std::invalid_argument("disjoint_paths: |A| = |B| = k required");
    for (int x : a)
        for (int y : b)
            if (x == y) throw std::invalid_argument("disjoint_paths: A and B must be disjoint");
    if (k == 0) return Paths{};
    if (verify_connectivity && vertex_connectivity(g) < k)
        return Result<Paths>::fail(FailKind::no_routing, "", "graph is not k-connected");

    int n = g.size();
    MaxFlow mf(2 * n + 2);
    int src = 2 * n, snk = 2 * n + 1;
    for (int v = 0; v < n; ++v) mf.add_edge(2 * v, 2 * v + 1, 1);
    std::vector<std::vector<std::pair<int, int>>> out_edges(n); // (edge id, target vertex)
    for (int u = 0; u < n; ++u)
        g.neighbours(u).for_each([&](int v) {
            if (v > u) {
                out_edges[u].push_back({mf.add_edge(2 * u + 1, 2 * v, 1), v});
                out_edges[v].push_back({mf.add_edge(2 * v + 1, 2 * u, 1), u});
            }
        });
    for (int x : a) mf.add_edge(src, 2 * x, 1);
    for (int y : b) mf.add_edge(2 * y + 1, snk, 1);

    int flow = mf.run(src, snk);
    if (flow < k)
        return Result<Paths>::fail(FailKind::no_routing, "",
                                   "max flow " + std::to_string(flow) + " < k=" + std::to_string(k));

    // consume flow units to recover the paths
    std::vector<int> remaining(mf.edges().size() / 2);
    for (std::size_t e = 0; e < remaining.size(); ++e) remaining[e] = mf.flow_on(static_cast<int>(2 * e));
    Bitset bset = Bitset::of(n, b);
    Paths paths;
    for (int x : a) {
        std::vector<int> path{x};
        int v = x;
        while (!bset.test(v)) {
            bool advanced = false;
            for (auto [eid, w] : out_edges[v]) {
                if (remaining[eid / 2] > 0 && (eid % 2 == 0)) {
                    remaining[eid / 2] -= 1;
                    path.push_back(w);
                    v = w;
                    advanced = true;
                    break;
                }
            }
            if (!advanced)
                return Result<Paths>::fail(FailKind::no_routing, "", "flow decomposition stuck");
        }
        bset.reset(v); // each B endpoint used once
        paths.push_back(std::move(path));
    }
    return paths;
}

} // namespace transversal
