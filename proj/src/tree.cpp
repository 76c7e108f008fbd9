#include "transversal/tree.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace transversal {

bool Tree::contains(int v) const {
    return std::binary_search(verts.begin(), verts.end(), v);
}

Result<Tree> Tree::from_graph(const Graph& g) {
    Tree t;
    t.g = g;
    for (int v = 0; v < g.size(); ++v) t.verts.push_back(v);
    if (g.edge_count() != g.size() - 1 || !g.is_connected())
        return Result<Tree>::fail(FailKind::bad_input, "", "graph is not a tree");
    return t;
}

namespace {

Tree subtree_of(const Tree& t, const std::vector<int>& verts_sorted) {
    Tree s;
    s.verts = verts_sorted;
    s.g = t.g.induced(Bitset::of(t.g.size(), verts_sorted));
    return s;
}

struct Rooted {
    std::vector<int> order;  // DFS order from root, parents before children
    std::vector<int> parent; // -1 for root / inactive
    std::vector<int> sub;    // subtree sizes
    std::vector<int> depth;
};

Rooted root_at(const Tree& t, int root) {
    int n = t.g.size();
    Rooted r;
    r.parent.assign(n, -1);
    r.sub.assign(n, 0);
    r.depth.assign(n, 0);
    std::vector<int> stack{root};
    Bitset seen(n);
    seen.set(root);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        r.order.push_back(v);
        Bitset nb = t.g.neighbours(v);
        nb.and_not(seen);
        // descending push, so lower ids pop first
        std::vector<int> kids = nb.to_vector();
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
            seen.set(*it);
            r.parent[*it] = v;
            r.depth[*it] = r.depth[v] + 1;
            stack.push_back(*it);
        }
    }
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        r.sub[*it] += 1;
        if (r.parent[*it] != -1) r.sub[r.parent[*it]] += r.sub[*it];
    }
    return r;
}

void collect_subtree(const Tree& t, const Rooted& r, int v, std::vector<int>& out) {
    out.push_back(v);
    t.g.neighbours(v).for_each([&](int w) {
        if (r.parent[w] == v) collect_subtree(t, r, w, out);
    });
}

} // namespace

Result<std::pair<Tree, Tree>> split_tree(const Tree& t, int root, int m) {
    using R = Result<std::pair<Tree, Tree>>;
    if (m < 1 || 3 * m > t.size())
        return R::fail(FailKind::bad_input, "", "need 1 <= m <= |T|/3");
    if (!t.contains(root)) return R::fail(FailKind::bad_input, "", "root not in tree");

    Rooted r = root_at(t, root);
    int want = std::max(m, 2);
    // deepest vertex carrying at least `want`; ties to the lowest id
    int v = root;
    for (int u : t.verts)
        if (r.sub[u] >= want && (r.depth[u] > r.depth[v] || (r.depth[u] == r.depth[v] && u < v)))
            v = u;

    std::vector<int> t2_verts;
    if (r.sub[v] <= 3 * m) {
        collect_subtree(t, r, v, t2_verts);
    } else {
        // all child subtrees are below `want`; batch the smallest-id children
        // until the piece reaches size m
        t2_verts.push_back(v);
        int total = 0;
        int need = std::max(m - 1, 1);
        std::vector<int> kids = t.g.neighbours(v).to_vector();
        for (int w : kids) {
            if (r.parent[w] != v) continue;
            collect_subtree(t, r, w, t2_verts);
            total += r.sub[w];
            if (total >= need) break;
        }
    }
    std::sort(t2_verts.begin(), t2_verts.end());
    Bitset drop = Bitset::of(t.g.size(), t2_verts);
    drop.reset(v);
    std::vector<int> t1_verts;
    for (int u : t.verts)
        if (!drop.test(u)) t1_verts.push_back(u);
    return std::make_pair(subtree_of(t, t1_verts), subtree_of(t, t2_verts));
}

Result<std::vector<Tree>> decompose_tree(const Tree& t, int m, int start) {
    using R = Result<std::vector<Tree>>;
    if (m < 1 || m > t.size()) return R::fail(FailKind::bad_input, "", "need 1 <= m <= |T|");
    std::vector<Tree> pieces{t};
    bool split_something = true;
    while (split_something) {
        split_something = false;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (pieces[i].size() <= 4 * m) continue;
            auto two = split_tree(pieces[i], pieces[i].verts.front(), m);
            if (!two.ok()) return R::fail(two.failure().kind, "", two.failure().detail);
            pieces[i] = two->first;
            pieces.push_back(two->second);
            split_something = true;
        }
    }
    // connected prefix ordering
    if (start == -1) start = t.verts.front();
    std::vector<Tree> ordered;
    std::vector<bool> taken(pieces.size(), false);
    Bitset covered(t.g.size());
    for (std::size_t round = 0; round < pieces.size(); ++round) {
        int pick = -1;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (taken[i]) continue;
            bool anchored = ordered.empty()
                                ? pieces[i].contains(start)
                                : Bitset::of(t.g.size(), pieces[i].verts).intersects(covered);
            if (anchored) {
                pick = static_cast<int>(i);
                break;
            }
        }
        if (pick == -1) return R::fail(FailKind::bad_input, "", "pieces do not chain (internal)");
        taken[pick] = true;
        for (int v : pieces[pick].verts) covered.set(v);
        ordered.push_back(std::move(pieces[pick]));
    }
    return ordered;
}

Result<std::array<Tree, 4>> split_four(const Tree& t, int m1, int m3, int m4) {
    using R = Result<std::array<Tree, 4>>;
    for (int m : {m1, m3, m4})
        if (m < 1 || 10 * m > t.size())
            return R::fail(FailKind::bad_input, "", "need 1 <= m_i <= |T|/10");

    auto first = split_tree(t, t.verts.front(), m1);
    if (!first.ok()) return R::fail(first.failure().kind, "", first.failure().detail);
    Tree rest = first->first, t1 = first->second;
    // the split point is the unique shared vertex
    int t_shared = -1;
    for (int v : t1.verts)
        if (rest.contains(v)) t_shared = v;

    auto second = split_tree(rest, t_shared, m4);
    if (!second.ok()) return R::fail(second.failure().kind, "", second.failure().detail);
    Tree mid = second->first, t4 = second->second;

    auto third = split_tree(mid, t_shared, m3);
    if (!third.ok()) return R::fail(third.failure().kind, "", third.failure().detail);
    Tree t2 = third->first, t3 = third->second;

    return std::array<Tree, 4>{t1, t2, t3, t4};
}

std::vector<std::pair<int, int>> leaf_removal_order(const Tree& t, int root) {
    int n = t.g.size();
    std::vector<int> deg(n, 0);
    for (int v : t.verts) deg[v] = t.g.degree(v);
    Bitset alive = Bitset::of(n, t.verts);
    std::vector<int> removed;
    for (int step = 0; step + 1 < t.size(); ++step) {
        int leaf = -1;
        for (int v : t.verts)
            if (alive.test(v) && v != root && deg[v] == 1 && (leaf == -1)) leaf = v;
        alive.reset(leaf);
        removed.push_back(leaf);
        t.g.neighbours(leaf).for_each([&](int w) {
            if (alive.test(w)) --deg[w];
        });
    }
    std::vector<std::pair<int, int>> order;
    Bitset placed(n);
    placed.set(root);
    for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
        int parent = -1;
        t.g.neighbours(*it).for_each([&](int w) {
            if (placed.test(w)) parent = w;
        });
        order.push_back({*it, parent});
        placed.set(*it);
    }
    return order;
}

Result<Graph> read_tree(std::istream& in) {
    using R = Result<Graph>;
    int n;
    if (!(in >> n) || n < 1) return R::fail(FailKind::bad_input, "", "bad tree header");
    Graph g(n);
    for (int e = 0; e + 1 < n; ++e) {
        int u, v;
        if (!(in >> u >> v)) return R::fail(FailKind::bad_input, "", "missing tree edge");
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            return R::fail(FailKind::bad_input, "", "bad tree edge");
        g.add_edge(u, v);
    }
    if (g.edge_count() != n - 1 || !g.is_connected())
        return R::fail(FailKind::bad_input, "", "edges do not form a tree");
    return g;
}

void write_tree(const Graph& tree, std::ostream& out) {
    out << tree.size() << '\n';
    for (auto [u, v] : tree.edges()) out << u << ' ' << v << '\n';
}

Result<Graph> read_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return Result<Graph>::fail(FailKind::bad_input, "", "cannot open " + path);
    return read_tree(in);
}

} // namespace transversal
