#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "transversal/bitset.hpp"

namespace transversal {

// Simple undirected graph on {0..n-1} with bitset adjacency rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), rows_(n, Bitset(n)) {}

    int size() const { return n_; }
    int edge_count() const { return edges_; }

    bool has_edge(int u, int v) const { return rows_[u].test(v); }

    void add_edge(int u, int v) {
        assert(u != v && u >= 0 && v >= 0 && u < n_ && v < n_);
        if (rows_[u].test(v)) return;
        rows_[u].set(v);
        rows_[v].set(u);
        ++edges_;
    }

    void remove_edge(int u, int v) {
        if (!rows_[u].test(v)) return;
        rows_[u].reset(v);
        rows_[v].reset(u);
        --edges_;
    }

    int degree(int v) const { return rows_[v].count(); }

    // neighbours of v inside `within`
    int degree_in(int v, const Bitset& within) const { return rows_[v].count_and(within); }

    const Bitset& neighbours(int v) const { return rows_[v]; }

    int min_degree() const {
        int d = n_ > 0 ? degree(0) : 0;
        for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }

    // min over vertices of `within` of the degree counted inside `within`
    int min_degree_within(const Bitset& within) const {
        int d = -1;
        within.for_each([&](int v) {
            int dv = degree_in(v, within);
            if (d < 0 || dv < d) d = dv;
        });
        return d < 0 ? 0 : d;
    }

    // edges as (u,v) with u < v, lexicographic
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        e.reserve(edges_);
        for (int u = 0; u < n_; ++u)
            rows_[u].for_each([&](int v) {
                if (v > u) e.emplace_back(u, v);
            });
        return e;
    }

    // induced subgraph on `keep` (original labels retained, other rows empty)
    Graph induced(const Bitset& keep) const {
        Graph g(n_);
        for (int u = 0; u < n_; ++u) {
            if (!keep.test(u)) continue;
            g.rows_[u] = rows_[u] & keep;
        }
        int e = 0;
        keep.for_each([&](int u) { e += g.rows_[u].count(); });
        g.edges_ = e / 2;
        return g;
    }

    // induced subgraph relabelled to {0..|keep|-1}, keep given in ascending order
    Graph relabelled(const std::vector<int>& keep) const {
        Graph g(static_cast<int>(keep.size()));
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = a + 1; b < keep.size(); ++b)
                if (has_edge(keep[a], keep[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
        return g;
    }

    bool connected_within(const Bitset& within) const {
        int start = within.next(0);
        if (start == -1) return true;
        Bitset seen(n_);
        std::vector<int> stack{start};
        seen.set(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Bitset nb = rows_[v] & within;
            nb.and_not(seen);
            nb.for_each([&](int w) {
                seen.set(w);
                stack.push_back(w);
            });
        }
        return seen.count() == within.count();
    }

    bool is_connected() const {
        Bitset all(n_);
        all.set_all();
        return connected_within(all);
    }

    static Graph complete(int n) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    static Graph cycle(int n) {
        Graph g(n);
        for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
        return g;
    }

    static Graph path(int n) {
        Graph g(n);
        for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
        return g;
    }

    static Graph star(int leaves) {
        Graph g(leaves + 1);
        for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
        return g;
    }

    bool operator==(const Graph& o) const = default;

private:
    int n_ = 0;
    int edges_ = 0;
    std::vector<Bitset> rows_;
};

} // namespace transversal
