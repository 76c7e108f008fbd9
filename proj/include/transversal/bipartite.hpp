#pragma once

#include <vector>

#include "transversal/bitset.hpp"

namespace transversal {

// Bipartite graph between `left` (0..L-1) and `right` (0..R-1) vertices,
// adjacency stored as right-bitsets per left vertex.
struct BipartiteGraph {
    int left = 0, right = 0;
    std::vector<Bitset> adj; // adj[l] over right vertices

    BipartiteGraph() = default;
    BipartiteGraph(int l, int r) : left(l), right(r), adj(l, Bitset(r)) {}

    void add(int l, int r) { adj[l].set(r); }
    bool has(int l, int r) const { return adj[l].test(r); }
    int degree(int l) const { return adj[l].count(); }
};

// Hopcroft–Karp. Returns match_of_left (size L, -1 for unmatched).
// `right_allowed`: optional restriction of the right side.
std::vector<int> max_bipartite_matching(const BipartiteGraph& g, const Bitset* right_allowed = nullptr);

int matching_size(const std::vector<int>& match_of_left);

// true iff a matching saturating the whole left side exists within right_allowed
bool has_left_perfect_matching(const BipartiteGraph& g, const Bitset* right_allowed = nullptr);

} // namespace transversal
