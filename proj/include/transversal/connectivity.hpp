#pragma once

#include <vector>

#include "transversal/errors.hpp"
#include "transversal/graph.hpp"

namespace transversal {

// Exact vertex connectivity via vertex-split max flow over non-adjacent pairs.
// kappa(K_n) = n-1, disconnected -> 0, |G| must be >= 2.
int vertex_connectivity(const Graph& g);
int vertex_connectivity(const Graph& g, const Bitset& within);

// A minimum vertex cut of g[within] (empty when the induced graph is complete
// or has < 2 vertices).
std::vector<int> min_vertex_cut(const Graph& g, const Bitset& within);

// Mader extraction: a vertex set H with g[H] (k+1)-connected and |H| >= k+2.
// Guaranteed to exist when e(g) >= 2k|g|; mirrors the inductive proof
// (degree-<=2k deletion, then descent through minimum cuts, best side first).
Result<std::vector<int>> find_highly_connected_subgraph(const Graph& g, int k);

// k pairwise vertex-disjoint paths, each from a distinct A-vertex to a
// distinct B-vertex, via unit-vertex-capacity max flow. A, B disjoint,
// |A| = |B| = k. With verify_connectivity the k-connectedness precondition is
// checked first instead of trusting the caller.
Result<std::vector<std::vector<int>>> disjoint_paths(const Graph& g, const std::vector<int>& a,
                                                     const std::vector<int>& b, int k,
                                                     bool verify_connectivity = false);

} // namespace transversal
