#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include "transversal/errors.hpp"
#include "transversal/graph.hpp"

namespace transversal {

// Subtree of a template tree. Adjacency stays on the original vertex ids so
// edge-disjoint pieces can be stitched back together; verts lists the active
// vertices in ascending order.
struct Tree {
    Graph g;                // full-size adjacency, edges only among verts
    std::vector<int> verts; // sorted

    int size() const { return static_cast<int>(verts.size()); }
    int edges() const { return size() > 0 ? size() - 1 : 0; }
    bool contains(int v) const;

    // edges (u,v) with u < v, lexicographic
    std::vector<std::pair<int, int>> edge_list() const { return g.edges(); }

    static Result<Tree> from_graph(const Graph& g); // must be connected and acyclic
};

// Edge-disjoint split (T1, T2) with E(T1) u E(T2) = E(T), t in T1,
// m <= |T2| <= 3m and exactly one shared vertex. Requires 1 <= m <= |T|/3.
Result<std::pair<Tree, Tree>> split_tree(const Tree& t, int root, int m);

// Edge-disjoint subtrees covering E(T), each with m <= |T_i| <= 4m, ordered so
// that every prefix union is connected (first piece contains `start` when
// given). Requires 1 <= m <= |T|.
Result<std::vector<Tree>> decompose_tree(const Tree& t, int m, int start = -1);

// Four-way split: edge-disjoint cover with m_i <= |T_i| <= 3 m_i
// for i in {1,3,4} and T1 u T2, T1 u T2 u T3 connected. Requires each
// m_i <= |T|/10.
Result<std::array<Tree, 4>> split_four(const Tree& t, int m1, int m3, int m4);

// Vertices of T minus the root in reverse leaf-removal order: prefix
// {t, t_1..t_i} always induces a subtree. Returns (t_i, parent in prefix).
std::vector<std::pair<int, int>> leaf_removal_order(const Tree& t, int root);

// Tree text format: line 1 "|T|", then |T|-1 lines "u v".
Result<Graph> read_tree(std::istream& in);
void write_tree(const Graph& tree, std::ostream& out);
Result<Graph> read_tree_file(const std::string& path);

} // namespace transversal
