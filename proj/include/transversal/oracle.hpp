#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transversal/collection.hpp"
#include "transversal/errors.hpp"
#include "transversal/graph.hpp"

namespace transversal {

// Vertex mapping plus an edge -> colour assignment certifying a transversal.
// edge_colours follows the template's lexicographic edge order.
struct RainbowEmbedding {
    std::vector<int> vertex_map;
    std::vector<int> edge_colours;
};

enum class TransversalMode {
    rainbow,  // injective edge -> colour over all template edges
    ft_mono,  // factor of monochromatic copies, one distinct colour per copy (t = 1)
    pattern,  // prescribed colour per edge
};

// Template for decision/verification problems. Factor-structured templates put
// copy c, F-vertex i at template vertex c*|F|+i, so the flat edge index of
// copy c's s-th F-edge (lex order on F) is c*e(F)+s.
struct ProblemTemplate {
    Graph h;
    TransversalMode mode = TransversalMode::rainbow;
    Graph f;            // copy graph; for whole-graph templates f == h
    int copy_count = 1; // 1 and f == h means no factor structure
    std::vector<std::vector<int>> patterns; // pattern mode: per copy, colour per f-edge

    static ProblemTemplate whole_graph(Graph h);
    static ProblemTemplate factor(const Graph& f, int copies, int t); // t in {1, e(F)}
    static ProblemTemplate perfect_matching(int n);
    static ProblemTemplate hamilton_cycle(int n);
    static ProblemTemplate patterned(const Graph& f, std::vector<std::vector<int>> patterns);
};

// First violation found, with coordinates; nullopt when the embedding is a
// valid transversal of the template under the mode's colour rules.
std::optional<std::string> verify_transversal(const GraphCollection& c, const ProblemTemplate& tmpl,
                                              const RainbowEmbedding& emb);

struct ExistsOutcome {
    enum class Status { yes, no, budget_exhausted } status;
    std::optional<RainbowEmbedding> witness;
    long long nodes = 0;

    bool yes() const { return status == Status::yes; }
    bool no() const { return status == Status::no; }
};

// Exhaustive backtracking over simultaneous vertex embedding and colour
// assignment, Hall-condition pruning after every placement. "no" is exhaustive;
// budget caps search nodes.
ExistsOutcome exists_transversal_exact(const GraphCollection& c, const ProblemTemplate& tmpl,
                                       long long budget = 50'000'000);

// Injective homomorphism pattern -> host extending pins (pattern vertex, host
// vertex), most-constrained-first backtracking. allowed restricts host
// vertices; host vertices already pinned are used regardless.
Result<std::vector<int>> find_subgraph(const Graph& host, const Graph& pattern,
                                       const std::vector<std::pair<int, int>>& pins = {},
                                       long long budget = 10'000'000,
                                       const Bitset* allowed = nullptr);

// Enumeration flavour; callback returns false to stop. Returns false if the
// budget ran out before exhaustion.
bool enumerate_subgraph_embeddings(const Graph& host, const Graph& pattern,
                                   const std::vector<std::pair<int, int>>& pins, long long budget,
                                   const Bitset* allowed,
                                   const std::function<bool(const std::vector<int>&)>& cb);

// Copy of f whose s-th edge (lex) lies in colour edge_colours[s]; the
// per-edge-colour analogue of find_subgraph. vertex_domains, when given,
// restricts each f-vertex to its own host set (parts-respecting searches).
Result<std::vector<int>> find_pattern_copy(const GraphCollection& c, const Graph& f,
                                           const std::vector<int>& edge_colours,
                                           const Bitset& allowed_vertices,
                                           long long budget = 10'000'000,
                                           const std::vector<std::pair<int, int>>& pins = {},
                                           const std::vector<Bitset>* vertex_domains = nullptr);

// Orbit id per vertex under Aut(f), brute force; |f| <= 10 or so.
std::vector<int> automorphism_vertex_orbits(const Graph& f);

} // namespace transversal
