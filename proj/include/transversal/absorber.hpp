#pragma once

#include <functional>
#include <vector>

#include "transversal/bipartite.hpp"
#include "transversal/collection.hpp"
#include "transversal/config.hpp"
#include "transversal/connectivity.hpp"
#include "transversal/errors.hpp"
#include "transversal/rng.hpp"

namespace transversal {

// Precomputed slot -> colour switching structure. Fixing the base match b_i
// and a well-connected core of the mutual-adjacency auxiliary graph lets any
// ell-subset of the reservoir be absorbed by rotating colours along
// vertex-disjoint core paths into the sinks.
struct AbsorberTemplate {
    BipartiteGraph slots_colours;   // slot -> adjacent colours
    std::vector<int> base_match;    // b_i per slot; injective system of adjacent colours
    Graph aux;                      // edge ij iff b_i ~ slot j and b_j ~ slot i
    std::vector<int> core;          // U1, sorted slot indices
    std::vector<int> sinks;         // U0 subset of U1, |U0| = ell
    std::vector<int> fixed_colours; // B0 = {b_i : i not a sink}, sorted
    std::vector<int> reservoir;     // B1: unused colours with >= ell adjacent non-sink core slots
    int ell = 0;
    int core_connectivity = 0; // measured kappa of aux[core]

    int slot_count() const { return slots_colours.left; }
    int colour_count() const { return slots_colours.right; }
};

// Randomised build with verification and retry: sample b_i sequentially
// uniform over unused adjacent colours, extract the best available
// well-connected core (connectivity target max(ell,2), relaxed downward at
// desk scale), then certify the absorption property on sampled (exhaustive
// when few) reservoir subsets before returning. Reservoir membership uses the
// literal threshold of >= ell adjacent slots in U1 \ U0.
Result<AbsorberTemplate> build_absorber(const BipartiteGraph& slot_colour_graph, int ell,
                                        const PipelineConfig& config, Rng& rng);

// Perfect matching slots -> colours using exactly B0 u U, for any U subset of
// the reservoir with |U| = ell. Routes ell vertex-disjoint directed core paths
// from the entry slots to the sinks (disjoint_paths; an integrated max-flow
// fallback picks entry slots when the first choice fails to route) and applies
// the three-case reassignment along each path. Output verified before return.
// debug_stepwise re-verifies injectivity and adjacency after every single path
// switch.
Result<std::vector<int>> absorb(const AbsorberTemplate& tmpl, const std::vector<int>& u_set,
                                bool debug_stepwise = false);

// verification helper shared by build, tests and the acceptance suite:
// perfect, injective, adjacency-respecting, uses exactly B0 u U
bool absorption_valid(const AbsorberTemplate& tmpl, const std::vector<int>& u_set,
                      const std::vector<int>& assignment);

using UncolouredEmbedder = std::function<Result<std::vector<int>>(const Graph& host, const Graph& h)>;

struct ColourAbsorber {
    std::vector<int> vertex_map;                 // uncoloured copy S of H
    std::vector<std::pair<int, int>> slot_edges; // image edges, slot s = s-th edge of H (lex)
    AbsorberTemplate tmpl;                       // A = tmpl.fixed_colours, C = tmpl.reservoir
};

// Colour absorber over a concrete collection: embed H uncoloured into the
// threshold graph (edges in >= alpha * |allowed colours| of the allowed
// colours), then build the switching template over (edges of S) x colours.
// For any B subset of C with |B| = ell, colour_absorber_colours(..., B)
// rainbow-colours S with exactly A u B.
Result<ColourAbsorber> build_colour_absorber(const GraphCollection& c, const Graph& h, int ell,
                                             const UncolouredEmbedder& embedder,
                                             const PipelineConfig& config, Rng& rng,
                                             const std::vector<int>* allowed_colours = nullptr,
                                             const Bitset* allowed_vertices = nullptr);

// per-slot colours for S under reservoir subset u_set
Result<std::vector<int>> colour_absorber_colours(const ColourAbsorber& ca,
                                                 const std::vector<int>& u_set);

} // namespace transversal
