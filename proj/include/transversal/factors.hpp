#pragma once

#include <utility>
#include <vector>

#include "transversal/collection.hpp"
#include "transversal/config.hpp"
#include "transversal/errors.hpp"
#include "transversal/factor_spec.hpp"
#include "transversal/oracle.hpp"
#include "transversal/rng.hpp"

namespace transversal {

struct FtCopy {
    std::vector<int> vertices;     // F-vertex i -> host vertex
    std::vector<int> edge_colours; // per F-edge, lex order
};

// Vertex-disjoint coloured copies; in an (F,t)-factor each copy carries
// exactly t colours and copies share no colours.
struct FtFactor {
    std::vector<FtCopy> copies;

    RainbowEmbedding to_embedding(const Graph& f) const;
};

// One F-copy on allowed vertices contained in as many allowed colours as the
// sampled-window search can find; returns the copy and all allowed colours
// containing it. The window is a random r*k vertex subset restricted to
// colours keeping their scaled min degree on it.
Result<std::pair<std::vector<int>, std::vector<int>>> common_colour_F_copy(
    const GraphCollection& c, const FactorSpec& spec, const Bitset& forbidden_vertices,
    const Bitset& forbidden_colours, const PipelineConfig& config, Rng& rng);

// (F,t)-factor with surplus colours: partition into blocks of k..2k copies,
// per block find one F-factor common to >= t * (block copies) fresh colours,
// then hand each copy t of them. copies_needed = -1 covers all allowed
// vertices.
Result<FtFactor> ft_factor_surplus(const GraphCollection& c, const FactorSpec& spec,
                                   const PipelineConfig& config, Rng& rng,
                                   const std::vector<int>* allowed_colours = nullptr,
                                   const Bitset* allowed_vertices = nullptr,
                                   int copies_needed = -1);

// One t-copy of F whose edge set touches target_colour: for t=1 a copy inside
// G_target; for t=e(F) an edge of G_target extended by a pinned search in the
// threshold graph of the other allowed colours, which then greedily colour the
// remaining edges.
Result<FtCopy> t_copy_with_colour(const GraphCollection& c, const FactorSpec& spec,
                                  int target_colour, const Bitset& allowed_vertices,
                                  const std::vector<int>& allowed_other_colours,
                                  const PipelineConfig& config);

// Partial (F,t)-factor covering every colour of `targets` (one t-copy each,
// vertex- and colour-disjoint), drawing non-target colours from
// allowed_other_colours.
Result<FtFactor> colour_covering_factor(const GraphCollection& c, const FactorSpec& spec,
                                        const std::vector<int>& targets,
                                        const Bitset& allowed_vertices,
                                        const std::vector<int>& allowed_other_colours,
                                        const PipelineConfig& config);

// Full five-step (F,t)-factor pipeline on m = t * (n/r) colours: absorber
// copies with a colour reservoir, surplus bulk, exact colour cover of the
// stragglers, reservoir tail, then absorption. Output oracle-verified.
Result<FtFactor> ft_factor(const GraphCollection& c, const FactorSpec& spec,
                           const PipelineConfig& config);

// `count` vertex-disjoint copies of F, each coloured
// by the same pattern (colour per F-edge), found parts-respectingly in the
// merged graph after an r-way degree-preserving vertex split.
Result<FtFactor> patterned_copies_one_pattern(const GraphCollection& c, const Graph& f,
                                              const std::vector<int>& pattern, int count,
                                              const PipelineConfig& config, Rng& rng,
                                              const Bitset* allowed_vertices = nullptr);

// Patterned factor: copy i's edges coloured exactly by patterns[i]; the
// patterns must partition the colour set. Pattern-absorber plus per-pattern
// pinned searches. Output verified edge-exactly against the patterns.
Result<FtFactor> patterned_factor(const GraphCollection& c, const FactorSpec& spec,
                                  const std::vector<std::vector<int>>& patterns,
                                  const PipelineConfig& config);

} // namespace transversal
