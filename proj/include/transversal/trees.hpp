#pragma once

#include <utility>
#include <vector>

#include "transversal/collection.hpp"
#include "transversal/config.hpp"
#include "transversal/errors.hpp"
#include "transversal/oracle.hpp"
#include "transversal/rng.hpp"
#include "transversal/tree.hpp"

namespace transversal {

// Embedding of a subtree: vertex_map is full-size over the template tree's
// vertex ids (-1 = not embedded); edge_colours lists ((u,v), colour) with
// u < v for the subtree's edges.
struct TreeEmbedding {
    std::vector<int> vertex_map;
    std::vector<std::pair<std::pair<int, int>, int>> edge_colours;
};

// Injective homomorphism of the subtree into `host` with root -> root_image,
// degree-greedy backtracking: children in largest-subtree-first order, image
// candidates tried most-constrained-first (fewest free neighbours). allowed
// restricts host vertices (root_image is used regardless).
Result<std::vector<int>> embed_tree_rooted(const Graph& host, const Tree& t, int root,
                                           int root_image, const Bitset* allowed = nullptr,
                                           long long budget = 2'000'000);

// Same, with a free root image (tries candidate images in ascending order).
Result<std::vector<int>> embed_tree_anywhere(const Graph& host, const Tree& t, int root,
                                             const Bitset* allowed = nullptr,
                                             long long budget = 2'000'000);

// Rainbow embedding with plentiful colours: embed the subtree into the
// threshold graph of the allowed colours at min_count, then greedily colour
// (lowest free allowed colour per edge, lex edge order). min_count >= e(T)
// makes the greedy assignment can't-fail.
Result<TreeEmbedding> embed_tree_rainbow_surplus(const GraphCollection& c, const Tree& t, int root,
                                                 int root_image, int min_count,
                                                 const PipelineConfig& config,
                                                 const std::vector<int>* allowed_colours = nullptr,
                                                 const Bitset* allowed_vertices = nullptr);

// Rainbow embedding with a small colour surplus: decompose into blocks of
// about mu*|T| vertices, split the vertex pool degree-preservingly, then embed
// blocks sequentially with fresh colours, stitching at the shared vertices.
Result<TreeEmbedding> embed_tree_rainbow_few_surplus(const GraphCollection& c, const Tree& t,
                                                     int root, int root_image,
                                                     const PipelineConfig& config, Rng& rng,
                                                     const std::vector<int>* allowed_colours = nullptr,
                                                     const Bitset* allowed_vertices = nullptr);

// Exact colour-cover embedding: uses each colour of `colours` exactly once
// (in order) for the tree's edges in reverse leaf-removal order. Requires
// |colours| = e(T) and min degree >= e(T) on the allowed vertices; a failed
// pick reports which step and colour broke, proving the precondition false.
Result<TreeEmbedding> greedy_colour_cover_tree(const GraphCollection& c, const Tree& t, int root,
                                               int root_image,
                                               const std::vector<int>* colours = nullptr,
                                               const Bitset* allowed_vertices = nullptr);

// Full five-step rainbow spanning tree pipeline (m = n-1 colours): four-way
// tree split, colour absorber on T1, bulk+exact-cover+reservoir embeddings of
// T2..T4, then absorption of the leftover colours. Output oracle-verified.
Result<RainbowEmbedding> rainbow_spanning_tree(const GraphCollection& c, const Graph& tree,
                                               const PipelineConfig& config);

} // namespace transversal
