#pragma once

#include <vector>

#include "transversal/collection.hpp"
#include "transversal/config.hpp"
#include "transversal/errors.hpp"
#include "transversal/rng.hpp"

namespace transversal {

struct PartitionPlan {
    std::vector<std::vector<int>> parts; // pairwise disjoint, sizes match target_sizes
    std::vector<int> target_sizes;
    std::vector<std::vector<int>> bad_colours; // per part; filled by good_partition
};

// 2 exp(-2 t^2 / s): hypergeometric concentration bound on P(|X - E X| >= t)
// for a draw of s elements. Used for retry-budget sizing and diagnostics only.
double hypergeometric_tail(double N, double K, double s, double t);

// Uniformly random partition of ground_set into parts of the given sizes such
// that for every part i, colour j and vertex v:
//   d_j(v, V_i) >= floor((d_j(v, ground_set)/|ground_set| - slack) * |V_i|).
// Verified by direct recount, resampled up to config.retries times. The
// failure report names the worst (part, colour, vertex) triple seen.
Result<PartitionPlan> split_preserving_degrees(const GraphCollection& c,
                                               const std::vector<int>& ground_set,
                                               const std::vector<int>& sizes, double slack,
                                               const PipelineConfig& config, Rng& rng);

// Partition of the whole vertex set into blocks such that per part the set of
// colours j with delta(G_j[V_i]) < floor((delta(C)/n - slack) * |V_i|) has size
// at most max_bad (default m/k_min^2). Bad colours are recorded per part.
// use_halving_recursion selects the iterated-halving construction instead of
// the direct sample-and-verify fast path.
Result<PartitionPlan> good_partition(const GraphCollection& c, const std::vector<int>& block_sizes,
                                     int k_min, double slack, const PipelineConfig& config, Rng& rng,
                                     bool use_halving_recursion = false, double max_bad = -1.0);

// good_partition over a vertex subset (pipelines partition shrinking pools;
// block sizes must sum to |ground_set|)
Result<PartitionPlan> good_partition_on(const GraphCollection& c, const std::vector<int>& ground_set,
                                        const std::vector<int>& block_sizes, int k_min, double slack,
                                        const PipelineConfig& config, Rng& rng,
                                        bool use_halving_recursion = false, double max_bad = -1.0);

// A size-`size` subset A of source_set with, for every colour j,
//   delta(G_j[{pinned} u A]) >= floor((delta_rel - slack) * size),
// where delta_rel = min_{j,v} d_j(v, source_set) / |source_set|.
Result<std::vector<int>> sample_degree_preserving_subset(const GraphCollection& c,
                                                         const std::vector<int>& source_set, int size,
                                                         int pinned_vertex, double slack,
                                                         const PipelineConfig& config, Rng& rng);

} // namespace transversal
