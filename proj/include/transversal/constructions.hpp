#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "transversal/collection.hpp"
#include "transversal/config.hpp"
#include "transversal/errors.hpp"
#include "transversal/factor_spec.hpp"
#include "transversal/rng.hpp"

namespace transversal {

// Extremal instance: colours 0..tn-2 are clique(A) u clique(B), colour tn-1 is
// the complete bipartite graph (A,B), |A| = floor(rn/2). A bridgeless F rules
// out any (F, e(F))-factor transversal; min degree is floor(rn/2) - 1.
Result<GraphCollection> bridgeless_lower_bound(const FactorSpec& spec, int n_copies);

// v-1 perfect matchings partitioning E(K_v), circle method. v even.
std::vector<std::vector<std::pair<int, int>>> round_robin_one_factorization(int v);

struct PatternedCounterexample {
    GraphCollection collection;          // t*t colours on n vertices
    Graph f;                             // K_{t,t}; A side = vertices 0..t-1
    std::vector<int> pattern;            // colour of the i-th K_{t,t} edge (lex): identity
    std::vector<int> psi;                // matching label per edge, in [k]
    std::vector<int> part_of;            // vertex -> part in the (k+1)-partition
    int floor_used = 0;                  // attained property-R size floor
    int attempts = 0;
    int min_degree = 0;
};

// Patterned lower bound: complete (k+1)-partite colours with one
// matching class of part pairs deleted per colour, labels psi sampled until
// property R holds at the smallest attainable size floor (and the no-copy
// conclusion is certified exactly at part level). k odd.
Result<PatternedCounterexample> patterned_counterexample(int t, int k, int n,
                                                         const PipelineConfig& config, Rng& rng);

enum class RandomModel { identical, iid_gnp, shared_base_plus_noise, min_degree_conditioned };

struct RandomParams {
    double p = 0.5;             // edge probability (base)
    double q = 0.1;             // noise rate (shared_base_plus_noise)
    bool complete_base = false; // identical: use K_n instead of G(n,p)
    int min_degree_target = 0;  // min_degree_conditioned
    int resample_budget = 200;  // per-colour resampling budget
};

RandomModel parse_random_model(const std::string& name);
std::string random_model_name(RandomModel m);

Result<GraphCollection> random_collection(int n, int m, RandomModel model, const RandomParams& params,
                                          std::uint64_t seed);

// G(n,p) with the seeded rng; shared helper for generators and tests
Graph random_gnp(int n, double p, Rng& rng);

// Dirac-extremal sweep instances with min degree >= target: every colour is
// the complete bipartite graph K_{a, n-a} with a = min(target, n - target)
// plus one shared noise graph inside the larger side (resampled until the
// degree target holds). Below n/2 the bipartition obstructs perfect matchings
// up to the scarce noise edges; above it the conditioning floods the larger
// side. One noise graph is shared by all colours.
Result<GraphCollection> dirac_shell_collection(int n, int m, int target, double noise_rate,
                                               std::uint64_t seed, int budget = 20000);

// uniform labelled tree on n vertices (Pruefer), optionally resampled until
// max degree <= max_degree (0 = unbounded)
Result<Graph> random_tree(int n, int max_degree, Rng& rng, int budget = 1000);

} // namespace transversal
