#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace transversal {

// Slack hierarchy and budgets for the randomised pipelines: explicit knobs
// standing in for the usual "1/n << gamma << beta << alpha" constant chains,
// with defaults tuned on the dense benchmark instances.
struct PipelineConfig {
    double alpha = 0.20;    // threshold-graph colour fraction / absorber slot density
    double beta = 0.10;     // absorber / tail tree size fraction (the four-way split caps at |T|/10)
    double beta_bar = 0.15; // common-copy colour support fraction (factors)
    double gamma = 0.05;    // reservoir absorption size fraction
    double eps = 0.10;      // surplus-colour margin
    double eta = 0.25;      // factor surplus margin
    double mu = 0.12;       // tree block size fraction
    int k = 2;              // factor block size (copies per block)
    double surplus_ratio = 3.0; // "C": colours per tree edge wanted by the surplus embedder
    int retries = 20;       // per-randomised-step attempt budget
    std::uint64_t rng_seed = 0;

    // desk-scale budgets
    long long embed_budget = 2'000'000;      // backtracking nodes per tree embedding
    long long search_budget = 50'000'000;    // oracle search nodes
    long long factor_enum_cap = 100'000;     // candidate F-factors per block
    int absorber_verify_samples = 256;       // sampled U sets checked at build time
    double partition_slack = 0.45;           // slack handed to vertex partitioning steps
    double degree_slack = 0.25;              // slack for degree filters inside pipelines

    void validate() const {
        if (!(gamma > 0 && gamma < beta && beta < alpha && alpha < 1))
            throw std::invalid_argument("config: need 0 < gamma < beta < alpha < 1");
        if (retries < 1) throw std::invalid_argument("config: retries >= 1");
        for (double x : {alpha, beta, beta_bar, gamma, eps, eta, mu, surplus_ratio,
                         partition_slack, degree_slack})
            if (!std::isfinite(x)) throw std::invalid_argument("config: non-finite parameter");
    }
};

} // namespace transversal
