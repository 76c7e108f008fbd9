#include "transversal/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace transversal {

double hypergeometric_tail(double N, double K, double s, double t) {
    if (!(K >= 0 && K <= N && s >= 0 && s <= N && t > 0))
        throw std::invalid_argument("hypergeometric_tail: need 0<=K<=N, 0<=s<=N, t>0");
    if (s == 0) return 0.0;
    return 2.0 * std::exp(-2.0 * t * t / s);
}

namespace {

std::vector<std::vector<int>> random_split(const std::vector<int>& ground,
                                           const std::vector<int>& sizes, Rng& rng) {
    std::vector<int> pool = ground;
    rng.shuffle(pool);
    std::vector<std::vector<int>> parts;
    std::size_t at = 0;
    for (int s : sizes) {
        std::vector<int> part(pool.begin() + at, pool.begin() + at + s);
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
        at += s;
    }
    return parts;
}

struct Violation {
    double margin = 0; // d - floor(threshold); negative = violated
    int part = -1, colour = -1, vertex = -1;
    int have = 0, need = 0;
};

} // namespace

Result<PartitionPlan> split_preserving_degrees(const GraphCollection& c,
                                               const std::vector<int>& ground_set,
                                               const std::vector<int>& sizes, double slack,
                                               const PipelineConfig& config, Rng& rng) {
    long long total = 0;
    for (int s : sizes) total += s;
    if (total != static_cast<long long>(ground_set.size()))
        throw std::invalid_argument("split_preserving_degrees: sizes must sum to |ground_set|");
    if (!(slack > 0 && slack < 1))
        throw std::invalid_argument("split_preserving_degrees: slack in (0,1)");

    int m = c.colour_count();
    Bitset ground = Bitset::of(c.n, ground_set);
    double gsize = static_cast<double>(ground_set.size());

    // relative ground-set degree per (colour, vertex)
    std::vector<std::vector<int>> dg(m, std::vector<int>(c.n));
    for (int j = 0; j < m; ++j)
        for (int v = 0; v < c.n; ++v) dg[j][v] = c.colour(j).degree_in(v, ground);

    PartitionPlan best;
    Violation best_worst;
    bool have_best = false;

    for (int attempt = 0; attempt < config.retries; ++attempt) {
        PartitionPlan plan;
        plan.target_sizes = sizes;
        plan.parts = random_split(ground_set, sizes, rng);
        Violation worst;
        worst.margin = 1e18;
        for (std::size_t i = 0; i < plan.parts.size(); ++i) {
            Bitset part = Bitset::of(c.n, plan.parts[i]);
            for (int j = 0; j < m; ++j)
                for (int v = 0; v < c.n; ++v) {
                    int need = static_cast<int>(
                        std::floor((dg[j][v] / gsize - slack) * plan.parts[i].size()));
                    int have = c.colour(j).degree_in(v, part);
                    double margin = have - need;
                    if (margin < worst.margin)
                        worst = {margin, static_cast<int>(i), j, v, have, need};
                }
        }
        if (worst.margin >= 0) return plan;
        if (!have_best || worst.margin > best_worst.margin) {
            best = plan;
            best_worst = worst;
            have_best = true;
        }
    }
    return Result<PartitionPlan>::fail(
        FailKind::retries_exhausted, "",
        "after " + std::to_string(config.retries) + " attempts; worst violation: part " +
            std::to_string(best_worst.part) + ", colour " + std::to_string(best_worst.colour) +
            ", vertex " + std::to_string(best_worst.vertex) + ", degree " +
            std::to_string(best_worst.have) + " < required " + std::to_string(best_worst.need));
}

namespace {

// bad_colours for one part under the good_partition criterion
std::vector<int> bad_colours_of_part(const GraphCollection& c, const std::vector<int>& part,
                                     double delta_rel, double slack) {
    Bitset pb = Bitset::of(c.n, part);
    int need = static_cast<int>(std::floor((delta_rel - slack) * part.size()));
    std::vector<int> bad;
    for (int j = 0; j < c.colour_count(); ++j)
        if (c.colour(j).min_degree_within(pb) < need) bad.push_back(j);
    return bad;
}

// one halving round: split every group with more than `cap` blocks in two,
// with an exact-size random split of its vertices
struct BlockGroup {
    std::vector<int> blocks; // indices into block_sizes
    std::vector<int> verts;
};

} // namespace

Result<PartitionPlan> good_partition_on(const GraphCollection& c, const std::vector<int>& ground_set,
                                        const std::vector<int>& block_sizes, int k_min, double slack,
                                        const PipelineConfig& config, Rng& rng,
                                        bool use_halving_recursion, double max_bad) {
    long long total = 0;
    for (int s : block_sizes) {
        if (s < k_min)
            throw std::invalid_argument("good_partition: every block size must be >= k_min");
        total += s;
    }
    if (total != static_cast<long long>(ground_set.size()))
        throw std::invalid_argument("good_partition: block sizes must sum to |ground set|");

    int m = c.colour_count();
    double delta_rel = static_cast<double>(min_degree(c)) / c.n;
    if (max_bad < 0) max_bad = static_cast<double>(m) / (static_cast<double>(k_min) * k_min);

    const std::vector<int>& all = ground_set;

    auto finish = [&](PartitionPlan plan) -> Result<PartitionPlan> {
        int worst_part = -1;
        std::size_t worst_count = 0;
        for (std::size_t i = 0; i < plan.parts.size(); ++i) {
            plan.bad_colours.push_back(bad_colours_of_part(c, plan.parts[i], delta_rel, slack));
            if (plan.bad_colours.back().size() > worst_count) {
                worst_count = plan.bad_colours.back().size();
                worst_part = static_cast<int>(i);
            }
        }
        if (static_cast<double>(worst_count) <= max_bad) return plan;
        return Result<PartitionPlan>::fail(
            FailKind::retries_exhausted, "",
            "part " + std::to_string(worst_part) + " has " + std::to_string(worst_count) +
                " bad colours > allowed " + std::to_string(max_bad));
    };

    Result<PartitionPlan> last = Result<PartitionPlan>::fail(FailKind::retries_exhausted, "", "");
    for (int attempt = 0; attempt < config.retries; ++attempt) {
        PartitionPlan plan;
        plan.target_sizes = block_sizes;
        if (!use_halving_recursion) {
            plan.parts = random_split(all, block_sizes, rng);
        } else {
            // iterated halving: groups of blocks carry their vertex pools and
            // are split in two each round until every group is a single block
            std::vector<BlockGroup> groups(1);
            for (int i = 0; i < static_cast<int>(block_sizes.size()); ++i)
                groups[0].blocks.push_back(i);
            groups[0].verts = all;
            bool more = true;
            while (more) {
                more = false;
                std::vector<BlockGroup> next;
                for (BlockGroup& g : groups) {
                    if (g.blocks.size() <= 1) {
                        next.push_back(std::move(g));
                        continue;
                    }
                    more = true;
                    std::size_t half = (g.blocks.size() + 1) / 2;
                    BlockGroup a, b;
                    a.blocks.assign(g.blocks.begin(), g.blocks.begin() + half);
                    b.blocks.assign(g.blocks.begin() + half, g.blocks.end());
                    int asize = 0;
                    for (int i : a.blocks) asize += block_sizes[i];
                    std::vector<int> pool = g.verts;
                    rng.shuffle(pool);
                    a.verts.assign(pool.begin(), pool.begin() + asize);
                    b.verts.assign(pool.begin() + asize, pool.end());
                    next.push_back(std::move(a));
                    next.push_back(std::move(b));
                }
                groups = std::move(next);
            }
            plan.parts.assign(block_sizes.size(), {});
            for (BlockGroup& g : groups) {
                std::sort(g.verts.begin(), g.verts.end());
                plan.parts[g.blocks[0]] = std::move(g.verts);
            }
        }
        last = finish(std::move(plan));
        if (last.ok()) return last;
    }
    Failure f = last.failure();
    f.detail = "after " + std::to_string(config.retries) + " attempts; last: " + f.detail;
    return Result<PartitionPlan>::fail(f.kind, f.stage, f.detail);
}

Result<PartitionPlan> good_partition(const GraphCollection& c, const std::vector<int>& block_sizes,
                                     int k_min, double slack, const PipelineConfig& config, Rng& rng,
                                     bool use_halving_recursion, double max_bad) {
    std::vector<int> all(c.n);
    for (int v = 0; v < c.n; ++v) all[v] = v;
    return good_partition_on(c, all, block_sizes, k_min, slack, config, rng, use_halving_recursion,
                             max_bad);
}

Result<std::vector<int>> sample_degree_preserving_subset(const GraphCollection& c,
                                                         const std::vector<int>& source_set, int size,
                                                         int pinned_vertex, double slack,
                                                         const PipelineConfig& config, Rng& rng) {
    if (size > static_cast<int>(source_set.size()))
        throw std::invalid_argument("sample_degree_preserving_subset: size > |source_set|");
    if (pinned_vertex < 0 || pinned_vertex >= c.n)
        throw std::invalid_argument("sample_degree_preserving_subset: pinned vertex out of range");

    Bitset source = Bitset::of(c.n, source_set);
    double delta_rel = 1.0;
    for (int j = 0; j < c.colour_count(); ++j)
        for (int v = 0; v < c.n; ++v)
            delta_rel = std::min(delta_rel, c.colour(j).degree_in(v, source) /
                                                static_cast<double>(source_set.size()));
    int need = static_cast<int>(std::floor((delta_rel - slack) * size));

    int worst_have = -1, worst_colour = -1;
    for (int attempt = 0; attempt < config.retries; ++attempt) {
        std::vector<int> a = rng.sample(source_set, static_cast<std::size_t>(size));
        std::sort(a.begin(), a.end());
        Bitset sub = Bitset::of(c.n, a);
        sub.set(pinned_vertex);
        bool ok = true;
        for (int j = 0; j < c.colour_count() && ok; ++j) {
            int have = c.colour(j).min_degree_within(sub);
            if (have < need) {
                ok = false;
                if (have > worst_have) {
                    worst_have = have;
                    worst_colour = j;
                }
            }
        }
        if (ok) return a;
    }
    return Result<std::vector<int>>::fail(
        FailKind::retries_exhausted, "",
        "after " + std::to_string(config.retries) + " attempts; best failing colour " +
            std::to_string(worst_colour) + " had induced min degree " + std::to_string(worst_have) +
            " < required " + std::to_string(need));
}

} // namespace transversal
