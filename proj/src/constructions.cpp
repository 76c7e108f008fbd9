#include "transversal/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace transversal {

Result<GraphCollection> bridgeless_lower_bound(const FactorSpec& spec, int n_copies) {
    if (spec.has_bridge)
        return Result<GraphCollection>::fail(FailKind::bad_input, "",
                                             "construction needs a bridgeless F");
    if (spec.t != spec.edges())
        return Result<GraphCollection>::fail(FailKind::bad_input, "",
                                             "construction targets t = e(F)");
    if (n_copies < 1)
        return Result<GraphCollection>::fail(FailKind::bad_input, "", "need n_copies >= 1");
    int rn = spec.r() * n_copies;
    int m = spec.t * n_copies;
    int half = rn / 2;
    GraphCollection c(rn, m);
    for (int i = 0; i + 1 < m; ++i) {
        for (int u = 0; u < rn; ++u)
            for (int v = u + 1; v < rn; ++v)
                if ((u < half) == (v < half)) c.colour(i).add_edge(u, v);
    }
    for (int u = 0; u < half; ++u)
        for (int v = half; v < rn; ++v) c.colour(m - 1).add_edge(u, v);
    return c;
}

std::vector<std::vector<std::pair<int, int>>> round_robin_one_factorization(int v) {
    if (v < 2 || v % 2) throw std::invalid_argument("round robin needs even v >= 2");
    std::vector<std::vector<std::pair<int, int>>> rounds;
    int mod = v - 1;
    for (int r = 0; r < mod; ++r) {
        std::vector<std::pair<int, int>> match;
        match.emplace_back(std::min(v - 1, r), std::max(v - 1, r));
        for (int i = 1; i <= v / 2 - 1; ++i) {
            int a = (r + i) % mod, b = (r - i + mod) % mod;
            match.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(match.begin(), match.end());
        rounds.push_back(std::move(match));
    }
    return rounds;
}

namespace {

// exact part-level search for a psi-respecting K_{t,t} copy; sound because the
// construction's adjacency depends only on the parts and parts are large
bool parts_admit_copy(int t, int k, const std::vector<int>& psi,
                      const std::vector<std::vector<int>>& label, const std::vector<int>& part_size) {
    int parts = k + 1;
    std::vector<int> p(t, -1), q(t, -1), load(parts, 0);
    std::function<bool(int)> assign_q = [&](int j) {
        if (j == t) return true;
        for (int part = 0; part < parts; ++part) {
            if (load[part] + 1 > part_size[part]) continue;
            bool ok = true;
            for (int i = 0; i < t && ok; ++i) {
                if (p[i] == part) ok = false; // A and B images may not share a part
                else if (label[p[i]][part] == psi[i * t + j]) ok = false;
            }
            if (!ok) continue;
            q[j] = part;
            ++load[part];
            if (assign_q(j + 1)) return true;
            --load[part];
            q[j] = -1;
        }
        return false;
    };
    std::function<bool(int)> assign_p = [&](int i) {
        if (i == t) return assign_q(0);
        for (int part = 0; part < parts; ++part) {
            if (load[part] + 1 > part_size[part]) continue;
            p[i] = part;
            ++load[part];
            if (assign_p(i + 1)) return true;
            --load[part];
            p[i] = -1;
        }
        return false;
    };
    return assign_p(0);
}

bool property_r_holds(int t, int k, int floor_size, const std::vector<int>& psi) {
    // subsets of exact size floor_size suffice: supersets inherit coverage
    std::vector<int> a_idx, b_idx;
    std::function<bool(std::vector<int>&, int, int)> subsets_ok;
    std::vector<int> asub, bsub;
    std::function<bool(int, int)> rec_b = [&](int start, int picked) {
        if (picked == floor_size) {
            Bitset seen(k);
            for (int i : asub)
                for (int j : bsub) seen.set(psi[i * t + j]);
            return seen.count() == k;
        }
        for (int j = start; j <= t - (floor_size - picked); ++j) {
            bsub.push_back(j);
            if (!rec_b(j + 1, picked + 1)) { bsub.pop_back(); return false; }
            bsub.pop_back();
        }
        return true;
    };
    std::function<bool(int, int)> rec_a = [&](int start, int picked) {
        if (picked == floor_size) return rec_b(0, 0);
        for (int i = start; i <= t - (floor_size - picked); ++i) {
            asub.push_back(i);
            if (!rec_a(i + 1, picked + 1)) { asub.pop_back(); return false; }
            asub.pop_back();
        }
        return true;
    };
    return rec_a(0, 0);
}

} // namespace

Result<PatternedCounterexample> patterned_counterexample(int t, int k, int n,
                                                         const PipelineConfig& config, Rng& rng) {
    using R = Result<PatternedCounterexample>;
    if (k % 2 == 0 || k < 1) return R::fail(FailKind::bad_input, "", "k must be odd");
    if (t < 1) return R::fail(FailKind::bad_input, "", "t must be >= 1");
    if (n < k + 1) return R::fail(FailKind::bad_input, "", "need n >= k+1");

    int parts = k + 1;
    // nearly balanced lexicographic partition
    std::vector<int> part_of(n), part_size(parts, 0);
    {
        int base = n / parts, rem = n % parts, v = 0;
        for (int pt = 0; pt < parts; ++pt) {
            int sz = base + (pt < rem ? 1 : 0);
            part_size[pt] = sz;
            for (int i = 0; i < sz; ++i) part_of[v++] = pt;
        }
    }
    auto rounds = round_robin_one_factorization(parts);
    std::vector<std::vector<int>> label(parts, std::vector<int>(parts, -1));
    for (int mi = 0; mi < k; ++mi)
        for (auto [a, b] : rounds[mi]) label[a][b] = label[b][a] = mi;

    int m = t * t;
    int floor0 = std::max(1, static_cast<int>(std::ceil(t / (10.0 * k))));
    int attempts = 0;
    // property-R labellings are rare at small t; sample wide, but try the
    // cyclic labelling first since it satisfies R whenever anything does
    long long sample_budget = std::max<long long>(50'000, config.retries);
    for (int floor_size = floor0; floor_size <= t; ++floor_size) {
        for (long long a = 0; a < sample_budget; ++a) {
            ++attempts;
            std::vector<int> psi(m);
            if (a == 0) {
                for (int i = 0; i < t; ++i)
                    for (int j = 0; j < t; ++j) psi[i * t + j] = (i + j) % k;
            } else {
                for (int& x : psi) x = rng.range(0, k);
            }
            if (!property_r_holds(t, k, floor_size, psi)) continue;
            if (parts_admit_copy(t, k, psi, label, part_size)) continue;

            PatternedCounterexample out;
            out.collection = GraphCollection(n, m);
            for (int i = 0; i < m; ++i) {
                Graph& g = out.collection.colour(i);
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) {
                        if (part_of[u] == part_of[v]) continue;
                        if (label[part_of[u]][part_of[v]] == psi[i]) continue;
                        g.add_edge(u, v);
                    }
            }
            out.f = Graph(2 * t);
            for (int i = 0; i < t; ++i)
                for (int j = 0; j < t; ++j) out.f.add_edge(i, t + j);
            out.pattern.resize(m);
            for (int i = 0; i < m; ++i) out.pattern[i] = i;
            out.psi = std::move(psi);
            out.part_of = part_of;
            out.floor_used = floor_size;
            out.attempts = attempts;
            out.min_degree = min_degree(out.collection);
            return out;
        }
    }
    return R::fail(FailKind::property_r_unattainable, "",
                   "no psi with property R and no part-level copy after " +
                       std::to_string(attempts) + " attempts (floors " + std::to_string(floor0) +
                       ".." + std::to_string(t) + ")");
}

Graph random_gnp(int n, double p, Rng& rng) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) g.add_edge(u, v);
    return g;
}

RandomModel parse_random_model(const std::string& name) {
    if (name == "identical") return RandomModel::identical;
    if (name == "iid_gnp") return RandomModel::iid_gnp;
    if (name == "shared_base_plus_noise") return RandomModel::shared_base_plus_noise;
    if (name == "min_degree_conditioned") return RandomModel::min_degree_conditioned;
    throw std::invalid_argument("unknown random model: " + name);
}

std::string random_model_name(RandomModel m) {
    switch (m) {
        case RandomModel::identical: return "identical";
        case RandomModel::iid_gnp: return "iid_gnp";
        case RandomModel::shared_base_plus_noise: return "shared_base_plus_noise";
        case RandomModel::min_degree_conditioned: return "min_degree_conditioned";
    }
    return "?";
}

Result<GraphCollection> random_collection(int n, int m, RandomModel model, const RandomParams& params,
                                          std::uint64_t seed) {
    Rng rng(Rng::derive(seed, 0xC0111EC7));
    GraphCollection c(n, m);
    switch (model) {
        case RandomModel::identical: {
            Graph base = params.complete_base ? Graph::complete(n) : random_gnp(n, params.p, rng);
            for (int i = 0; i < m; ++i) c.colour(i) = base;
            break;
        }
        case RandomModel::iid_gnp: {
            for (int i = 0; i < m; ++i) c.colour(i) = random_gnp(n, params.p, rng);
            break;
        }
        case RandomModel::shared_base_plus_noise: {
            Graph base = random_gnp(n, params.p, rng);
            for (int i = 0; i < m; ++i) {
                Graph g = base;
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v)
                        if (!g.has_edge(u, v) && rng.chance(params.q)) g.add_edge(u, v);
                c.colour(i) = g;
            }
            break;
        }
        case RandomModel::min_degree_conditioned: {
            for (int i = 0; i < m; ++i) {
                bool ok = false;
                for (int a = 0; a < params.resample_budget && !ok; ++a) {
                    Graph g = random_gnp(n, params.p, rng);
                    if (g.min_degree() >= params.min_degree_target) {
                        c.colour(i) = std::move(g);
                        ok = true;
                    }
                }
                if (!ok)
                    return Result<GraphCollection>::fail(
                        FailKind::retries_exhausted, "",
                        "colour " + std::to_string(i) + ": no sample reached min degree " +
                            std::to_string(params.min_degree_target) + " in " +
                            std::to_string(params.resample_budget) + " tries at p=" +
                            std::to_string(params.p));
            }
            break;
        }
    }
    return c;
}

Result<GraphCollection> dirac_shell_collection(int n, int m, int target, double noise_rate,
                                               std::uint64_t seed, int budget) {
    using R = Result<GraphCollection>;
    if (target < 1 || target >= n) return R::fail(FailKind::bad_input, "", "need 1 <= target < n");
    int a = std::min(target, n - target);
    int b = n - a;
    int need = std::max(0, target - a); // extra inside-B degree the noise must supply
    double q = noise_rate;
    if (need > 0 && b > 1) q = std::max(q, static_cast<double>(need) / (b - 1) + 0.15);

    Rng rng(Rng::derive(seed, 0xD12AC));
    for (int attempt = 0; attempt < budget; ++attempt) {
        Graph g(n);
        for (int u = 0; u < a; ++u)
            for (int v = a; v < n; ++v) g.add_edge(u, v);
        for (int u = a; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(q)) g.add_edge(u, v);
        if (g.min_degree() < target) continue;
        GraphCollection c(n, m);
        for (int i = 0; i < m; ++i) c.colour(i) = g;
        return c;
    }
    return R::fail(FailKind::retries_exhausted, "",
                   "no sample met min degree " + std::to_string(target) + " in " +
                       std::to_string(budget) + " tries");
}

Result<Graph> random_tree(int n, int max_degree, Rng& rng, int budget) {
    if (n < 1) return Result<Graph>::fail(FailKind::bad_input, "", "need n >= 1");
    if (max_degree > 0 && max_degree < 2 && n > 2)
        return Result<Graph>::fail(FailKind::bad_input, "", "max degree < 2 only fits paths");
    for (int a = 0; a < budget; ++a) {
        Graph g(n);
        if (n == 1) return g;
        if (n == 2) {
            g.add_edge(0, 1);
            return g;
        }
        std::vector<int> pruefer(n - 2);
        for (int& x : pruefer) x = rng.range(0, n);
        std::vector<int> degree(n, 1);
        for (int x : pruefer) ++degree[x];
        if (max_degree > 0 && *std::max_element(degree.begin(), degree.end()) > max_degree) continue;
        // decode
        std::vector<int> deg = degree;
        int ptr = 0;
        while (deg[ptr] != 1) ++ptr;
        int leaf = ptr;
        for (int x : pruefer) {
            g.add_edge(leaf, x);
            if (--deg[x] == 1 && x < ptr) {
                leaf = x;
            } else {
                while (deg[++ptr] != 1) {}
                leaf = ptr;
            }
        }
        g.add_edge(leaf, n - 1);
        return g;
    }
    return Result<Graph>::fail(FailKind::retries_exhausted, "",
                               "no tree with max degree <= " + std::to_string(max_degree) +
                                   " in " + std::to_string(budget) + " samples");
}

} // namespace transversal
