#include "transversal/factor_spec.hpp"

#include <algorithm>
#include <functional>

namespace transversal {

bool graph_has_bridge(const Graph& g) {
    int n = g.size();
    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0;
    bool bridge = false;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge_to) {
        disc[v] = low[v] = timer++;
        g.neighbours(v).for_each([&](int w) {
            if (bridge) return;
            if (w == parent_edge_to) return;
            if (disc[w] != -1) {
                low[v] = std::min(low[v], disc[w]);
            } else {
                dfs(w, v);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v]) bridge = true;
            }
        });
    };
    for (int v = 0; v < n && !bridge; ++v)
        if (disc[v] == -1) dfs(v, -1);
    return bridge;
}

namespace {

bool colourable(const Graph& g, int k) {
    int n = g.size();
    std::vector<int> col(n, -1);
    std::function<bool(int)> rec = [&](int v) {
        if (v == n) return true;
        int cap = std::min(k, v + 1); // first vertex colour 0, etc.
        for (int ci = 0; ci < cap; ++ci) {
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (col[u] == ci && g.has_edge(u, v)) ok = false;
            if (!ok) continue;
            col[v] = ci;
            if (rec(v + 1)) return true;
            col[v] = -1;
        }
        return false;
    };
    return rec(0);
}

} // namespace

int chromatic_number(const Graph& g) {
    if (g.edge_count() == 0) return g.size() > 0 ? 1 : 0;
    for (int k = 2; k <= g.size(); ++k)
        if (colourable(g, k)) return k;
    return g.size();
}

Result<FactorSpec> FactorSpec::make(std::string name, Graph f, int t, double delta_f,
                                    double delta_p_f) {
    if (f.edge_count() < 1)
        return Result<FactorSpec>::fail(FailKind::bad_input, "", "F must have at least one edge");
    if (t != 1 && t != f.edge_count())
        return Result<FactorSpec>::fail(FailKind::bad_input, "", "t must be 1 or e(F)");
    FactorSpec s;
    s.name = std::move(name);
    s.has_bridge = graph_has_bridge(f);
    s.chi = chromatic_number(f);
    s.f = std::move(f);
    s.t = t;
    s.delta_f = delta_f;
    s.delta_p_f = delta_p_f;
    if (s.chi >= 2 && delta_f < 1.0 - 1.0 / (s.chi - 1) - 1e-12)
        return Result<FactorSpec>::fail(FailKind::bad_input, "",
                                        "delta_F below the chromatic lower bound 1 - 1/(chi-1)");
    s.delta_t_f = (t == 1 || s.has_bridge || s.delta_f >= 0.5) ? s.delta_f : 0.5;
    return s;
}

Result<FactorSpec> builtin_spec(const std::string& name, int t) {
    auto fail = [&](const std::string& why) {
        return Result<FactorSpec>::fail(FailKind::bad_input, "", "unsupported F \"" + name + "\": " + why);
    };
    Graph f;
    double delta_f = 0, delta_p = 0;
    if (name.size() >= 2 && name[0] == 'K' && name.find(',') != std::string::npos) {
        int a = 0, b = 0;
        {
            auto comma = name.find(',');
            try {
                a = std::stoi(name.substr(1, comma - 1));
                b = std::stoi(name.substr(comma + 1));
            } catch (...) {
                return fail("bad bipartite sizes");
            }
        }
        if (a == 1) {
            if (b < 1 || b > 5) return fail("stars supported up to K1,5");
            f = Graph::star(b);
            // plug-in table: K1,1 = single edge, K1,2 = path on 3 vertices,
            // larger stars sit at 1/2
            delta_f = (b == 1) ? 0.5 : (b == 2 ? 1.0 / 3.0 : 0.5);
            delta_p = std::max(delta_f, 0.5);
        } else if (a == b && a >= 2 && a <= 4) {
            // balanced bicliques (the patterned counterexample shape); plug-in
            // threshold at the bipartite value 1/2
            f = Graph(2 * a);
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < a; ++j) f.add_edge(i, a + j);
            delta_f = 0.5;
            delta_p = 0.5;
        } else {
            return fail("bipartite F supported as K1,s (s <= 5) or Kt,t (t <= 4)");
        }
    } else if (name.size() >= 2 && (name[0] == 'K' || name[0] == 'C' || name[0] == 'P')) {
        int k = 0;
        try { k = std::stoi(name.substr(1)); } catch (...) { return fail("bad size"); }
        switch (name[0]) {
            case 'K':
                if (k < 2 || k > 6) return fail("cliques supported up to K6");
                f = Graph::complete(k);
                delta_f = 1.0 - 1.0 / k;
                delta_p = delta_f;
                break;
            case 'C':
                if (k < 3 || k > 8) return fail("cycles supported up to C8");
                f = Graph::cycle(k);
                delta_f = (k % 2 == 0) ? 0.5 : (k + 1.0) / (2.0 * k);
                delta_p = (1.0 + 1.0 / k) / 2.0;
                break;
            case 'P':
                if (k < 2 || k > 8) return fail("paths supported up to P8");
                f = Graph::path(k);
                delta_f = (k % 2 == 0) ? 0.5 : static_cast<double>(k / 2) / k;
                delta_p = std::max(delta_f, 0.5);
                break;
        }
    } else {
        return fail("expected K<r>, C<k>, P<k> or K1,<s>");
    }
    if (t == 0) t = f.edge_count(); // convenience default: rainbow copies
    return FactorSpec::make(name, std::move(f), t, delta_f, delta_p);
}

} // namespace transversal
