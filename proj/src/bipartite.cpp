#include "transversal/bipartite.hpp"

#include <limits>
#include <queue>

namespace transversal {

namespace {
constexpr int kInf = std::numeric_limits<int>::max();
}

std::vector<int> max_bipartite_matching(const BipartiteGraph& g, const Bitset* right_allowed) {
    std::vector<int> match_l(g.left, -1), match_r(g.right, -1);
    std::vector<int> dist(g.left, 0);

    auto allowed = [&](int r) { return !right_allowed || right_allowed->test(r); };

    auto bfs = [&]() {
        std::queue<int> q;
        bool found = false;
        for (int l = 0; l < g.left; ++l) {
            if (match_l[l] == -1) {
                dist[l] = 0;
                q.push(l);
            } else {
                dist[l] = kInf;
            }
        }
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            bool leaf = false;
            g.adj[l].for_each([&](int r) {
                if (leaf || !allowed(r)) return;
                int l2 = match_r[r];
                if (l2 == -1) {
                    found = true;
                } else if (dist[l2] == kInf) {
                    dist[l2] = dist[l] + 1;
                    q.push(l2);
                }
            });
            (void)leaf;
        }
        return found;
    };

    std::vector<int> it(g.left, 0);
    auto dfs = [&](auto&& self, int l) -> bool {
        for (int r = g.adj[l].next(it[l]); r != -1; r = g.adj[l].next(it[l])) {
            it[l] = r + 1;
            if (!allowed(r)) continue;
            int l2 = match_r[r];
            if (l2 == -1 || (dist[l2] == dist[l] + 1 && self(self, l2))) {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        dist[l] = kInf;
        return false;
    };

    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (int l = 0; l < g.left; ++l)
            if (match_l[l] == -1) dfs(dfs, l);
    }
    return match_l;
}

int matching_size(const std::vector<int>& match_of_left) {
    int s = 0;
    for (int r : match_of_left)
        if (r != -1) ++s;
    return s;
}

bool has_left_perfect_matching(const BipartiteGraph& g, const Bitset* right_allowed) {
    return matching_size(max_bipartite_matching(g, right_allowed)) == g.left;
}

} // namespace transversal
