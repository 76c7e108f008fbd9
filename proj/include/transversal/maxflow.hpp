#pragma once

#include <vector>

namespace transversal {

// Dinic's algorithm on unit-ish integer capacities. Small graphs only; the
// connectivity and absorber kernels need exactness, not asymptotics.
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(n, -1) {}

    int add_node() {
        head_.push_back(-1);
        return static_cast<int>(head_.size()) - 1;
    }

    // returns edge id; reverse edge is id^1
    int add_edge(int from, int to, int cap) {
        edges_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
        return static_cast<int>(edges_.size()) - 2;
    }

    int run(int s, int t, int limit = 1 << 30);

    int flow_on(int edge_id) const; // flow pushed through a forward edge

    // nodes reachable from s in the residual graph (call after run)
    std::vector<bool> min_cut_side(int s) const;

    struct Edge {
        int to, next, cap;
    };
    const std::vector<Edge>& edges() const { return edges_; }

private:
    bool bfs(int s, int t);
    int dfs(int v, int t, int pushed);

    std::vector<int> head_;
    std::vector<Edge> edges_;
    std::vector<int> level_, iter_;
    std::vector<int> initial_cap_;
};

} // namespace transversal
