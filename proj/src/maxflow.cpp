#include "transversal/maxflow.hpp"

#include <algorithm>
#include <queue>

namespace transversal {

bool MaxFlow::bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e = head_[v]; e != -1; e = edges_[e].next) {
            if (edges_[e].cap > 0 && level_[edges_[e].to] == -1) {
                level_[edges_[e].to] = level_[v] + 1;
                q.push(edges_[e].to);
            }
        }
    }
    return level_[t] != -1;
}

int MaxFlow::dfs(int v, int t, int pushed) {
    if (v == t) return pushed;
    for (int& e = iter_[v]; e != -1; e = edges_[e].next) {
        Edge& ed = edges_[e];
        if (ed.cap > 0 && level_[ed.to] == level_[v] + 1) {
            int got = dfs(ed.to, t, std::min(pushed, ed.cap));
            if (got > 0) {
                ed.cap -= got;
                edges_[e ^ 1].cap += got;
                return got;
            }
        }
    }
    return 0;
}

int MaxFlow::run(int s, int t, int limit) {
    if (initial_cap_.empty()) {
        initial_cap_.resize(edges_.size());
        for (std::size_t i = 0; i < edges_.size(); ++i) initial_cap_[i] = edges_[i].cap;
    }
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
        iter_ = head_;
        int f;
        while (flow < limit && (f = dfs(s, t, limit - flow)) > 0) flow += f;
    }
    return flow;
}

int MaxFlow::flow_on(int edge_id) const {
    return initial_cap_[edge_id] - edges_[edge_id].cap;
}

std::vector<bool> MaxFlow::min_cut_side(int s) const {
    std::vector<bool> side(head_.size(), false);
    std::queue<int> q;
    side[s] = true;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e = head_[v]; e != -1; e = edges_[e].next)
            if (edges_[e].cap > 0 && !side[edges_[e].to]) {
                side[edges_[e].to] = true;
                q.push(edges_[e].to);
            }
    }
    return side;
}

} // namespace transversal
