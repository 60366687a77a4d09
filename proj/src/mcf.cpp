#include "ct/mcf.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace ct {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

struct ResidualArc {
    int to;
    long long cap;
    long long cost;
    int rev;        // index of the reverse arc in graph[to]
    int orig = -1;  // input arc index, -1 for reverse arcs
};

}  // namespace

std::optional<FlowResult> solve_min_cost_flow(const FlowNetwork& net) {
    int n = net.node_count;
    if (n <= 0) throw std::invalid_argument("empty network");
    if (net.source < 0 || net.source >= n || net.sink < 0 || net.sink >= n)
        throw std::invalid_argument("source or sink out of range");
    if (net.source == net.sink) throw std::invalid_argument("source equals sink");
    if (net.demand < 0) throw std::invalid_argument("negative demand");

    std::vector<std::vector<ResidualArc>> g(n);
    for (int i = 0; i < (int)net.arcs.size(); ++i) {
        const FlowArc& a = net.arcs[i];
        if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
            throw std::invalid_argument("arc endpoint out of range");
        if (a.from == a.to) throw std::invalid_argument("self-loop arc");
        if (a.capacity < 0) throw std::invalid_argument("negative capacity");
        if (a.cost < 0) throw std::invalid_argument("negative cost");
        g[a.from].push_back({a.to, a.capacity, a.cost, (int)g[a.to].size(), i});
        g[a.to].push_back({a.from, 0, -a.cost, (int)g[a.from].size() - 1, -1});
    }

    std::vector<long long> potential(n, 0);  // costs non-negative, so 0 is valid
    std::vector<long long> dist(n);
    std::vector<int> prev_node(n), prev_arc(n);

    long long remaining = net.demand;
    long long total_cost = 0;
    while (remaining > 0) {
        std::fill(dist.begin(), dist.end(), kInf);
        dist[net.source] = 0;
        using Item = std::pair<long long, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        pq.push({0, net.source});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u]) continue;
            for (int i = 0; i < (int)g[u].size(); ++i) {
                const ResidualArc& a = g[u][i];
                if (a.cap <= 0) continue;
                long long nd = d + a.cost + potential[u] - potential[a.to];
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    prev_node[a.to] = u;
                    prev_arc[a.to] = i;
                    pq.push({nd, a.to});
                }
            }
        }
        if (dist[net.sink] >= kInf) return std::nullopt;
        for (int v = 0; v < n; ++v)
            if (dist[v] < kInf) potential[v] += dist[v];

        long long push = remaining;
        for (int v = net.sink; v != net.source; v = prev_node[v])
            push = std::min(push, g[prev_node[v]][prev_arc[v]].cap);
        for (int v = net.sink; v != net.source; v = prev_node[v]) {
            ResidualArc& a = g[prev_node[v]][prev_arc[v]];
            a.cap -= push;
            g[v][a.rev].cap += push;
            total_cost += push * a.cost;
        }
        remaining -= push;
    }

    FlowResult res;
    res.flow.assign(net.arcs.size(), 0);
    for (int u = 0; u < n; ++u)
        for (const ResidualArc& a : g[u])
            if (a.orig >= 0) res.flow[a.orig] = net.arcs[a.orig].capacity - a.cap;
    res.total_cost = total_cost;
    return res;
}

}  // namespace ct
