#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ct {

struct FlowArc {
    int from = 0;
    int to = 0;
    long long capacity = 0;
    long long cost = 0;  // non-negative
};

struct FlowNetwork {
    int node_count = 0;
    std::vector<FlowArc> arcs;
    int source = 0;
    int sink = 0;
    long long demand = 0;  // exact units that must travel source -> sink
};

struct FlowResult {
    std::vector<long long> flow;  // per arc, same order as the input
    long long total_cost = 0;
};

// Integral min-cost flow of exactly `demand` units via successive shortest
// augmenting paths with node potentials (Dijkstra on reduced costs; valid
// because arc costs are non-negative). Returns nullopt when the demand is
// not routable; throws std::invalid_argument on malformed networks
// (node ids out of range, self-loops, negative capacity or cost).
std::optional<FlowResult> solve_min_cost_flow(const FlowNetwork& net);

}  // namespace ct
