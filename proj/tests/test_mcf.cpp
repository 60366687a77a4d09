#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "ct/mcf.hpp"

using namespace ct;

namespace {

// Checks conservation at every node and the exact demand at the endpoints.
bool flow_valid(const FlowNetwork& net, const std::vector<long long>& flow) {
    if (flow.size() != net.arcs.size()) return false;
    std::vector<long long> net_out(net.node_count, 0);
    for (size_t i = 0; i < flow.size(); ++i) {
        if (flow[i] < 0 || flow[i] > net.arcs[i].capacity) return false;
        net_out[net.arcs[i].from] += flow[i];
        net_out[net.arcs[i].to] -= flow[i];
    }
    for (int v = 0; v < net.node_count; ++v) {
        long long want = v == net.source ? net.demand : v == net.sink ? -net.demand : 0;
        if (net_out[v] != want) return false;
    }
    return true;
}

long long flow_cost(const FlowNetwork& net, const std::vector<long long>& flow) {
    long long c = 0;
    for (size_t i = 0; i < flow.size(); ++i) c += flow[i] * net.arcs[i].cost;
    return c;
}

// Exhaustive minimum over every per-arc flow assignment.
std::optional<long long> enumerate_min_cost(const FlowNetwork& net) {
    std::vector<long long> flow(net.arcs.size(), 0);
    std::optional<long long> best;
    while (true) {
        if (flow_valid(net, flow)) {
            long long c = flow_cost(net, flow);
            if (!best || c < *best) best = c;
        }
        size_t i = 0;
        while (i < flow.size() && flow[i] == net.arcs[i].capacity) flow[i++] = 0;
        if (i == flow.size()) break;
        flow[i]++;
    }
    return best;
}

FlowNetwork random_network(std::mt19937_64& rng) {
    FlowNetwork net;
    net.node_count = 2 + (int)(rng() % 3);
    net.source = 0;
    net.sink = net.node_count - 1;
    net.demand = (long long)(rng() % 4);
    int arcs = 1 + (int)(rng() % 6);
    for (int i = 0; i < arcs; ++i) {
        FlowArc a;
        a.from = (int)(rng() % net.node_count);
        do {
            a.to = (int)(rng() % net.node_count);
        } while (a.to == a.from);
        a.capacity = (long long)(rng() % 3);
        a.cost = (long long)(rng() % 6);
        net.arcs.push_back(a);
    }
    return net;
}

}  // namespace

TEST_CASE("single arc routes its capacity at its price") {
    FlowNetwork net;
    net.node_count = 2;
    net.source = 0;
    net.sink = 1;
    net.demand = 1;
    net.arcs = {{0, 1, 1, 5}};
    auto r = solve_min_cost_flow(net);
    REQUIRE(r.has_value());
    CHECK(r->total_cost == 5);
    CHECK(r->flow == std::vector<long long>({1}));

    net.demand = 2;  // over capacity
    CHECK_FALSE(solve_min_cost_flow(net).has_value());
}

TEST_CASE("zero demand costs nothing") {
    FlowNetwork net;
    net.node_count = 2;
    net.source = 0;
    net.sink = 1;
    net.demand = 0;
    net.arcs = {{0, 1, 1, 5}};
    auto r = solve_min_cost_flow(net);
    REQUIRE(r.has_value());
    CHECK(r->total_cost == 0);
}

TEST_CASE("diamond picks the cheap path first") {
    FlowNetwork net;
    net.node_count = 4;
    net.source = 0;
    net.sink = 3;
    net.arcs = {{0, 1, 1, 1}, {0, 2, 1, 2}, {1, 3, 1, 3}, {2, 3, 1, 4}};

    net.demand = 1;
    auto one = solve_min_cost_flow(net);
    REQUIRE(one.has_value());
    CHECK(one->total_cost == 4);  // top path 1 + 3

    net.demand = 2;
    auto two = solve_min_cost_flow(net);
    REQUIRE(two.has_value());
    CHECK(two->total_cost == 10);  // both paths saturated
    CHECK(flow_valid(net, two->flow));
}

TEST_CASE("malformed networks are rejected") {
    FlowNetwork net;
    net.node_count = 2;
    net.source = 0;
    net.sink = 1;
    net.demand = 1;

    net.arcs = {{0, 0, 1, 1}};
    CHECK_THROWS_AS(solve_min_cost_flow(net), std::invalid_argument);
    net.arcs = {{0, 5, 1, 1}};
    CHECK_THROWS_AS(solve_min_cost_flow(net), std::invalid_argument);
    net.arcs = {{0, 1, -1, 1}};
    CHECK_THROWS_AS(solve_min_cost_flow(net), std::invalid_argument);
    net.arcs = {{0, 1, 1, -1}};
    CHECK_THROWS_AS(solve_min_cost_flow(net), std::invalid_argument);
}

TEST_CASE("solver matches exhaustive enumeration on small networks") {
    std::mt19937_64 rng(2024);
    int feasible_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        FlowNetwork net = random_network(rng);
        auto expect = enumerate_min_cost(net);
        auto got = solve_min_cost_flow(net);
        REQUIRE(expect.has_value() == got.has_value());
        if (expect) {
            CHECK(got->total_cost == *expect);
            CHECK(flow_valid(net, got->flow));
            CHECK(flow_cost(net, got->flow) == got->total_cost);
            feasible_seen++;
        } else {
            infeasible_seen++;
        }
    }
    CHECK(feasible_seen > 50);
    CHECK(infeasible_seen > 50);
}
