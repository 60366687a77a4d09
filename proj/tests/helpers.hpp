#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ct/election.hpp"

namespace ct::testing {

// Election from (ranking, copies) blocks; every party runs unless a mask
// says otherwise. Voter ids are v1, v2, ...
inline ct::Election build_election(std::vector<std::string> names, ct::Rational tau,
                                   const std::vector<std::pair<std::vector<int>, int>>& blocks,
                                   std::vector<char> running = {}) {
    ct::Election e;
    e.universe = ct::PartyUniverse::of(std::move(names));
    e.running = running.empty() ? std::vector<char>(e.universe.size(), 1) : std::move(running);
    e.tau = tau;
    int next = 0;
    for (const auto& [order, copies] : blocks)
        for (int i = 0; i < copies; ++i) {
            ct::Voter v;
            v.id = "v" + std::to_string(++next);
            v.order.ranking.assign(order.begin(), order.end());
            e.voters.push_back(std::move(v));
        }
    return e;
}

// The five-party worked example: 75 voters, threshold 3/20, coalition
// {p1, c1, c2} against {o1, o2}.
inline ct::Election sample_parliament() {
    return build_election({"p1", "c1", "c2", "o1", "o2"}, ct::Rational(3, 20),
                          {{{0, 3, 1, 2, 4}, 20},
                           {{1, 3, 0, 2, 4}, 10},
                           {{3, 1, 0, 2, 4}, 20},
                           {{4, 2, 0, 1, 3}, 20},
                           {{3, 0, 1, 2, 4}, 5}});
}

inline ct::Goal sample_goal() {
    ct::Goal g;
    g.coalition = {0, 1, 2};
    g.favored = 0;
    g.phi = ct::Rational(1, 2);
    g.rho = ct::Rational(1, 2);
    return g;
}

// Uniform permutation of 0..m-1 via Fisher-Yates on raw engine draws, so
// results are identical across standard library implementations.
inline ct::PreferenceOrder random_order(std::mt19937_64& rng, int m) {
    std::vector<ct::Party> r(m);
    for (int i = 0; i < m; ++i) r[i] = i;
    for (int i = m - 1; i > 0; --i) {
        int j = (int)(rng() % (unsigned long long)(i + 1));
        std::swap(r[i], r[j]);
    }
    return ct::PreferenceOrder{std::move(r)};
}

inline long long random_below(std::mt19937_64& rng, long long n) {
    return (long long)(rng() % (unsigned long long)n);
}

// Random election over m parties named q1..qm: uniform orders, each party
// running with probability 3/4, at least one running.
inline ct::Election random_election(std::mt19937_64& rng, int n, int m, ct::Rational tau) {
    ct::Election e;
    std::vector<std::string> names;
    for (int p = 0; p < m; ++p) names.push_back("q" + std::to_string(p + 1));
    e.universe = ct::PartyUniverse::of(std::move(names));
    e.running.assign(m, 0);
    for (int p = 0; p < m; ++p) e.running[p] = rng() % 4 != 0 ? 1 : 0;
    e.running[random_below(rng, m)] = 1;
    e.tau = tau;
    for (int i = 0; i < n; ++i)
        e.voters.push_back({"v" + std::to_string(i + 1), random_order(rng, m)});
    return e;
}

}  // namespace ct::testing
