#pragma once

#include <array>
#include <string>
#include <vector>

#include "ct/bribery.hpp"
#include "ct/party_control.hpp"

namespace ct {

struct Graph {
    std::vector<std::string> vertices;        // declaration order is canonical
    std::vector<std::pair<int, int>> edges;   // lower index first, sorted, unique

    // Edge list: one "u v" pair per line, a single token declares an
    // isolated vertex, '#' starts a comment. Self-loops are rejected,
    // repeated edges collapse.
    static Graph from_edge_list(const std::string& text);
    std::string to_edge_list() const;

    int num_vertices() const { return (int)vertices.size(); }
    int num_edges() const { return (int)edges.size(); }
    bool adjacent(int a, int b) const;
    void validate() const;
};

struct ExactCoverInstance {
    std::vector<std::string> elements;
    std::vector<std::array<int, 4>> subsets;  // ascending element indices

    // Every element must sit in exactly three subsets (so the subset count
    // is 3|Z|/4 and |Z| is a multiple of 4).
    void validate() const;
};

// Cover search as slope-1 shift bribery: one coalition party per subset,
// one opposition anchor everyone tops, 3|Z| filler parties that price
// non-cover bribes above the budget of 3|Z|. Feasible iff a cover exists.
BriberyInstance exact_cover_to_shift(const ExactCoverInstance& cover);

// k-clique as deleting k coalition parties under a joint share and ratio
// goal at tau = 0: per edge, one voter ranks the endpoint parties first, so
// the favored party gains a vote only when both endpoints disappear.
PartyControlInstance clique_to_dcp_jf(const Graph& g, int k);

// k-clique as deleting k coalition parties under a share goal with a
// threshold that exactly the endpoint gains can clear.
PartyControlInstance clique_to_dcp_j_threshold(const Graph& g, int k);

// k-clique as deleting k opposition parties: the coalition is the favored
// party alone and collects one vote per edge inside the deleted set.
PartyControlInstance clique_to_dop(const Graph& g, int k);

// Dominating set as adding k coalition spoiler parties at tau = 0: each
// vertex voter tops its closed neighborhood, so coverage flips that vote
// into the coalition.
PartyControlInstance domset_to_acp(const Graph& g, int k);

// Dominating set as adding k opposition spoiler parties above a 2/5
// threshold: covered vertex voters move onto spoilers that stay inactive,
// shrinking the active opposition.
PartyControlInstance domset_to_aop_threshold(const Graph& g, int k);

// Dominating set as adding k opposition spoiler parties under a joint
// share and ratio goal at tau = 0: coverage drains the oversized coalition
// partner without touching the favored party.
PartyControlInstance domset_to_aop_jf(const Graph& g, int k);

// Source-problem oracles for the reductions above. They refuse graphs with
// more vertices (or cover instances with more subsets) than `guard`; pass
// -1 to read COALITION_TACTICS_GUARD, default 12.
bool brute_force_clique(const Graph& g, int k, int guard = -1);
bool brute_force_domset(const Graph& g, int k, int guard = -1);
bool brute_force_exact_cover(const ExactCoverInstance& cover, int guard = -1);

}  // namespace ct
