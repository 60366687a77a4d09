#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ct/reductions.hpp"
#include "helpers.hpp"

using namespace ct;

namespace {

Graph k3() { return Graph::from_edge_list("a b\nb c\na c\n"); }
Graph p3() { return Graph::from_edge_list("a b\nb c\n"); }
Graph k4() { return Graph::from_edge_list("a b\na c\na d\nb c\nb d\nc d\n"); }
Graph star() { return Graph::from_edge_list("hub x\nhub y\nhub z\n"); }
Graph two_edges() { return Graph::from_edge_list("a b\nc d\n"); }

Graph random_graph(std::mt19937_64& rng) {
    Graph g;
    int nv = 2 + (int)(rng() % 5);
    for (int i = 0; i < nv; ++i) g.vertices.push_back("g" + std::to_string(i + 1));
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (rng() % 2) g.edges.emplace_back(i, j);
    if (g.edges.empty()) g.edges.emplace_back(0, 1);
    g.validate();
    return g;
}

ExactCoverInstance cover_instance(std::vector<std::array<int, 4>> subsets) {
    ExactCoverInstance cover;
    for (int i = 0; i < 8; ++i) cover.elements.push_back("z" + std::to_string(i + 1));
    cover.subsets = std::move(subsets);
    return cover;
}

// Three complementary pairs: covers abound.
ExactCoverInstance planted_cover() {
    return cover_instance({{{0, 1, 2, 3}},
                           {{4, 5, 6, 7}},
                           {{0, 1, 4, 5}},
                           {{2, 3, 6, 7}},
                           {{0, 2, 4, 6}},
                           {{1, 3, 5, 7}}});
}

// Valid multiplicities but no two subsets are complementary, so no pair can
// partition all eight elements.
ExactCoverInstance coverless() {
    return cover_instance({{{0, 2, 4, 5}},
                           {{0, 1, 4, 6}},
                           {{0, 3, 4, 7}},
                           {{2, 3, 5, 6}},
                           {{1, 3, 5, 7}},
                           {{1, 2, 6, 7}}});
}

}  // namespace

TEST_CASE("edge lists parse into canonical graphs") {
    Graph g = Graph::from_edge_list("a b\nb c  # path\n\nd\n");
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 2);
    CHECK(g.vertices == std::vector<std::string>({"a", "b", "c", "d"}));
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK_FALSE(g.adjacent(3, 3));

    Graph dup = Graph::from_edge_list("a b\nb a\na b\n");
    CHECK(dup.num_edges() == 1);

    CHECK_THROWS_AS(Graph::from_edge_list("a a\n"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edge_list("a b c\n"), std::invalid_argument);

    Graph back = Graph::from_edge_list(g.to_edge_list());
    CHECK(back.vertices == g.vertices);
    CHECK(back.edges == g.edges);
}

TEST_CASE("cover instances demand exact triple membership") {
    CHECK_NOTHROW(planted_cover().validate());
    CHECK_NOTHROW(coverless().validate());

    ExactCoverInstance quad;
    for (int i = 0; i < 4; ++i) quad.elements.push_back("z" + std::to_string(i + 1));
    quad.subsets = {{{0, 1, 2, 3}}, {{0, 1, 2, 3}}, {{0, 1, 2, 3}}};
    CHECK_NOTHROW(quad.validate());  // repeated subsets are fine
    CHECK(brute_force_exact_cover(quad));

    ExactCoverInstance bad = planted_cover();
    bad.subsets.pop_back();  // four elements drop to two appearances
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = planted_cover();
    bad.subsets[0] = {{3, 2, 1, 0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("clique oracle on small graphs") {
    for (int k = 0; k <= 3; ++k) CHECK(brute_force_clique(k3(), k));
    CHECK_FALSE(brute_force_clique(k3(), 4));
    CHECK(brute_force_clique(p3(), 2));
    CHECK_FALSE(brute_force_clique(p3(), 3));
    for (int k = 0; k <= 4; ++k) CHECK(brute_force_clique(k4(), k));
    CHECK(brute_force_clique(star(), 2));
    CHECK_FALSE(brute_force_clique(star(), 3));
    Graph lone = Graph::from_edge_list("a\nb\n");
    CHECK(brute_force_clique(lone, 1));
    CHECK_FALSE(brute_force_clique(lone, 2));
}

TEST_CASE("dominating set oracle on small graphs") {
    CHECK(brute_force_domset(k3(), 1));
    CHECK(brute_force_domset(p3(), 1));
    CHECK_FALSE(brute_force_domset(two_edges(), 1));
    CHECK(brute_force_domset(two_edges(), 2));
    CHECK(brute_force_domset(star(), 1));
    CHECK_FALSE(brute_force_domset(p3(), 0));
    CHECK_FALSE(brute_force_domset(Graph::from_edge_list("a\nb\n"), 1));
}

TEST_CASE("exact cover oracle distinguishes the planted designs") {
    CHECK(brute_force_exact_cover(planted_cover()));
    CHECK_FALSE(brute_force_exact_cover(coverless()));
}

TEST_CASE("oracles refuse instances past the guard") {
    Graph big;
    for (int i = 0; i < 13; ++i) big.vertices.push_back("g" + std::to_string(i + 1));
    CHECK_THROWS_AS(brute_force_clique(big, 2), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_domset(big, 2), std::invalid_argument);
    CHECK_NOTHROW(brute_force_clique(big, 2, 13));
    CHECK_NOTHROW(brute_force_domset(big, 2, 13));
}

TEST_CASE("reductions reject degenerate inputs") {
    Graph edgeless = Graph::from_edge_list("a\nb\n");
    CHECK_THROWS_AS(clique_to_dcp_jf(edgeless, 1), std::invalid_argument);
    CHECK_THROWS_AS(clique_to_dcp_j_threshold(edgeless, 1), std::invalid_argument);
    CHECK_THROWS_AS(clique_to_dop(edgeless, 1), std::invalid_argument);
    CHECK_THROWS_AS(domset_to_acp(Graph{}, 1), std::invalid_argument);
    CHECK_THROWS_AS(clique_to_dop(k3(), -1), std::invalid_argument);
    CHECK_NOTHROW(domset_to_acp(edgeless, 1));
}

TEST_CASE("triangle reduction shapes") {
    PartyControlInstance jf = clique_to_dcp_jf(k3(), 3);
    CHECK(jf.election.num_voters() == 12);
    CHECK(jf.election.num_parties() == 5);
    CHECK(jf.election.tau == Rational(0));
    CHECK(jf.goal.phi == Rational(1, 2));
    CHECK(jf.goal.rho == Rational(1));  // (3 + 3) / (2 * 3)
    CHECK(jf.goal.coalition == std::vector<Party>({0, 2, 3, 4}));
    CHECK(jf.variant == PartyControlVariant::DeleteCoalition);

    PartyControlInstance th = clique_to_dcp_j_threshold(k3(), 3);
    CHECK(th.election.num_voters() == 12);  // 3|E| + C(3,2)
    CHECK(th.election.tau == Rational(6, 12));
    CHECK(th.goal.rho == Rational(0));

    PartyControlInstance dop = clique_to_dop(k3(), 3);
    CHECK(dop.election.num_voters() == 3);
    CHECK(dop.goal.coalition == std::vector<Party>({0}));
    CHECK(dop.goal.phi == Rational(1));  // C(3,2) votes out of |E| = 3
    CHECK(solve_party_control(dop).feasible);

    PartyControlInstance acp = domset_to_acp(star(), 1);
    CHECK(acp.election.num_voters() == 8);
    CHECK(acp.spoiler_parties == std::vector<Party>({2, 3, 4, 5}));
    for (Party p : acp.spoiler_parties) CHECK_FALSE(acp.election.is_running(p));

    PartyControlInstance aop = domset_to_aop_threshold(star(), 1);
    CHECK(aop.election.num_voters() == 20);
    CHECK(aop.election.tau == Rational(2, 5));

    PartyControlInstance ratio = domset_to_aop_jf(star(), 1);
    CHECK(ratio.election.num_voters() == 16);
    CHECK(ratio.goal.rho == Rational(1, 2));
    CHECK(ratio.goal.favored == std::optional<Party>(0));
}

TEST_CASE("cover reduction shape") {
    BriberyInstance inst = exact_cover_to_shift(planted_cover());
    CHECK(inst.election.num_voters() == 16);
    CHECK(inst.election.num_parties() == 31);  // 6 subsets + anchor + 24 fillers
    CHECK(inst.election.tau == Rational(1, 4));
    CHECK(inst.budget == Rational(24));
    CHECK(inst.goal.coalition == std::vector<Party>({0, 1, 2, 3, 4, 5}));
    CHECK(inst.goal.phi == Rational(1, 2));
    CHECK(inst.election.voters[0].id == "t1_z1");
    CHECK(inst.election.voters[8].id == "t2_z1");
    CHECK(inst.cost_model.kind == CostModel::Kind::CoalitionShift);
}

TEST_CASE("clique reductions decide like the clique oracle") {
    std::vector<Graph> graphs = {k3(), p3(), k4(), star(), two_edges()};
    std::mt19937_64 rng(111);
    for (int t = 0; t < 20; ++t) graphs.push_back(random_graph(rng));
    for (const Graph& g : graphs)
        for (int k = 0; k <= 4; ++k) {
            bool want = brute_force_clique(g, k);
            CAPTURE(g.to_edge_list());
            CAPTURE(k);
            CHECK(solve_party_control(clique_to_dcp_jf(g, k)).feasible == want);
            CHECK(solve_party_control(clique_to_dcp_j_threshold(g, k)).feasible == want);
            CHECK(solve_party_control(clique_to_dop(g, k)).feasible == want);
        }
}

TEST_CASE("dominating set reductions decide like the domination oracle") {
    std::vector<Graph> graphs = {k3(), p3(), k4(), star(), two_edges(),
                                 Graph::from_edge_list("a\nb\n")};
    std::mt19937_64 rng(112);
    for (int t = 0; t < 20; ++t) graphs.push_back(random_graph(rng));
    for (const Graph& g : graphs)
        for (int k = 0; k <= 3; ++k) {
            bool want = brute_force_domset(g, k);
            CAPTURE(g.to_edge_list());
            CAPTURE(k);
            CHECK(solve_party_control(domset_to_acp(g, k)).feasible == want);
            CHECK(solve_party_control(domset_to_aop_threshold(g, k)).feasible == want);
            CHECK(solve_party_control(domset_to_aop_jf(g, k)).feasible == want);
        }
}

TEST_CASE("cover reduction decides like the cover oracle") {
    BriberyDecision yes = brute_force_bribery(exact_cover_to_shift(planted_cover()), 31);
    CHECK(yes.feasible);
    REQUIRE(yes.cost.has_value());
    // two subsets lift across eight covered voters, four ranks each at worst
    CHECK(*yes.cost <= Rational(24));

    BriberyDecision no = brute_force_bribery(exact_cover_to_shift(coverless()), 31);
    CHECK_FALSE(no.feasible);
}
