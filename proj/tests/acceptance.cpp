// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ct/instance_io.hpp"
#include "ct/mcf.hpp"
#include "ct/reductions.hpp"
#include "helpers.hpp"

using namespace ct;
using ct::testing::random_below;
using ct::testing::random_election;
using ct::testing::sample_goal;
using ct::testing::sample_parliament;

namespace {

int failures = 0;

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

void run(int idx, const char* label, double limit_s, const std::function<void(Check&)>& body) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& ex) {
        c.expect(false, std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs > limit_s)
        c.expect(false, "over the " + std::to_string((int)limit_s) + "s limit");
    std::printf("[%d] %-36s %s (%.1fs)\n", idx, label, c.ok ? "PASS" : "FAIL", secs);
    if (!c.ok) {
        std::printf("    %s\n", c.detail.c_str());
        ++failures;
    }
}

std::string show(const Rational& r) { return r.str(); }

// ---- criterion 1: the worked example, exact values and displays ----

void worked_example(Check& c) {
    Election e = sample_parliament();
    Goal goal = sample_goal();
    Tally t = tally(e);
    c.expect(e.tau == Rational(3, 20), "tau");
    c.expect(t.threshold == 12, "threshold " + std::to_string(t.threshold));
    c.expect(t.total_voters == 75, "voter count");

    Rational share = t.fraction_of(goal.coalition);
    c.expect(share == Rational(20, 65), "baseline share " + show(share));
    c.expect(round_percent(share) == 31, "baseline percent");
    ObjectiveStatus before = check_objectives(t, goal);
    c.expect(!before.share_met && before.ratio_met, "baseline objective split");

    auto drop = [&](Party p) {
        std::vector<char> running = e.running;
        running[p] = 0;
        return tally(restrict_to(e, running));
    };

    Tally no_o1 = drop(3);
    Rational share1 = no_o1.fraction_of(goal.coalition);
    Rational ratio1 = no_o1.fraction(0) / share1;
    c.expect(share1 == Rational(55, 75), "share without o1: " + show(share1));
    c.expect(ratio1 == Rational(25, 55), "ratio without o1: " + show(ratio1));
    c.expect(round_percent(share1) == 73 && round_percent(ratio1) == 45, "percents without o1");
    c.expect(!check_objectives(no_o1, goal).both(), "o1 deletion must fail the ratio");

    Tally no_o2 = drop(4);
    Rational share2 = no_o2.fraction_of(goal.coalition);
    Rational ratio2 = no_o2.fraction(0) / share2;
    c.expect(share2 == Rational(40, 65), "share without o2: " + show(share2));
    c.expect(ratio2 == Rational(20, 40), "ratio without o2: " + show(ratio2));
    c.expect(round_percent(share2) == 62 && round_percent(ratio2) == 50, "percents without o2");
    c.expect(check_objectives(no_o2, goal).both(), "o2 deletion must reach the goal");

    PartyControlInstance inst;
    inst.election = e;
    inst.variant = PartyControlVariant::DeleteOpposition;
    inst.k = 1;
    inst.goal = goal;
    PartyControlDecision d = solve_party_control(inst);
    c.expect(d.feasible && d.witness && *d.witness == std::vector<Party>({4}),
             "single-deletion witness");
}

// ---- criteria 2-4: solver vs oracle over generated documents ----

void compare_documents(Check& c, const GenOptions& opt) {
    ParsedInstance inst = generate_random(opt);
    SolveResult got = solve_instance(inst);
    SolveResult want = oracle_instance(inst);
    std::string tag = problem_tag(opt.problem) + " seed " + std::to_string(opt.seed);
    c.expect(got.feasible == want.feasible, tag + ": decisions differ");
    if (got.feasible && want.feasible) {
        c.expect(got.cost.has_value() == want.cost.has_value(), tag + ": cost presence");
        if (got.cost && want.cost)
            c.expect(*got.cost == *want.cost,
                     tag + ": cost " + show(*got.cost) + " vs " + show(*want.cost));
        c.expect(got.checked, tag + ": witness not re-checked");
    }
    if (got.feasible && inst.voter_control && inst.voter_control->mode == ControlMode::DeleteVoters)
        c.expect(voter_control_cost(*inst.voter_control, *got.voter_ids) == *got.cost,
                 tag + ": deletion fee identity");
}

void dollar_vs_oracle(Check& c) {
    for (unsigned long long seed = 1; seed <= 300 && c.ok; ++seed) {
        GenOptions opt;
        opt.seed = seed;
        opt.voters = 1 + (int)(seed % 7);
        opt.parties = 2 + (int)(seed % 4);
        opt.problem = ProblemKind::BriberyDollar;
        compare_documents(c, opt);
    }
}

void swapshift_vs_oracle(Check& c) {
    for (unsigned long long seed = 1; seed <= 200 && c.ok; ++seed) {
        GenOptions opt;
        opt.seed = 1000 + seed;
        opt.voters = 1 + (int)(seed % 6);
        opt.parties = 2 + (int)(seed % 4);
        opt.problem = seed % 2 ? ProblemKind::BriberySwap : ProblemKind::BriberyShift;
        compare_documents(c, opt);
    }
}

void voter_control_vs_oracle(Check& c) {
    for (unsigned long long seed = 1; seed <= 200 && c.ok; ++seed) {
        GenOptions opt;
        opt.seed = 2000 + seed;
        opt.voters = 1 + (int)(seed % 6);
        opt.spoilers = 1 + (int)((seed / 2) % 6);
        opt.parties = 2 + (int)(seed % 3);
        opt.problem = ProblemKind::ControlAV;
        if (seed % 2) opt.min_cost = -2;
        compare_documents(c, opt);
    }
    for (unsigned long long seed = 1; seed <= 200 && c.ok; ++seed) {
        GenOptions opt;
        opt.seed = 3000 + seed;
        opt.voters = 1 + (int)(seed % 6);
        opt.parties = 2 + (int)(seed % 3);
        opt.problem = ProblemKind::ControlDV;
        compare_documents(c, opt);
    }
}

// ---- criterion 5: share immunity at tau = 0 ----

void immunity_sweep(Check& c) {
    std::mt19937_64 rng(501);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        int m = 3 + (int)random_below(rng, 5);
        int n = 2 + (int)random_below(rng, 6);
        Election e = random_election(rng, n, m, Rational(0));
        Goal goal;
        for (Party p = 0; p < m && (int)goal.coalition.size() < 6; ++p)
            if (rng() % 2) goal.coalition.push_back(p);
        if (goal.coalition.empty()) goal.coalition.push_back(0);
        goal.favored = goal.coalition.front();
        goal.phi = Rational(1, 2);
        goal.rho = Rational(0);
        Rational base = tally(e).fraction_of(goal.coalition);

        std::vector<Party> del;
        for (Party p : e.running_parties())
            if (goal.in_coalition(p)) del.push_back(p);
        for (unsigned long long mask = 0; mask < (1ull << del.size()) && c.ok; ++mask) {
            std::vector<char> running = e.running;
            for (size_t i = 0; i < del.size(); ++i)
                if (mask >> i & 1) running[del[i]] = 0;
            bool any = false;
            for (char r : running) any = any || r;
            if (!any) continue;
            c.expect(tally(restrict_to(e, running)).fraction_of(goal.coalition) <= base,
                     "a coalition deletion raised the share, trial " + std::to_string(trial));
        }

        std::vector<Party> add;
        for (Party p = 0; p < m; ++p)
            if (!e.is_running(p) && !goal.in_coalition(p)) add.push_back(p);
        for (unsigned long long mask = 0; mask < (1ull << add.size()) && c.ok; ++mask) {
            std::vector<char> running = e.running;
            for (size_t i = 0; i < add.size(); ++i)
                if (mask >> i & 1) running[add[i]] = 1;
            c.expect(tally(restrict_to(e, running)).fraction_of(goal.coalition) <= base,
                     "a spoiler addition raised the share, trial " + std::to_string(trial));
        }

        bool satisfied = check_objectives(tally(e), goal).both();

        PartyControlInstance dcp;
        dcp.election = e;
        dcp.variant = PartyControlVariant::DeleteCoalition;
        dcp.goal = goal;
        dcp.k = (int)party_control_pool(dcp).size();
        PartyControlDecision d = solve_party_control(dcp);
        c.expect(d.immune && d.feasible == satisfied,
                 "deletion verdict must equal the initial tally, trial " + std::to_string(trial));

        PartyControlInstance aop;
        aop.election = e;
        aop.variant = PartyControlVariant::AddOpposition;
        aop.goal = goal;
        aop.spoiler_parties = add;
        aop.k = (int)add.size();
        d = solve_party_control(aop);
        c.expect(d.immune && d.feasible == satisfied,
                 "addition verdict must equal the initial tally, trial " + std::to_string(trial));
    }
}

// ---- criterion 6: hardness reductions against source brute force ----

std::optional<ExactCoverInstance> sample_design(std::mt19937_64& rng) {
    std::vector<int> slots;
    for (int z = 0; z < 8; ++z) slots.insert(slots.end(), 3, z);
    for (int i = (int)slots.size() - 1; i > 0; --i)
        std::swap(slots[i], slots[(int)random_below(rng, i + 1)]);
    ExactCoverInstance cover;
    for (int z = 0; z < 8; ++z) cover.elements.push_back("z" + std::to_string(z + 1));
    for (int s = 0; s < 6; ++s) {
        std::array<int, 4> sub{slots[4 * s], slots[4 * s + 1], slots[4 * s + 2], slots[4 * s + 3]};
        std::sort(sub.begin(), sub.end());
        for (int j = 1; j < 4; ++j)
            if (sub[j] == sub[j - 1]) return std::nullopt;
        cover.subsets.push_back(sub);
    }
    cover.validate();
    return cover;
}

void reductions_cross_check(Check& c) {
    std::vector<Graph> graphs = {
        Graph::from_edge_list("a b\nb c\na c\n"),
        Graph::from_edge_list("a b\nb c\n"),
        Graph::from_edge_list("a b\na c\na d\nb c\nb d\nc d\n"),
        Graph::from_edge_list("hub x\nhub y\nhub z\n"),
    };
    std::mt19937_64 rng(601);
    for (int t = 0; t < 100; ++t) {
        Graph g;
        int nv = 2 + (int)random_below(rng, 5);
        for (int i = 0; i < nv; ++i) g.vertices.push_back("g" + std::to_string(i + 1));
        for (int i = 0; i < nv; ++i)
            for (int j = i + 1; j < nv; ++j)
                if (rng() % 2) g.edges.emplace_back(i, j);
        if (g.edges.empty()) g.edges.emplace_back(0, 1);
        graphs.push_back(std::move(g));
    }
    for (size_t gi = 0; gi < graphs.size() && c.ok; ++gi) {
        const Graph& g = graphs[gi];
        for (int k = 1; k <= 3 && c.ok; ++k) {
            std::string tag = "graph " + std::to_string(gi) + ", k " + std::to_string(k);
            bool clique = brute_force_clique(g, k);
            c.expect(solve_party_control(clique_to_dcp_jf(g, k)).feasible == clique,
                     tag + ": coalition-deletion ratio form");
            c.expect(solve_party_control(clique_to_dcp_j_threshold(g, k)).feasible == clique,
                     tag + ": coalition-deletion threshold form");
            c.expect(solve_party_control(clique_to_dop(g, k)).feasible == clique,
                     tag + ": opposition-deletion form");
            bool dom = brute_force_domset(g, k);
            c.expect(solve_party_control(domset_to_acp(g, k)).feasible == dom,
                     tag + ": coalition-addition form");
            c.expect(solve_party_control(domset_to_aop_threshold(g, k)).feasible == dom,
                     tag + ": opposition-addition threshold form");
            c.expect(solve_party_control(domset_to_aop_jf(g, k)).feasible == dom,
                     tag + ": opposition-addition ratio form");
        }
    }

    int covers = 0, coverless = 0, attempts = 0;
    auto check_design = [&](const ExactCoverInstance& design, const std::string& tag) {
        bool want = brute_force_exact_cover(design);
        BriberyDecision got = brute_force_bribery(exact_cover_to_shift(design), 31);
        c.expect(got.feasible == want, "cover design " + tag);
        (want ? covers : coverless)++;
    };

    ExactCoverInstance fixed;
    for (int z = 0; z < 8; ++z) fixed.elements.push_back("z" + std::to_string(z + 1));
    fixed.subsets = {{{0, 1, 2, 3}}, {{4, 5, 6, 7}}, {{0, 1, 4, 5}},
                     {{2, 3, 6, 7}}, {{0, 2, 4, 6}}, {{1, 3, 5, 7}}};
    check_design(fixed, "partitioned");  // three complementary pairs
    fixed.subsets = {{{0, 2, 4, 5}}, {{0, 1, 4, 6}}, {{0, 3, 4, 7}},
                     {{2, 3, 5, 6}}, {{1, 3, 5, 7}}, {{1, 2, 6, 7}}};
    check_design(fixed, "complement-free");  // no two subsets can partition

    std::mt19937_64 crng(602);
    while (covers + coverless < 20 && attempts < 4000 && c.ok) {
        ++attempts;
        auto design = sample_design(crng);
        if (!design) continue;
        check_design(*design, "attempt " + std::to_string(attempts));
    }
    c.expect(covers + coverless >= 20, "not enough valid cover designs sampled");
    c.expect(covers > 0 && coverless > 0, "cover sample never saw both outcomes");
}

// ---- criterion 7: shift pricing rewritten as swap pricing ----

void shift_swap_preservation(Check& c) {
    std::mt19937_64 rng(701);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        int m = 3 + (int)random_below(rng, 3);
        int n = 2 + (int)random_below(rng, 5);
        BriberyInstance inst;
        inst.election = random_election(rng, n, m, Rational(0));
        for (Party p = 0; p < m; ++p)
            if (rng() % 2) inst.goal.coalition.push_back(p);
        if (inst.goal.coalition.empty()) inst.goal.coalition.push_back(0);
        inst.goal.favored = inst.goal.coalition.front();
        inst.goal.phi = rng() % 2 ? Rational(1, 2) : Rational(1, 4);
        inst.goal.rho = rng() % 3 == 0 && inst.election.is_running(*inst.goal.favored)
                            ? Rational(1, 2)
                            : Rational(0);
        std::vector<ShiftSchedule> sched;
        for (int i = 0; i < n; ++i)
            sched.push_back(ShiftSchedule{Rational((long long)random_below(rng, 4)), {}});
        inst.cost_model = CostModel::coalition_shift(std::move(sched));
        inst.budget = Rational((long long)random_below(rng, 9));
        inst.validate();

        BriberyDecision direct = brute_force_bribery(inst);
        BriberyDecision rewritten = brute_force_bribery(shift_to_swap(inst));
        std::string tag = "trial " + std::to_string(trial);
        c.expect(direct.feasible == rewritten.feasible, tag + ": decisions differ");
        if (direct.feasible && rewritten.feasible)
            c.expect(*direct.cost == *rewritten.cost, tag + ": costs differ");
    }
}

// ---- criterion 8: min-cost flow against exhaustive enumeration ----

bool flow_valid(const FlowNetwork& net, const std::vector<long long>& flow) {
    std::vector<long long> balance(net.node_count, 0);
    for (size_t i = 0; i < net.arcs.size(); ++i) {
        if (flow[i] < 0 || flow[i] > net.arcs[i].capacity) return false;
        balance[net.arcs[i].from] -= flow[i];
        balance[net.arcs[i].to] += flow[i];
    }
    for (int v = 0; v < net.node_count; ++v) {
        long long want = v == net.source ? -net.demand : v == net.sink ? net.demand : 0;
        if (net.source == net.sink) want = 0;
        if (balance[v] != want) return false;
    }
    return true;
}

std::optional<long long> enumerate_min_cost(const FlowNetwork& net) {
    std::vector<long long> flow(net.arcs.size(), 0);
    std::optional<long long> best;
    while (true) {
        if (flow_valid(net, flow)) {
            long long cost = 0;
            for (size_t i = 0; i < net.arcs.size(); ++i) cost += flow[i] * net.arcs[i].cost;
            if (!best || cost < *best) best = cost;
        }
        size_t i = 0;
        while (i < flow.size() && flow[i] == net.arcs[i].capacity) flow[i++] = 0;
        if (i == flow.size()) break;
        ++flow[i];
    }
    return best;
}

void mcf_vs_enumeration(Check& c) {
    std::mt19937_64 rng(801);
    int feasible_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 500 && c.ok; ++trial) {
        FlowNetwork net;
        net.node_count = 2 + (int)random_below(rng, 4);
        net.source = 0;
        net.sink = net.node_count - 1;
        net.demand = (long long)random_below(rng, 4);
        int arcs = 1 + (int)random_below(rng, 6);
        for (int a = 0; a < arcs; ++a) {
            FlowArc arc;
            arc.from = (int)random_below(rng, net.node_count);
            do {
                arc.to = (int)random_below(rng, net.node_count);
            } while (arc.to == arc.from);
            arc.capacity = (long long)random_below(rng, 3);
            arc.cost = (long long)random_below(rng, 6);
            net.arcs.push_back(arc);
        }
        auto got = solve_min_cost_flow(net);
        auto want = enumerate_min_cost(net);
        std::string tag = "network " + std::to_string(trial);
        c.expect(got.has_value() == want.has_value(), tag + ": feasibility differs");
        if (got && want) {
            ++feasible_seen;
            c.expect(flow_valid(net, got->flow), tag + ": invalid flow");
            long long recheck = 0;
            for (size_t i = 0; i < net.arcs.size(); ++i)
                recheck += got->flow[i] * net.arcs[i].cost;
            c.expect(recheck == got->total_cost, tag + ": cost bookkeeping");
            c.expect(got->total_cost == *want, tag + ": not optimal");
        } else {
            ++infeasible_seen;
        }
    }
    c.expect(feasible_seen > 50 && infeasible_seen > 50, "sample too lopsided to be informative");
}

// ---- criterion 9: polynomial solvers at desk scale ----

void desk_scale_runtimes(Check& c) {
    auto timed = [&](const char* what, double limit_s, const std::function<void()>& body) {
        auto start = std::chrono::steady_clock::now();
        body();
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > limit_s)
            c.expect(false, std::string(what) + " took " + std::to_string(secs) + "s");
    };

    timed("per-voter pricing at n=20", 60, [&] {
        GenOptions opt;
        opt.seed = 901;
        opt.voters = 20;
        opt.parties = 6;
        opt.problem = ProblemKind::BriberyDollar;
        opt.taus = {Rational(2, 5)};
        ParsedInstance inst = generate_random(opt);
        BriberyDecision d = solve_dollar(*inst.bribery);
        (void)d;
    });

    timed("swap pricing at n=40", 60, [&] {
        GenOptions opt;
        opt.seed = 902;
        opt.voters = 40;
        opt.parties = 6;
        opt.problem = ProblemKind::BriberySwap;
        ParsedInstance inst = generate_random(opt);
        BriberyDecision d = solve_swapshift_no_threshold(*inst.bribery);
        (void)d;
    });

    timed("voter addition at 15+15", 120, [&] {
        GenOptions opt;
        opt.seed = 903;
        opt.voters = 15;
        opt.spoilers = 15;
        opt.parties = 5;
        opt.problem = ProblemKind::ControlAV;
        ParsedInstance inst = generate_random(opt);
        ControlDecision d = solve_add_voters(*inst.voter_control);
        (void)d;
    });
}

}  // namespace

int main() {
    run(1, "worked example reproduction", 1, worked_example);
    run(2, "per-voter bribery vs oracle (300)", 180, dollar_vs_oracle);
    run(3, "swap/shift bribery vs oracle (200)", 120, swapshift_vs_oracle);
    run(4, "voter control vs oracle (400)", 180, voter_control_vs_oracle);
    run(5, "share immunity sweep (100)", 0, immunity_sweep);
    run(6, "hardness reductions cross-check", 600, reductions_cross_check);
    run(7, "shift-to-swap preservation (100)", 0, shift_swap_preservation);
    run(8, "min-cost flow vs enumeration (500)", 0, mcf_vs_enumeration);
    run(9, "solver runtime at desk scale", 0, desk_scale_runtimes);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
