#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ct/instance_io.hpp"
#include "ct/reductions.hpp"

namespace {

using namespace ct;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
}

// First non-comment line names the elements; each further line lists the
// four members of one subset. '#' starts a comment.
ExactCoverInstance parse_cover_file(const std::string& text) {
    ExactCoverInstance cover;
    std::istringstream lines(text);
    std::string line;
    bool have_elements = false;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::vector<std::string> tok;
        std::string w;
        while (words >> w) tok.push_back(w);
        if (tok.empty()) continue;
        if (!have_elements) {
            cover.elements = tok;
            have_elements = true;
            continue;
        }
        if (tok.size() != 4)
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": a subset needs exactly 4 elements");
        std::array<int, 4> sub{};
        for (int i = 0; i < 4; ++i) {
            auto it = std::find(cover.elements.begin(), cover.elements.end(), tok[i]);
            if (it == cover.elements.end())
                throw std::runtime_error("line " + std::to_string(lineno) + ": unknown element " +
                                         tok[i]);
            sub[i] = (int)(it - cover.elements.begin());
        }
        std::sort(sub.begin(), sub.end());
        cover.subsets.push_back(sub);
    }
    cover.validate();
    return cover;
}

// The five-party parliament walked through in the README: threshold 3/20,
// 75 voters, coalition {p1, c1, c2} with favored p1.
Election sample_parliament() {
    Election e;
    e.universe = PartyUniverse::of({"p1", "c1", "c2", "o1", "o2"});
    e.running = std::vector<char>(5, 1);
    e.tau = Rational(3, 20);
    auto rows = std::vector<std::pair<std::vector<Party>, int>>{
        {{0, 3, 1, 2, 4}, 20},  // p1 first, o1 second
        {{1, 3, 0, 2, 4}, 10},  // c1 first, o1 second
        {{3, 1, 0, 2, 4}, 20},  // o1 first, c1 second
        {{4, 2, 0, 1, 3}, 20},  // o2 first, c2 second
        {{3, 0, 1, 2, 4}, 5},   // o1 first, p1 second
    };
    int id = 0;
    for (const auto& [ranking, count] : rows)
        for (int i = 0; i < count; ++i)
            e.voters.push_back({"v" + std::to_string(++id), PreferenceOrder{ranking}});
    e.validate();
    return e;
}

Goal sample_goal() {
    Goal g;
    g.coalition = {0, 1, 2};
    g.favored = 0;
    g.phi = Rational(1, 2);
    g.rho = Rational(1, 2);
    return g;
}

void print_example_row(const Election& e, const Goal& goal, const std::string& label) {
    Tally t = tally(e);
    Rational share = t.fraction_of(goal.coalition);
    std::cout << label << ": coalition " << share.str() << " (" << round_percent(share) << "%)";
    Rational fav = t.fraction(*goal.favored);
    if (share.is_zero()) {
        std::cout << ", favored ratio n/a";
    } else {
        Rational ratio = fav / share;
        std::cout << ", favored ratio " << ratio.str() << " (" << round_percent(ratio) << "%)";
    }
    std::cout << "\n";
}

int run_solve(const std::string& file, const std::string& out_path) {
    ParsedInstance inst = parse_instance(read_file(file));
    SolveResult r = solve_instance(inst);
    write_output(out_path, serialize_result(inst, r));
    return r.feasible ? 0 : 1;
}

int run_oracle_check(const std::string& file, int guard) {
    ParsedInstance inst = parse_instance(read_file(file));
    SolveResult solved = solve_instance(inst);
    SolveResult reference = oracle_instance(inst, guard);
    auto show = [](const char* who, const SolveResult& r) {
        std::cout << who << ": " << (r.feasible ? "feasible" : "infeasible");
        if (r.cost) std::cout << ", cost " << r.cost->str();
        std::cout << "\n";
    };
    show("solver", solved);
    show("oracle", reference);
    bool agree = solved.feasible == reference.feasible;
    if (agree && solved.feasible && (solved.cost.has_value() != reference.cost.has_value() ||
                                     (solved.cost && *solved.cost != *reference.cost)))
        agree = false;
    std::cout << (agree ? "agree" : "DISAGREE") << "\n";
    return agree ? 0 : 1;
}

int run_reduce(const std::string& kind, const std::string& graph_path,
               const std::string& cover_path, int k, const std::string& out_path) {
    ParsedInstance inst;
    if (kind == "shift" || kind == "exact-cover") {
        if (cover_path.empty()) throw std::runtime_error("reduce " + kind + " needs --in");
        inst.problem = ProblemKind::BriberyShift;
        inst.bribery = exact_cover_to_shift(parse_cover_file(read_file(cover_path)));
    } else {
        if (graph_path.empty()) throw std::runtime_error("reduce " + kind + " needs --graph");
        if (k < 0) throw std::runtime_error("reduce " + kind + " needs -k");
        Graph g = Graph::from_edge_list(read_file(graph_path));
        if (kind == "dcp-jf") {
            inst.problem = ProblemKind::ControlDCP;
            inst.party_control = clique_to_dcp_jf(g, k);
        } else if (kind == "dcp-j-tau") {
            inst.problem = ProblemKind::ControlDCP;
            inst.party_control = clique_to_dcp_j_threshold(g, k);
        } else if (kind == "dop") {
            inst.problem = ProblemKind::ControlDOP;
            inst.party_control = clique_to_dop(g, k);
        } else if (kind == "acp") {
            inst.problem = ProblemKind::ControlACP;
            inst.party_control = domset_to_acp(g, k);
        } else if (kind == "aop-tau") {
            inst.problem = ProblemKind::ControlAOP;
            inst.party_control = domset_to_aop_threshold(g, k);
        } else if (kind == "aop-jf") {
            inst.problem = ProblemKind::ControlAOP;
            inst.party_control = domset_to_aop_jf(g, k);
        } else {
            throw std::runtime_error("unknown reduction kind " + kind);
        }
    }
    write_output(out_path, serialize_instance(inst));
    return 0;
}

int run_paper_example(const std::string& delete_party) {
    Election e = sample_parliament();
    Goal goal = sample_goal();
    Tally base = tally(e);
    std::cout << "threshold tau = " << e.tau.str() << ", cutoff = " << base.threshold
              << " of " << base.total_voters << " votes\n";
    auto deleted_row = [&](Party p) {
        std::vector<char> running = e.running;
        running[p] = 0;
        print_example_row(restrict_to(e, running), goal, "delete " + e.universe.name(p));
    };
    if (!delete_party.empty()) {
        Party p = e.universe.find(delete_party);
        if (p < 0) throw std::runtime_error("unknown party " + delete_party);
        deleted_row(p);
        return 0;
    }
    print_example_row(e, goal, "baseline");
    for (Party p = 0; p < e.universe.size(); ++p) deleted_row(p);
    return 0;
}

int run_gen(const GenOptions& opt, const std::string& out_path) {
    write_output(out_path, serialize_instance(generate_random(opt)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coalition-tactics: strategic manipulation of parliamentary elections"};
    app.require_subcommand(1);

    std::string file, out_path, kind, graph_path, cover_path, delete_party, problem;
    int guard = -1;
    int k = -1;

    CLI::App* solve = app.add_subcommand("solve", "decide an instance document");
    solve->add_option("file", file, "instance document")->required();
    solve->add_option("--out", out_path, "write the result document here instead of stdout");

    CLI::App* check = app.add_subcommand("oracle-check", "compare solver and brute force");
    check->add_option("file", file, "instance document")->required();
    check->add_option("--guard", guard, "oracle size guard");

    CLI::App* reduce = app.add_subcommand("reduce", "emit a hardness-reduction instance");
    reduce->add_option("kind", kind, "dcp-jf|dcp-j-tau|dop|acp|aop-tau|aop-jf|shift")->required();
    reduce->add_option("--graph", graph_path, "edge-list file");
    reduce->add_option("-k", k, "clique or dominating set size");
    reduce->add_option("--in", cover_path, "exact cover file (shift)");
    reduce->add_option("--out", out_path, "write the instance document here instead of stdout");

    CLI::App* example = app.add_subcommand("paper-example", "walk the sample parliament");
    example->add_option("--delete", delete_party, "show one single-party deletion row");

    GenOptions gen_opt;
    unsigned long long seed = 1;
    CLI::App* gen = app.add_subcommand("gen", "generate a random instance document");
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--voters", gen_opt.voters, "registered voters");
    gen->add_option("--parties", gen_opt.parties, "universe size");
    gen->add_option("--problem", problem, "problem tag")->required();
    gen->add_option("--spoilers", gen_opt.spoilers, "spoiler voters or parties");
    gen->add_option("--min-cost", gen_opt.min_cost, "lowest integer price");
    gen->add_option("--max-cost", gen_opt.max_cost, "highest integer price");
    gen->add_option("--max-budget", gen_opt.max_budget, "highest integer budget");
    gen->add_option("-k", gen_opt.k, "party control bound");
    gen->add_option("--out", out_path, "write the instance document here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        int code = app.exit(ex);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return run_solve(file, out_path);
        if (check->parsed()) return run_oracle_check(file, guard);
        if (reduce->parsed()) return run_reduce(kind, graph_path, cover_path, k, out_path);
        if (example->parsed()) return run_paper_example(delete_party);
        gen_opt.seed = seed;
        auto tag = problem_from_tag(problem);
        if (!tag) throw std::runtime_error("unknown problem tag " + problem);
        gen_opt.problem = *tag;
        return run_gen(gen_opt, out_path);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
