#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ct/bribery.hpp"
#include "ct/party_control.hpp"
#include "ct/voter_control.hpp"

namespace ct {

enum class ProblemKind {
    BriberyOne,     // unit price per changed voter
    BriberyDollar,  // per-voter prices
    BriberySwap,
    BriberyShift,
    ControlAV,
    ControlDV,
    ControlDCP,
    ControlDOP,
    ControlACP,
    ControlAOP,
};

const std::string& problem_tag(ProblemKind kind);
std::optional<ProblemKind> problem_from_tag(const std::string& tag);

// One slot engaged, picked by problem family.
struct ParsedInstance {
    ProblemKind problem = ProblemKind::BriberyDollar;
    std::optional<BriberyInstance> bribery;
    std::optional<VoterControlInstance> voter_control;
    std::optional<PartyControlInstance> party_control;
};

// Carries the path of the offending field, e.g. "voters[2].order".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& message);
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// JSON instance document -> validated instance. See README for the format.
ParsedInstance parse_instance(const std::string& bytes);

// Deterministic bytes: fixed key order, canonical "num/den" rationals,
// two-space indentation. parse_instance inverts it exactly.
std::string serialize_instance(const ParsedInstance& inst);

struct GenOptions {
    unsigned long long seed = 1;
    int voters = 5;  // registered voters
    int parties = 4;
    ProblemKind problem = ProblemKind::BriberyDollar;
    int spoilers = -1;  // AV spoiler voters or ACP/AOP spoiler parties; -1 picks a default
    int min_cost = 0;   // integer cost range for prices and deletion fees
    int max_cost = 5;
    int max_budget = 12;  // integer budget drawn from 0..max_budget
    int k = -1;           // party control bound; -1 draws one up to the pool size
    std::vector<Rational> taus;  // defaults {0, 1/4, 2/5}; swap/shift force tau = 0
    std::vector<Rational> phis;  // defaults {1/2, 1/4}
    std::vector<Rational> rhos;  // defaults {0, 1/2}
};

// Deterministic per options: the same options give byte-identical
// documents. Orders are uniform permutations, costs uniform integers.
ParsedInstance generate_random(const GenOptions& opt);

struct SolveResult {
    bool feasible = false;
    std::optional<Rational> cost;
    std::optional<Bribe> bribe;                            // bribery witness
    std::optional<std::vector<std::string>> voter_ids;     // AV added / DV deleted
    std::optional<std::vector<Party>> parties;             // party control witness
    Election after;  // witness applied when feasible, otherwise the input
    bool checked = false;  // feasible witness re-validated by a fresh tally
};

// Runs the solver matching the problem tag. Swap and shift pricing above
// tau = 0 fall back to the exhaustive search under the oracle guard.
SolveResult solve_instance(const ParsedInstance& inst);

// Reference decision: the exhaustive counterpart of each solver.
SolveResult oracle_instance(const ParsedInstance& inst, int guard = -1);

std::string serialize_result(const ParsedInstance& inst, const SolveResult& result);

// Nearest integer percent of a non-negative fraction, halves rounding up.
long long round_percent(const Rational& r);

}  // namespace ct
