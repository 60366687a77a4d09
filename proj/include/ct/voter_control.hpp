#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ct/election.hpp"
#include "ct/rational.hpp"

namespace ct {

enum class ControlMode { AddVoters, DeleteVoters };

// Unregistered voter available for addition, with its addition price.
struct SpoilerVoter {
    std::string id;
    PreferenceOrder order;
    Rational cost;  // may be negative
};

struct VoterControlInstance {
    Election election;  // registered voters
    ControlMode mode = ControlMode::AddVoters;
    std::vector<SpoilerVoter> spoilers;              // AddVoters pool
    std::map<std::string, Rational> deletion_costs;  // DeleteVoters: one per registered voter
    Goal goal;
    Rational budget;  // may be negative

    void validate() const;
};

struct ControlDecision {
    bool feasible = false;
    std::optional<Rational> cost;                    // optimal cost, present iff feasible
    std::optional<std::vector<std::string>> witness; // voter ids added or deleted
};

// Sum of the `count` cheapest spoiler prices among spoilers whose top
// running choice is p; nullopt when the pool is too small.
std::optional<Rational> add_pool_cost(const VoterControlInstance& inst, Party p, long long count);

// Exact optimum for adding voters: for each addition count r the threshold
// is ceil(tau * (n + r)); a table per party folds how many of its spoilers
// join and whether the party clears that threshold, including additions
// that deliberately leave a party inactive.
ControlDecision solve_add_voters(const VoterControlInstance& inst);

// Exact optimum for deleting voters, solved by rewriting deletion as
// addition: start from the empty voter set, offer every original voter at
// its negated deletion price, and keep everyone the addition solver picks.
// cost(deleted) = cost(all) + negated-cost(kept) holds on every witness.
ControlDecision solve_delete_voters(const VoterControlInstance& inst);

// Reference oracle: full subset enumeration of the spoiler pool (AddVoters)
// or the registered voters (DeleteVoters). No pruning, so negative prices
// are safe. Refuses pools larger than `guard` (pass -1 to read
// COALITION_TACTICS_GUARD, default 12).
ControlDecision brute_force_voter_control(const VoterControlInstance& inst, int guard = -1);

// Election after applying a witness (added spoilers appended in pool
// order; deletions remove by id).
Election apply_voter_control(const VoterControlInstance& inst, const std::vector<std::string>& ids);

Rational voter_control_cost(const VoterControlInstance& inst, const std::vector<std::string>& ids);

}  // namespace ct
