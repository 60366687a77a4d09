#pragma once

#include <optional>
#include <vector>

#include "ct/election.hpp"

namespace ct {

enum class PartyControlVariant { DeleteCoalition, DeleteOpposition, AddCoalition, AddOpposition };

struct PartyControlInstance {
    Election election;
    PartyControlVariant variant = PartyControlVariant::DeleteCoalition;
    std::vector<Party> spoiler_parties;  // addition variants: non-running universe parties
    int k = 0;                           // most parties that may be added or deleted
    Goal goal;

    void validate() const;
};

struct PartyControlDecision {
    bool feasible = false;
    bool immune = false;
    std::optional<std::vector<Party>> witness;  // present iff feasible
};

// Parties the controller may act on: running coalition members for
// DeleteCoalition, running opposition for DeleteOpposition, the spoiler
// list for additions. Sorted by universe index.
std::vector<Party> party_control_pool(const PartyControlInstance& inst);

// At tau = 0 with a share-only goal, deleting coalition parties or adding
// opposition parties can never raise the coalition share, so the verdict
// is decided by the initial tally alone. Returns that verdict, or nullopt
// when the shortcut does not apply.
std::optional<bool> immunity_check(const PartyControlInstance& inst);

// Enumerates action sets of size 0..k, smallest first and lexicographic by
// universe index within a size, and returns the first goal-achieving set.
PartyControlDecision solve_party_control(const PartyControlInstance& inst);

// Independent re-check: set within the pool and bound, applied election
// reaches the goal.
bool verify_party_witness(const PartyControlInstance& inst, const std::vector<Party>& witness);

// Election after deleting or adding the chosen parties.
Election apply_party_control(const PartyControlInstance& inst, const std::vector<Party>& chosen);

}  // namespace ct
