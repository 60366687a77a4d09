#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ct/rational.hpp"

namespace ct {

// Parties are indices into a PartyUniverse; the universe order is the
// canonical tie-break order everywhere (witness enumeration, order tails).
using Party = int;

struct PartyUniverse {
    std::vector<std::string> names;
    std::unordered_map<std::string, Party> index;

    static PartyUniverse of(std::vector<std::string> names);

    int size() const { return (int)names.size(); }
    Party find(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? -1 : it->second;
    }
    const std::string& name(Party p) const { return names.at(p); }
};

// Strict total order over the whole universe, best first.
struct PreferenceOrder {
    std::vector<Party> ranking;

    bool operator==(const PreferenceOrder& o) const { return ranking == o.ranking; }
    // Position of p in the ranking.
    int position_of(Party p) const;
    // p ranked strictly above q.
    bool prefers(Party p, Party q) const { return position_of(p) < position_of(q); }
};

struct Voter {
    std::string id;
    PreferenceOrder order;
};

struct Election {
    PartyUniverse universe;
    std::vector<char> running;  // mask over universe, at least one party set
    std::vector<Voter> voters;
    Rational tau;  // electoral threshold, 0 <= tau < 1

    int num_parties() const { return universe.size(); }
    int num_voters() const { return (int)voters.size(); }
    bool is_running(Party p) const { return running[p] != 0; }
    std::vector<Party> running_parties() const;

    // Throws std::invalid_argument on malformed data (empty running set,
    // rankings that are not permutations of the universe, duplicate voter
    // ids, tau out of range).
    void validate() const;
};

struct Goal {
    std::vector<Party> coalition;   // non-empty, sorted by universe index
    std::optional<Party> favored;   // member of the coalition; required when rho > 0
    Rational phi;                   // coalition share target, >= 0
    Rational rho;                   // favored-to-coalition ratio target, >= 0

    bool has_favored() const { return favored.has_value(); }
    bool in_coalition(Party p) const;
};

// phi and rho admit values outside (0,1]: shares never exceed 1, so such
// goals are vacuous or unsatisfiable, and the hardness reductions rely on
// both ends (phi = 0 for trivially met share targets, phi,rho > 1 to force
// all-zero shares).
void validate_goal(const PartyUniverse& u, const Goal& goal);

struct Tally {
    std::vector<long long> votes;  // per universe index; non-running parties get 0
    std::vector<char> active;      // mask: running and votes >= threshold
    long long total_voters = 0;
    long long threshold = 0;       // ceil(tau * n)
    long long active_votes = 0;    // sum of votes over active parties

    // s_tau(p): votes(p)/active_votes for active p, else 0. All shares are
    // 0 when no vote is active, so the shares then sum to 0, not 1.
    Rational fraction(Party p) const;
    Rational fraction_of(const std::vector<Party>& parties) const;
};

// First running party in the ranking.
Party top_choice(const PreferenceOrder& order, const std::vector<char>& running);

// ceil(tau * n); the minimum vote count a party needs to clear the threshold.
long long threshold_count(const Rational& tau, long long n);

Tally tally(const Election& e);

struct ObjectiveStatus {
    bool share_met;  // s(C) >= phi
    bool ratio_met;  // s(favored) >= rho * s(C); vacuous when rho = 0
    bool both() const { return share_met && ratio_met; }
};

ObjectiveStatus check_objectives(const Tally& t, const Goal& goal);

// Copy of e with the running set replaced (mask over the same universe).
Election restrict_to(const Election& e, const std::vector<char>& new_running);

// Convenience: mask from a party list.
std::vector<char> mask_of(int universe_size, const std::vector<Party>& parties);

}  // namespace ct
