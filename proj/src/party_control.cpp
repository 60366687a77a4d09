#include "ct/party_control.hpp"

#include <algorithm>
#include <stdexcept>

namespace ct {

namespace {

bool is_add(PartyControlVariant v) {
    return v == PartyControlVariant::AddCoalition || v == PartyControlVariant::AddOpposition;
}

// Lexicographic enumeration of size-`size` subsets of pool indices;
// returns false when exhausted.
bool first_combination(std::vector<int>& comb, int pool_size, int size) {
    comb.resize(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    return size <= pool_size;
}

bool next_combination(std::vector<int>& comb, int pool_size) {
    int size = (int)comb.size();
    int i = size - 1;
    while (i >= 0 && comb[i] == pool_size - size + i) --i;
    if (i < 0) return false;
    comb[i]++;
    for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    return true;
}

}  // namespace

void PartyControlInstance::validate() const {
    election.validate();
    validate_goal(election.universe, goal);
    if (k < 0) throw std::invalid_argument("negative action bound");
    if (is_add(variant)) {
        for (Party p : spoiler_parties) {
            if (p < 0 || p >= election.num_parties())
                throw std::invalid_argument("spoiler party outside universe");
            if (election.is_running(p))
                throw std::invalid_argument("spoiler party already running");
            bool coal = goal.in_coalition(p);
            if (variant == PartyControlVariant::AddCoalition && !coal)
                throw std::invalid_argument("coalition addition pool holds a non-coalition party");
            if (variant == PartyControlVariant::AddOpposition && coal)
                throw std::invalid_argument("opposition addition pool holds a coalition party");
        }
        for (size_t i = 0; i + 1 < spoiler_parties.size(); ++i)
            if (spoiler_parties[i] >= spoiler_parties[i + 1])
                throw std::invalid_argument("spoiler parties not in canonical order");
    } else if (!spoiler_parties.empty()) {
        throw std::invalid_argument("spoiler parties on a deletion instance");
    }
    if (k > (int)party_control_pool(*this).size())
        throw std::invalid_argument("action bound exceeds the pool");
}

std::vector<Party> party_control_pool(const PartyControlInstance& inst) {
    if (is_add(inst.variant)) return inst.spoiler_parties;
    std::vector<Party> pool;
    for (Party p : inst.election.running_parties()) {
        bool coal = inst.goal.in_coalition(p);
        if ((inst.variant == PartyControlVariant::DeleteCoalition) == coal) pool.push_back(p);
    }
    return pool;
}

std::optional<bool> immunity_check(const PartyControlInstance& inst) {
    bool covered = inst.variant == PartyControlVariant::DeleteCoalition ||
                   inst.variant == PartyControlVariant::AddOpposition;
    if (!covered || !inst.election.tau.is_zero() || !inst.goal.rho.is_zero()) return std::nullopt;
    return check_objectives(tally(inst.election), inst.goal).both();
}

Election apply_party_control(const PartyControlInstance& inst, const std::vector<Party>& chosen) {
    std::vector<char> running = inst.election.running;
    for (Party p : chosen) running[p] = is_add(inst.variant) ? 1 : 0;
    return restrict_to(inst.election, running);
}

PartyControlDecision solve_party_control(const PartyControlInstance& inst) {
    inst.validate();
    PartyControlDecision out;
    if (auto verdict = immunity_check(inst)) {
        out.immune = true;
        out.feasible = *verdict;
        if (out.feasible) out.witness = std::vector<Party>{};
        return out;
    }

    std::vector<Party> pool = party_control_pool(inst);
    for (int size = 0; size <= inst.k; ++size) {
        std::vector<int> comb;
        bool more = first_combination(comb, (int)pool.size(), size);
        while (more) {
            std::vector<Party> chosen;
            for (int i : comb) chosen.push_back(pool[i]);
            bool legal = true;
            if (!is_add(inst.variant)) {
                // Deleting every running party leaves no election to tally.
                int left = 0;
                for (Party p : inst.election.running_parties())
                    if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) left++;
                legal = left > 0;
            }
            if (legal &&
                check_objectives(tally(apply_party_control(inst, chosen)), inst.goal).both()) {
                out.feasible = true;
                out.witness = std::move(chosen);
                return out;
            }
            more = next_combination(comb, (int)pool.size());
        }
    }
    return out;
}

bool verify_party_witness(const PartyControlInstance& inst, const std::vector<Party>& witness) {
    if ((int)witness.size() > inst.k) return false;
    std::vector<Party> pool = party_control_pool(inst);
    for (Party p : witness)
        if (std::find(pool.begin(), pool.end(), p) == pool.end()) return false;
    for (size_t i = 0; i + 1 < witness.size(); ++i)
        if (witness[i] >= witness[i + 1]) return false;
    Election after = apply_party_control(inst, witness);
    return check_objectives(tally(after), inst.goal).both();
}

}  // namespace ct
