#include "ct/election.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ct {

PartyUniverse PartyUniverse::of(std::vector<std::string> names) {
    PartyUniverse u;
    u.names = std::move(names);
    for (int i = 0; i < (int)u.names.size(); ++i) {
        if (u.names[i].empty())
            throw std::invalid_argument("empty party identifier");
        if (!u.index.emplace(u.names[i], i).second)
            throw std::invalid_argument("duplicate party identifier: " + u.names[i]);
    }
    return u;
}

int PreferenceOrder::position_of(Party p) const {
    for (int i = 0; i < (int)ranking.size(); ++i)
        if (ranking[i] == p) return i;
    throw std::invalid_argument("party not in ranking");
}

std::vector<Party> Election::running_parties() const {
    std::vector<Party> out;
    for (Party p = 0; p < num_parties(); ++p)
        if (running[p]) out.push_back(p);
    return out;
}

void Election::validate() const {
    int m = num_parties();
    if (m == 0) throw std::invalid_argument("empty party universe");
    if ((int)running.size() != m) throw std::invalid_argument("running mask size mismatch");
    if (std::none_of(running.begin(), running.end(), [](char c) { return c != 0; }))
        throw std::invalid_argument("no running parties");
    if (tau.is_negative() || tau >= Rational(1))
        throw std::invalid_argument("tau must lie in [0,1)");
    std::unordered_set<std::string> ids;
    std::vector<char> seen(m);
    for (const Voter& v : voters) {
        if (v.id.empty()) throw std::invalid_argument("empty voter id");
        if (!ids.insert(v.id).second)
            throw std::invalid_argument("duplicate voter id: " + v.id);
        if ((int)v.order.ranking.size() != m)
            throw std::invalid_argument("ranking of voter " + v.id + " does not cover the universe");
        std::fill(seen.begin(), seen.end(), 0);
        for (Party p : v.order.ranking) {
            if (p < 0 || p >= m || seen[p])
                throw std::invalid_argument("ranking of voter " + v.id + " is not a permutation");
            seen[p] = 1;
        }
    }
}

bool Goal::in_coalition(Party p) const {
    return std::binary_search(coalition.begin(), coalition.end(), p);
}

void validate_goal(const PartyUniverse& u, const Goal& goal) {
    if (goal.coalition.empty()) throw std::invalid_argument("empty coalition");
    if (!std::is_sorted(goal.coalition.begin(), goal.coalition.end()))
        throw std::invalid_argument("coalition not in canonical order");
    for (size_t i = 0; i + 1 < goal.coalition.size(); ++i)
        if (goal.coalition[i] == goal.coalition[i + 1])
            throw std::invalid_argument("duplicate coalition member");
    for (Party p : goal.coalition)
        if (p < 0 || p >= u.size()) throw std::invalid_argument("coalition party outside universe");
    if (goal.favored && !goal.in_coalition(*goal.favored))
        throw std::invalid_argument("favored party outside the coalition");
    if (goal.rho > Rational(0) && !goal.favored)
        throw std::invalid_argument("ratio target without a favored party");
    if (goal.phi.is_negative() || goal.rho.is_negative())
        throw std::invalid_argument("negative objective target");
}

Party top_choice(const PreferenceOrder& order, const std::vector<char>& running) {
    for (Party p : order.ranking)
        if (running[p]) return p;
    throw std::invalid_argument("ranking covers no running party");
}

long long threshold_count(const Rational& tau, long long n) {
    return ceil_mul(tau, n);
}

Tally tally(const Election& e) {
    Tally t;
    int m = e.num_parties();
    t.votes.assign(m, 0);
    t.active.assign(m, 0);
    t.total_voters = e.num_voters();
    t.threshold = threshold_count(e.tau, t.total_voters);
    for (const Voter& v : e.voters)
        t.votes[top_choice(v.order, e.running)]++;
    for (Party p = 0; p < m; ++p) {
        if (e.running[p] && t.votes[p] >= t.threshold) {
            t.active[p] = 1;
            t.active_votes += t.votes[p];
        }
    }
    return t;
}

Rational Tally::fraction(Party p) const {
    if (!active[p] || active_votes == 0) return Rational(0);
    return Rational(votes[p], active_votes);
}

Rational Tally::fraction_of(const std::vector<Party>& parties) const {
    if (active_votes == 0) return Rational(0);
    long long sum = 0;
    for (Party p : parties)
        if (p >= 0 && p < (int)votes.size() && active[p]) sum += votes[p];
    return Rational(sum, active_votes);
}

ObjectiveStatus check_objectives(const Tally& t, const Goal& goal) {
    ObjectiveStatus st;
    Rational share = t.fraction_of(goal.coalition);
    st.share_met = share >= goal.phi;
    if (goal.rho.is_zero()) {
        st.ratio_met = true;
    } else {
        st.ratio_met = t.fraction(*goal.favored) >= goal.rho * share;
    }
    return st;
}

Election restrict_to(const Election& e, const std::vector<char>& new_running) {
    if ((int)new_running.size() != e.num_parties())
        throw std::invalid_argument("running mask size mismatch");
    Election out = e;
    out.running = new_running;
    if (std::none_of(new_running.begin(), new_running.end(), [](char c) { return c != 0; }))
        throw std::invalid_argument("no running parties");
    return out;
}

std::vector<char> mask_of(int universe_size, const std::vector<Party>& parties) {
    std::vector<char> mask(universe_size, 0);
    for (Party p : parties) {
        if (p < 0 || p >= universe_size) throw std::invalid_argument("party outside universe");
        mask[p] = 1;
    }
    return mask;
}

}  // namespace ct
