#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ct/election.hpp"
#include "ct/rational.hpp"

namespace ct {

// Cost of reordering one voter by the number of inverted pairs. Either a
// linear slope or an explicit monotone table with value 0 at 0 swaps.
struct ShiftSchedule {
    std::optional<Rational> slope;
    std::vector<Rational> table;

    bool is_linear() const { return slope.has_value(); }
    Rational at(long long swaps) const;
    void validate() const;
};

struct CostModel {
    enum class Kind { Uniform, PerVoter, SwapMatrix, CoalitionShift };
    Kind kind = Kind::Uniform;

    std::vector<Rational> per_voter;                       // PerVoter
    std::vector<std::vector<std::vector<Rational>>> swap;  // SwapMatrix: [voter][p][q], cost of
                                                           // moving q from below p to above p
    std::vector<ShiftSchedule> shift;                      // CoalitionShift

    static CostModel uniform();
    static CostModel per_voter_costs(std::vector<Rational> costs);
    static CostModel swap_matrix(std::vector<std::vector<std::vector<Rational>>> sw);
    static CostModel coalition_shift(std::vector<ShiftSchedule> schedules);

    // Checks dimensions against the election and sign/monotonicity rules.
    void validate(const Election& e) const;
};

// New preference orders keyed by voter id; voters absent from the map keep
// their original order.
struct Bribe {
    std::map<std::string, PreferenceOrder> changes;
};

struct BriberyInstance {
    Election election;
    Goal goal;
    CostModel cost_model;
    Rational budget;  // non-negative

    void validate() const;
};

struct BriberyDecision {
    bool feasible = false;
    std::optional<Rational> cost;  // optimal cost, present iff feasible
    std::optional<Bribe> witness;  // present iff feasible
};

enum class TargetGroup { Favored, CoalitionRest, Opposition };

// Price of replacing one voter's order. Uniform/PerVoter charge per changed
// voter; SwapMatrix sums the matrix entries of all inverted pairs;
// CoalitionShift charges the schedule at the inversion count and throws
// std::invalid_argument when a non-coalition party moved up past anything.
Rational bribe_cost(const CostModel& model, int voter, const PreferenceOrder& before,
                    const PreferenceOrder& after, const std::vector<char>& coalition_mask);

// Sum of the `count` cheapest per-voter prices among voters whose top
// running choice is p; nullopt when the pool is too small.
std::optional<Rational> mincost_pool(const Election& e, const std::vector<Rational>& prices,
                                     Party p, long long count);

// Cheapest single-party lift that makes some member of the group the
// voter's top running choice, together with a realizing order. The lift
// inserts the target directly above the voter's current top running party.
// nullopt when no group member is reachable.
struct LiftOption {
    Rational cost;
    PreferenceOrder order;
    Party target = -1;
};
std::optional<LiftOption> min_cost_to_top(const Election& e, const CostModel& model, int voter,
                                          TargetGroup group, const Goal& goal);

// Exact optimum for Uniform and PerVoter pricing at any threshold.
// Dynamic programs pool undetermined bribes per party, combine opposition
// and coalition tables by min-plus convolution, and sweep all reachable
// active-vote splits. Requires phi > 0 when the favored party is not
// running (votes can never reach it, so the ratio target pins the
// coalition share to zero).
BriberyDecision solve_dollar(const BriberyInstance& inst);

// Exact optimum for SwapMatrix and CoalitionShift pricing at tau = 0 via a
// min-cost flow instance per split of voters among favored / rest of the
// coalition / opposition.
BriberyDecision solve_swapshift_no_threshold(const BriberyInstance& inst);

// Rewrites a linear CoalitionShift instance as a SwapMatrix instance with
// identical optima: slope for pairs raising a coalition party, budget + 1
// otherwise. Throws on non-linear schedules.
BriberyInstance shift_to_swap(const BriberyInstance& inst);

// Reference oracle: depth-first search over per-voter single-party lifts
// with exact budget pruning. Refuses instances with more voters or parties
// than `guard` (pass -1 to read COALITION_TACTICS_GUARD, default 7).
BriberyDecision brute_force_bribery(const BriberyInstance& inst, int guard = -1);

Election apply_bribe(const Election& e, const Bribe& bribe);
Rational bribe_total_cost(const BriberyInstance& inst, const Bribe& bribe);

namespace detail {

// Scaled-integer DP table behind solve_dollar, exposed so tests can check
// the combination step against its set definition on tiny instances.
struct DollarDP {
    int n = 0;
    long long den = 1;        // all costs are numerator/den
    long long threshold = 0;  // ceil(tau * n)
    Party pivot = -1;
    long long inf = 0;
    // cost of bribing l voters topping parties other than pivot, sending d
    // of the freed votes into the coalition rest so that exactly ac rest
    // votes and ao opposition votes are active
    long long g(int l, int d, int ac, int ao) const;
    std::vector<long long> table;  // layout [l][d][ac][ao]
};
DollarDP dollar_dp(const BriberyInstance& inst);

}  // namespace detail

}  // namespace ct
