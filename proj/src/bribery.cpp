#include "ct/bribery.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ct/mcf.hpp"

namespace ct {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

long long padd(long long a, long long b) {
    if (a >= kInf || b >= kInf) return kInf;
    return a + b;
}

// num/den <= bound, den > 0
bool scaled_le(long long num, long long den, const Rational& bound) {
    return (__int128)num * bound.den() <= (__int128)bound.num() * den;
}

struct ScaledCosts {
    std::vector<long long> nums;
    long long den = 1;
};

ScaledCosts scale_rationals(const std::vector<Rational>& xs) {
    ScaledCosts out;
    long long l = 1;
    for (const Rational& x : xs) {
        __int128 g = std::gcd(l, x.den());
        __int128 nl = (__int128)l / g * x.den();
        if (nl > INT64_MAX) throw std::overflow_error("cost denominators too large");
        l = (long long)nl;
    }
    out.den = l;
    out.nums.reserve(xs.size());
    for (const Rational& x : xs) {
        __int128 v = (__int128)x.num() * (l / x.den());
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("scaled cost overflow");
        out.nums.push_back((long long)v);
    }
    return out;
}

// floor(budget * den), or -1 when the budget is below 0
long long scaled_budget_floor(const Rational& budget, long long den) {
    if (budget.is_negative()) return -1;
    __int128 v = (__int128)budget.num() * den / budget.den();
    if (v > INT64_MAX) return INT64_MAX;
    return (long long)v;
}

// Exact share checks on active vote counts; all-zero totals mean every
// share is 0, so the share target holds only for phi <= 0.
struct IntegerObjectives {
    long long phi_num, phi_den, rho_num, rho_den;
    bool use_ratio;

    explicit IntegerObjectives(const Goal& g)
        : phi_num(g.phi.num()),
          phi_den(g.phi.den()),
          rho_num(g.rho.num()),
          rho_den(g.rho.den()),
          use_ratio(g.rho > Rational(0)) {}

    bool ok(long long a_fav, long long a_crest, long long a_opp) const {
        long long coal = a_fav + a_crest;
        long long tot = coal + a_opp;
        bool share = tot == 0 ? phi_num <= 0 : (__int128)coal * phi_den >= (__int128)phi_num * tot;
        bool ratio = !use_ratio || (__int128)a_fav * rho_den >= (__int128)rho_num * coal;
        return share && ratio;
    }
};

PreferenceOrder lifted_order(const PreferenceOrder& order, const std::vector<char>& running,
                             Party q) {
    int idx0 = -1;
    for (int i = 0; i < (int)order.ranking.size(); ++i)
        if (running[order.ranking[i]]) { idx0 = i; break; }
    int idxq = order.position_of(q);
    if (idx0 < 0 || idxq <= idx0) return order;
    PreferenceOrder out = order;
    out.ranking.erase(out.ranking.begin() + idxq);
    out.ranking.insert(out.ranking.begin() + idx0, q);
    return out;
}

int resolve_guard(int guard, int fallback) {
    if (guard >= 0) return guard;
    if (const char* env = std::getenv("COALITION_TACTICS_GUARD")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 0) return (int)v;
    }
    return fallback;
}

// Per-party pools of voters by top running choice, sorted cheapest first.
struct Pools {
    std::vector<std::vector<int>> voters;       // per universe party
    std::vector<std::vector<long long>> prefix; // prefix sums of scaled prices

    long long mincost(Party p, long long count) const {
        if (count < 0 || count > (long long)voters[p].size()) return kInf;
        return prefix[p][count];
    }
};

Pools build_pools(const Election& e, const std::vector<long long>& prices) {
    Pools pools;
    int m = e.num_parties();
    pools.voters.assign(m, {});
    pools.prefix.assign(m, {});
    for (int i = 0; i < e.num_voters(); ++i)
        pools.voters[top_choice(e.voters[i].order, e.running)].push_back(i);
    for (Party p = 0; p < m; ++p) {
        auto& vs = pools.voters[p];
        std::sort(vs.begin(), vs.end(), [&](int a, int b) {
            if (prices[a] != prices[b]) return prices[a] < prices[b];
            return a < b;
        });
        auto& pref = pools.prefix[p];
        pref.assign(vs.size() + 1, 0);
        for (size_t i = 0; i < vs.size(); ++i) pref[i + 1] = pref[i] + prices[vs[i]];
    }
    return pools;
}

std::vector<Rational> dollar_prices(const BriberyInstance& inst) {
    if (inst.cost_model.kind == CostModel::Kind::Uniform)
        return std::vector<Rational>(inst.election.num_voters(), Rational(1));
    if (inst.cost_model.kind == CostModel::Kind::PerVoter) return inst.cost_model.per_voter;
    throw std::invalid_argument("price-per-voter solver needs a Uniform or PerVoter model");
}

// DP state shared by solve_dollar and the exposed table.
struct DollarChains {
    int n = 0;
    long long T = 0;
    Party pivot = -1;
    std::vector<Party> crest;  // running coalition minus pivot
    std::vector<Party> opp;    // running opposition
    ScaledCosts costs;
    Pools pools;
    // fsteps[t]: after folding the first t opposition parties; (l, a)
    std::vector<std::vector<long long>> fsteps;
    // hsteps[t]: after folding the first t crest parties; (l, d, a)
    std::vector<std::vector<long long>> hsteps;

    int fidx(int l, int a) const { return l * (n + 1) + a; }
    int hidx(int l, int d, int a) const { return (l * (n + 1) + d) * (n + 1) + a; }
};

DollarChains build_dollar_chains(const BriberyInstance& inst, Party pivot) {
    const Election& e = inst.election;
    DollarChains ch;
    ch.n = e.num_voters();
    ch.T = threshold_count(e.tau, ch.n);
    ch.pivot = pivot;
    ch.costs = scale_rationals(dollar_prices(inst));
    ch.pools = build_pools(e, ch.costs.nums);
    for (Party p : e.running_parties()) {
        if (p == pivot) continue;
        (inst.goal.in_coalition(p) ? ch.crest : ch.opp).push_back(p);
    }

    int n = ch.n;
    std::vector<long long> f((n + 1) * (n + 1), kInf);
    f[ch.fidx(0, 0)] = 0;
    ch.fsteps.push_back(f);
    for (Party j : ch.opp) {
        std::vector<long long> nf((n + 1) * (n + 1), kInf);
        long long vj = (long long)ch.pools.voters[j].size();
        for (int l = 0; l <= n; ++l)
            for (int a = 0; a <= n; ++a) {
                long long best = kInf;
                for (int lj = 0; lj <= std::min<long long>(l, vj); ++lj) {
                    long long rem = vj - lj;
                    long long c = ch.pools.mincost(j, lj);
                    long long prev;
                    if (rem >= ch.T) {
                        if (a < rem) continue;
                        prev = f[ch.fidx(l - lj, a - (int)rem)];
                    } else {
                        prev = f[ch.fidx(l - lj, a)];
                    }
                    best = std::min(best, padd(prev, c));
                }
                nf[ch.fidx(l, a)] = best;
            }
        f = std::move(nf);
        ch.fsteps.push_back(f);
    }

    std::vector<long long> h((n + 1) * (n + 1) * (n + 1), kInf);
    h[ch.hidx(0, 0, 0)] = 0;
    ch.hsteps.push_back(h);
    for (Party j : ch.crest) {
        std::vector<long long> nh((n + 1) * (n + 1) * (n + 1), kInf);
        long long vj = (long long)ch.pools.voters[j].size();
        for (int l = 0; l <= n; ++l)
            for (int d = 0; d <= n; ++d)
                for (int a = 0; a <= n; ++a) {
                    long long best = kInf;
                    for (int lj = 0; lj <= std::min<long long>(l, vj); ++lj) {
                        long long c = ch.pools.mincost(j, lj);
                        for (int dj = 0; dj <= d; ++dj) {
                            long long rem = vj - lj + dj;
                            long long prev;
                            if (rem >= ch.T) {
                                if (a < rem) continue;
                                prev = h[ch.hidx(l - lj, d - dj, a - (int)rem)];
                            } else {
                                prev = h[ch.hidx(l - lj, d - dj, a)];
                            }
                            best = std::min(best, padd(prev, c));
                        }
                    }
                    nh[ch.hidx(l, d, a)] = best;
                }
        h = std::move(nh);
        ch.hsteps.push_back(h);
    }
    return ch;
}

Party pick_pivot(const BriberyInstance& inst, const std::vector<Party>& running_coalition) {
    const Goal& g = inst.goal;
    if (g.favored && inst.election.is_running(*g.favored)) return *g.favored;
    return running_coalition.front();
}

BriberyDecision decide_static(const BriberyInstance& inst) {
    Tally t = tally(inst.election);
    BriberyDecision d;
    if (check_objectives(t, inst.goal).both() && Rational(0) <= inst.budget) {
        d.feasible = true;
        d.cost = Rational(0);
        d.witness = Bribe{};
    }
    return d;
}

}  // namespace

Rational ShiftSchedule::at(long long swaps) const {
    if (swaps < 0) throw std::invalid_argument("negative swap count");
    if (slope) return *slope * Rational(swaps);
    if (swaps >= (long long)table.size())
        throw std::invalid_argument("shift schedule shorter than the swap count");
    return table[swaps];
}

void ShiftSchedule::validate() const {
    if (slope) {
        if (slope->is_negative()) throw std::invalid_argument("negative shift slope");
        return;
    }
    if (table.empty() || !table[0].is_zero())
        throw std::invalid_argument("shift schedule must start at 0");
    for (size_t i = 1; i < table.size(); ++i)
        if (table[i] < table[i - 1]) throw std::invalid_argument("shift schedule must be monotone");
}

CostModel CostModel::uniform() {
    CostModel m;
    m.kind = Kind::Uniform;
    return m;
}

CostModel CostModel::per_voter_costs(std::vector<Rational> costs) {
    CostModel m;
    m.kind = Kind::PerVoter;
    m.per_voter = std::move(costs);
    return m;
}

CostModel CostModel::swap_matrix(std::vector<std::vector<std::vector<Rational>>> sw) {
    CostModel m;
    m.kind = Kind::SwapMatrix;
    m.swap = std::move(sw);
    return m;
}

CostModel CostModel::coalition_shift(std::vector<ShiftSchedule> schedules) {
    CostModel m;
    m.kind = Kind::CoalitionShift;
    m.shift = std::move(schedules);
    return m;
}

void CostModel::validate(const Election& e) const {
    int n = e.num_voters();
    int m = e.num_parties();
    switch (kind) {
        case Kind::Uniform:
            return;
        case Kind::PerVoter:
            if ((int)per_voter.size() != n) throw std::invalid_argument("per-voter cost count mismatch");
            for (const Rational& c : per_voter)
                if (c.is_negative()) throw std::invalid_argument("negative bribe price");
            return;
        case Kind::SwapMatrix:
            if ((int)swap.size() != n) throw std::invalid_argument("swap matrix count mismatch");
            for (const auto& mat : swap) {
                if ((int)mat.size() != m) throw std::invalid_argument("swap matrix size mismatch");
                for (const auto& row : mat) {
                    if ((int)row.size() != m) throw std::invalid_argument("swap matrix size mismatch");
                    for (const Rational& c : row)
                        if (c.is_negative()) throw std::invalid_argument("negative swap cost");
                }
            }
            return;
        case Kind::CoalitionShift:
            if ((int)shift.size() != n) throw std::invalid_argument("shift schedule count mismatch");
            for (const ShiftSchedule& s : shift) s.validate();
            return;
    }
}

void BriberyInstance::validate() const {
    election.validate();
    validate_goal(election.universe, goal);
    cost_model.validate(election);
    if (budget.is_negative()) throw std::invalid_argument("negative bribery budget");
}

Rational bribe_cost(const CostModel& model, int voter, const PreferenceOrder& before,
                    const PreferenceOrder& after, const std::vector<char>& coalition_mask) {
    if (before.ranking.size() != after.ranking.size())
        throw std::invalid_argument("order size mismatch");
    if (model.kind == CostModel::Kind::Uniform)
        return before == after ? Rational(0) : Rational(1);
    if (model.kind == CostModel::Kind::PerVoter)
        return before == after ? Rational(0) : model.per_voter.at(voter);

    int m = (int)before.ranking.size();
    std::vector<int> pos_before(m), pos_after(m);
    for (int i = 0; i < m; ++i) {
        pos_before[before.ranking[i]] = i;
        pos_after[after.ranking[i]] = i;
    }
    if (model.kind == CostModel::Kind::SwapMatrix) {
        Rational total(0);
        for (Party x = 0; x < m; ++x)
            for (Party y = 0; y < m; ++y) {
                if (x == y) continue;
                // y moved from below x to above x
                if (pos_before[x] < pos_before[y] && pos_after[y] < pos_after[x])
                    total += model.swap.at(voter).at(x).at(y);
            }
        return total;
    }

    long long inversions = 0;
    for (Party x = 0; x < m; ++x)
        for (Party y = 0; y < m; ++y) {
            if (x == y) continue;
            if (pos_before[x] < pos_before[y] && pos_after[y] < pos_after[x]) {
                if (!coalition_mask[y])
                    throw std::invalid_argument("illegal shift: non-coalition party moved up");
                ++inversions;
            }
        }
    return model.shift.at(voter).at(inversions);
}

std::optional<Rational> mincost_pool(const Election& e, const std::vector<Rational>& prices,
                                     Party p, long long count) {
    if ((int)prices.size() != e.num_voters()) throw std::invalid_argument("price count mismatch");
    if (p < 0 || p >= e.num_parties()) throw std::invalid_argument("party outside universe");
    if (count < 0) throw std::invalid_argument("negative pool count");
    std::vector<Rational> pool;
    for (int i = 0; i < e.num_voters(); ++i)
        if (top_choice(e.voters[i].order, e.running) == p) pool.push_back(prices[i]);
    if (count > (long long)pool.size()) return std::nullopt;
    std::sort(pool.begin(), pool.end());
    Rational total(0);
    for (long long i = 0; i < count; ++i) total += pool[i];
    return total;
}

std::optional<LiftOption> min_cost_to_top(const Election& e, const CostModel& model, int voter,
                                          TargetGroup group, const Goal& goal) {
    if (voter < 0 || voter >= e.num_voters()) throw std::invalid_argument("voter index out of range");
    std::vector<char> cmask = mask_of(e.num_parties(), goal.coalition);
    const Voter& v = e.voters[voter];
    Party cur = top_choice(v.order, e.running);
    bool shift = model.kind == CostModel::Kind::CoalitionShift;

    std::optional<LiftOption> best;
    for (Party q = 0; q < e.num_parties(); ++q) {
        if (!e.is_running(q)) continue;
        bool fav = goal.favored && q == *goal.favored;
        if (group == TargetGroup::Favored && !fav) continue;
        if (group == TargetGroup::CoalitionRest && (!cmask[q] || fav)) continue;
        if (group == TargetGroup::Opposition && cmask[q]) continue;
        if (q != cur && shift && !cmask[q]) continue;
        PreferenceOrder order = q == cur ? v.order : lifted_order(v.order, e.running, q);
        Rational c = bribe_cost(model, voter, v.order, order, cmask);
        if (!best || c < best->cost) best = LiftOption{c, order, q};
    }
    return best;
}

BriberyDecision solve_dollar(const BriberyInstance& inst) {
    inst.validate();
    const Election& e = inst.election;
    const Goal& goal = inst.goal;
    std::vector<Rational> prices = dollar_prices(inst);

    std::vector<Party> running_coalition;
    for (Party p : goal.coalition)
        if (e.is_running(p)) running_coalition.push_back(p);
    if (running_coalition.empty()) return decide_static(inst);

    bool favored_running = goal.favored && e.is_running(*goal.favored);
    if (goal.favored && !favored_running && goal.rho > Rational(0)) {
        // No bribe moves votes onto a non-running favored party, so the
        // ratio target forces the coalition share to 0.
        if (goal.phi > Rational(0)) return {};
        throw std::invalid_argument("solver needs phi > 0 when the favored party is not running");
    }

    Party pivot = pick_pivot(inst, running_coalition);
    DollarChains ch = build_dollar_chains(inst, pivot);
    int n = ch.n;
    const std::vector<long long>& f = ch.fsteps.back();
    const std::vector<long long>& h = ch.hsteps.back();
    long long npivot = (long long)ch.pools.voters[pivot].size();
    IntegerObjectives obj(goal);

    long long best = kInf;
    int bl = 0, bd = 0, bac = 0, bao = 0, blp = 0;
    for (int l = 0; l <= n; ++l)
        for (int d = 0; d <= n; ++d) {
            long long extra = d > l ? ch.pools.mincost(pivot, d - l) : 0;
            if (extra >= kInf) continue;
            long long a1 = npivot + l - d;
            long long a1eff = a1 >= ch.T ? a1 : 0;
            for (int ac = 0; ac <= n; ++ac)
                for (int ao = 0; ao <= n; ++ao) {
                    if (!obj.ok(a1eff, ac, ao)) continue;
                    for (int lp = 0; lp <= l; ++lp) {
                        long long cand = padd(padd(h[ch.hidx(lp, d, ac)], f[ch.fidx(l - lp, ao)]), extra);
                        if (cand < best) {
                            best = cand;
                            bl = l; bd = d; bac = ac; bao = ao; blp = lp;
                        }
                    }
                }
        }

    BriberyDecision out;
    if (best >= kInf || !scaled_le(best, ch.costs.den, inst.budget)) return out;

    // Walk the tables back to per-party bribe counts and vote targets.
    std::vector<std::pair<Party, int>> fpicks;           // (party, bribed)
    std::vector<std::tuple<Party, int, int>> hpicks;     // (party, bribed, votes in)
    {
        int l = bl - blp, a = bao;
        for (int t = (int)ch.opp.size() - 1; t >= 0; --t) {
            Party j = ch.opp[t];
            long long vj = (long long)ch.pools.voters[j].size();
            long long cur = ch.fsteps[t + 1][ch.fidx(l, a)];
            bool done = false;
            for (int lj = 0; lj <= std::min<long long>(l, vj) && !done; ++lj) {
                long long rem = vj - lj;
                long long c = ch.pools.mincost(j, lj);
                if (rem >= ch.T) {
                    if (a >= rem && padd(ch.fsteps[t][ch.fidx(l - lj, a - (int)rem)], c) == cur) {
                        fpicks.push_back({j, lj});
                        l -= lj;
                        a -= (int)rem;
                        done = true;
                    }
                } else if (padd(ch.fsteps[t][ch.fidx(l - lj, a)], c) == cur) {
                    fpicks.push_back({j, lj});
                    l -= lj;
                    done = true;
                }
            }
            if (!done) throw std::logic_error("table walk failed");
        }
    }
    {
        int l = blp, d = bd, a = bac;
        for (int t = (int)ch.crest.size() - 1; t >= 0; --t) {
            Party j = ch.crest[t];
            long long vj = (long long)ch.pools.voters[j].size();
            long long cur = ch.hsteps[t + 1][ch.hidx(l, d, a)];
            bool done = false;
            for (int lj = 0; lj <= std::min<long long>(l, vj) && !done; ++lj) {
                long long c = ch.pools.mincost(j, lj);
                for (int dj = 0; dj <= d && !done; ++dj) {
                    long long rem = vj - lj + dj;
                    if (rem >= ch.T) {
                        if (a >= rem && padd(ch.hsteps[t][ch.hidx(l - lj, d - dj, a - (int)rem)], c) == cur) {
                            hpicks.push_back({j, lj, dj});
                            l -= lj; d -= dj; a -= (int)rem;
                            done = true;
                        }
                    } else if (padd(ch.hsteps[t][ch.hidx(l - lj, d - dj, a)], c) == cur) {
                        hpicks.push_back({j, lj, dj});
                        l -= lj; d -= dj;
                        done = true;
                    }
                }
            }
            if (!done) throw std::logic_error("table walk failed");
        }
    }

    std::vector<int> bribed;  // voter indices, non-pivot pools first
    std::vector<Party> targets;
    for (auto& [j, lj, dj] : hpicks) {
        for (int i = 0; i < lj; ++i) bribed.push_back(ch.pools.voters[j][i]);
        for (int i = 0; i < dj; ++i) targets.push_back(j);
    }
    for (auto& [j, lj] : fpicks)
        for (int i = 0; i < lj; ++i) bribed.push_back(ch.pools.voters[j][i]);
    if (bd > bl)
        for (int i = 0; i < bd - bl; ++i) bribed.push_back(ch.pools.voters[pivot][i]);

    Bribe bribe;
    for (size_t i = 0; i < bribed.size(); ++i) {
        Party target = i < targets.size() ? targets[i] : pivot;
        const Voter& v = e.voters[bribed[i]];
        PreferenceOrder order = v.order;
        order.ranking.erase(std::find(order.ranking.begin(), order.ranking.end(), target));
        order.ranking.insert(order.ranking.begin(), target);
        if (!(order == v.order)) bribe.changes[v.id] = order;
    }

    Tally check = tally(apply_bribe(e, bribe));
    if (!check_objectives(check, goal).both()) throw std::logic_error("witness failed re-check");

    out.feasible = true;
    out.cost = Rational(best, ch.costs.den);
    out.witness = std::move(bribe);
    return out;
}

BriberyDecision solve_swapshift_no_threshold(const BriberyInstance& inst) {
    inst.validate();
    if (inst.cost_model.kind != CostModel::Kind::SwapMatrix &&
        inst.cost_model.kind != CostModel::Kind::CoalitionShift)
        throw std::invalid_argument("flow solver needs a SwapMatrix or CoalitionShift model");
    if (!inst.election.tau.is_zero())
        throw std::invalid_argument("flow solver requires tau = 0");

    const Election& e = inst.election;
    int n = e.num_voters();
    std::vector<std::optional<LiftOption>> lifts[3];
    std::vector<Rational> finite;
    for (int g = 0; g < 3; ++g) {
        lifts[g].resize(n);
        for (int i = 0; i < n; ++i) {
            lifts[g][i] = min_cost_to_top(e, inst.cost_model, i, (TargetGroup)g, inst.goal);
            if (lifts[g][i]) finite.push_back(lifts[g][i]->cost);
        }
    }
    ScaledCosts sc = scale_rationals(finite);
    std::vector<long long> cost[3];
    {
        size_t at = 0;
        for (int g = 0; g < 3; ++g) {
            cost[g].assign(n, kInf);
            for (int i = 0; i < n; ++i)
                if (lifts[g][i]) cost[g][i] = sc.nums[at++];
        }
    }

    bool has_favored = inst.goal.favored && e.is_running(*inst.goal.favored);
    IntegerObjectives obj(inst.goal);
    long long best = kInf;
    std::vector<int> best_groups;

    for (int k1 = 0; k1 <= (has_favored ? n : 0); ++k1)
        for (int kc = 0; k1 + kc <= n; ++kc) {
            if (!obj.ok(k1, kc, n - k1 - kc)) continue;
            FlowNetwork net;
            net.node_count = 5 + 4 * n;
            net.source = 0;
            net.sink = 4 + 4 * n;
            net.demand = n;
            long long want[3] = {(long long)k1, (long long)kc, (long long)(n - k1 - kc)};
            for (int g = 0; g < 3; ++g) net.arcs.push_back({0, 1 + g, want[g], 0});
            std::vector<std::pair<int, int>> voter_arcs;  // (voter, group) per u->v arc
            for (int i = 0; i < n; ++i) {
                for (int g = 0; g < 3; ++g) {
                    if (cost[g][i] >= kInf) continue;
                    int u = 4 + 3 * i + g;
                    net.arcs.push_back({1 + g, u, 1, 0});
                    voter_arcs.push_back({i, g});
                    net.arcs.push_back({u, 4 + 3 * n + i, 1, cost[g][i]});
                }
                net.arcs.push_back({4 + 3 * n + i, net.sink, 1, 0});
            }
            auto res = solve_min_cost_flow(net);
            if (!res || res->total_cost >= best) continue;
            best = res->total_cost;
            best_groups.assign(n, -1);
            size_t va = 0;
            for (size_t a = 0; a < net.arcs.size(); ++a) {
                const FlowArc& arc = net.arcs[a];
                if (arc.from >= 1 && arc.from <= 3 && arc.to >= 4) {
                    if (res->flow[a] > 0) best_groups[voter_arcs[va].first] = voter_arcs[va].second;
                    ++va;
                }
            }
        }

    BriberyDecision out;
    if (best >= kInf || !scaled_le(best, sc.den, inst.budget)) return out;

    Bribe bribe;
    for (int i = 0; i < n; ++i) {
        const LiftOption& opt = *lifts[best_groups[i]][i];
        if (!(opt.order == e.voters[i].order)) bribe.changes[e.voters[i].id] = opt.order;
    }
    Tally check = tally(apply_bribe(e, bribe));
    if (!check_objectives(check, inst.goal).both()) throw std::logic_error("witness failed re-check");

    out.feasible = true;
    out.cost = Rational(best, sc.den);
    out.witness = std::move(bribe);
    return out;
}

BriberyInstance shift_to_swap(const BriberyInstance& inst) {
    inst.validate();
    if (inst.cost_model.kind != CostModel::Kind::CoalitionShift)
        throw std::invalid_argument("transform needs a CoalitionShift model");

    int n = inst.election.num_voters();
    int m = inst.election.num_parties();
    std::vector<Rational> slopes(n);
    for (int i = 0; i < n; ++i) {
        const ShiftSchedule& s = inst.cost_model.shift[i];
        if (s.slope) {
            slopes[i] = *s.slope;
        } else {
            Rational slope = s.table.size() > 1 ? s.table[1] : Rational(0);
            for (size_t k = 0; k < s.table.size(); ++k)
                if (s.table[k] != slope * Rational((long long)k))
                    throw std::invalid_argument("shift schedule is not linear");
            slopes[i] = slope;
        }
    }

    Rational blocked = inst.budget + Rational(1);
    std::vector<char> cmask = mask_of(m, inst.goal.coalition);
    std::vector<std::vector<std::vector<Rational>>> sw(
        n, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m, Rational(0))));
    for (int i = 0; i < n; ++i)
        for (Party p = 0; p < m; ++p)
            for (Party q = 0; q < m; ++q) {
                if (p == q) continue;
                sw[i][p][q] = cmask[q] ? slopes[i] : blocked;
            }

    BriberyInstance out = inst;
    out.cost_model = CostModel::swap_matrix(std::move(sw));
    return out;
}

BriberyDecision brute_force_bribery(const BriberyInstance& inst, int guard) {
    inst.validate();
    int limit_size = resolve_guard(guard, 7);
    const Election& e = inst.election;
    int n = e.num_voters();
    int m = e.num_parties();
    if (n > limit_size || m > limit_size)
        throw std::invalid_argument("instance exceeds the oracle guard");

    std::vector<char> cmask = mask_of(m, inst.goal.coalition);
    bool shift = inst.cost_model.kind == CostModel::Kind::CoalitionShift;

    struct Action {
        Rational cost;
        Party target;  // -1 keeps the original order
        PreferenceOrder order;
    };
    std::vector<std::vector<Action>> actions(n);
    std::vector<Party> orig_top(n);
    std::vector<Rational> all_costs;
    for (int i = 0; i < n; ++i) {
        const Voter& v = e.voters[i];
        orig_top[i] = top_choice(v.order, e.running);
        actions[i].push_back({Rational(0), -1, v.order});
        for (Party q = 0; q < m; ++q) {
            if (!e.is_running(q) || q == orig_top[i]) continue;
            if (shift && !cmask[q]) continue;
            PreferenceOrder order = lifted_order(v.order, e.running, q);
            actions[i].push_back({bribe_cost(inst.cost_model, i, v.order, order, cmask), q, order});
        }
        std::sort(actions[i].begin(), actions[i].end(), [](const Action& a, const Action& b) {
            if (a.cost != b.cost) return a.cost < b.cost;
            return a.target < b.target;
        });
        for (const Action& a : actions[i]) all_costs.push_back(a.cost);
    }

    ScaledCosts sc = scale_rationals(all_costs);
    std::vector<std::vector<long long>> scaled(n);
    {
        size_t at = 0;
        for (int i = 0; i < n; ++i)
            for (size_t k = 0; k < actions[i].size(); ++k) scaled[i].push_back(sc.nums[at++]);
    }
    long long limit = scaled_budget_floor(inst.budget, sc.den);

    long long T = threshold_count(e.tau, n);
    IntegerObjectives obj(inst.goal);
    Party favored = inst.goal.favored && e.is_running(*inst.goal.favored) ? *inst.goal.favored : -1;

    std::vector<long long> votes(m, 0);
    for (int i = 0; i < n; ++i) votes[orig_top[i]]++;

    long long best = kInf;
    std::vector<int> chosen(n, 0), best_chosen;

    auto evaluate = [&]() {
        long long a_fav = 0, a_crest = 0, a_opp = 0;
        for (Party p = 0; p < m; ++p) {
            if (!e.is_running(p) || votes[p] < T) continue;
            if (p == favored)
                a_fav = votes[p];
            else if (cmask[p])
                a_crest += votes[p];
            else
                a_opp += votes[p];
        }
        return obj.ok(a_fav, a_crest, a_opp);
    };

    auto dfs = [&](auto&& self, int i, long long acc) -> void {
        if (i == n) {
            if (acc < best && evaluate()) {
                best = acc;
                best_chosen = chosen;
            }
            return;
        }
        for (size_t k = 0; k < actions[i].size(); ++k) {
            long long nacc = acc + scaled[i][k];
            if (nacc > limit || nacc >= best) break;
            Party tgt = actions[i][k].target;
            chosen[i] = (int)k;
            if (tgt >= 0) { votes[orig_top[i]]--; votes[tgt]++; }
            self(self, i + 1, nacc);
            if (tgt >= 0) { votes[tgt]--; votes[orig_top[i]]++; }
        }
    };
    if (limit >= 0) dfs(dfs, 0, 0);

    BriberyDecision out;
    if (best >= kInf) return out;
    out.feasible = true;
    out.cost = Rational(best, sc.den);
    Bribe bribe;
    for (int i = 0; i < n; ++i) {
        const Action& a = actions[i][best_chosen[i]];
        if (a.target >= 0 && !(a.order == e.voters[i].order)) bribe.changes[e.voters[i].id] = a.order;
    }
    out.witness = std::move(bribe);
    return out;
}

Election apply_bribe(const Election& e, const Bribe& bribe) {
    Election out = e;
    for (auto& [id, order] : bribe.changes) {
        bool found = false;
        for (Voter& v : out.voters) {
            if (v.id == id) {
                v.order = order;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("bribe names unknown voter: " + id);
    }
    out.validate();
    return out;
}

Rational bribe_total_cost(const BriberyInstance& inst, const Bribe& bribe) {
    std::vector<char> cmask = mask_of(inst.election.num_parties(), inst.goal.coalition);
    Rational total(0);
    for (auto& [id, order] : bribe.changes) {
        int idx = -1;
        for (int i = 0; i < inst.election.num_voters(); ++i)
            if (inst.election.voters[i].id == id) { idx = i; break; }
        if (idx < 0) throw std::invalid_argument("bribe names unknown voter: " + id);
        total += bribe_cost(inst.cost_model, idx, inst.election.voters[idx].order, order, cmask);
    }
    return total;
}

namespace detail {

long long DollarDP::g(int l, int d, int ac, int ao) const {
    int n1 = n + 1;
    return table[((l * n1 + d) * n1 + ac) * n1 + ao];
}

DollarDP dollar_dp(const BriberyInstance& inst) {
    inst.validate();
    std::vector<Party> running_coalition;
    for (Party p : inst.goal.coalition)
        if (inst.election.is_running(p)) running_coalition.push_back(p);
    if (running_coalition.empty()) throw std::invalid_argument("no running coalition party");
    Party pivot = pick_pivot(inst, running_coalition);
    DollarChains ch = build_dollar_chains(inst, pivot);

    DollarDP dp;
    dp.n = ch.n;
    dp.den = ch.costs.den;
    dp.threshold = ch.T;
    dp.pivot = pivot;
    dp.inf = kInf;
    int n1 = ch.n + 1;
    dp.table.assign((size_t)n1 * n1 * n1 * n1, kInf);
    const auto& f = ch.fsteps.back();
    const auto& h = ch.hsteps.back();
    for (int l = 0; l <= ch.n; ++l)
        for (int d = 0; d <= ch.n; ++d)
            for (int ac = 0; ac <= ch.n; ++ac)
                for (int ao = 0; ao <= ch.n; ++ao) {
                    long long best = kInf;
                    for (int lp = 0; lp <= l; ++lp)
                        best = std::min(best, padd(h[ch.hidx(lp, d, ac)], f[ch.fidx(l - lp, ao)]));
                    dp.table[((size_t)(l * n1 + d) * n1 + ac) * n1 + ao] = best;
                }
    return dp;
}

}  // namespace detail

}  // namespace ct
