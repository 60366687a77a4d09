#include "ct/voter_control.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace ct {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

long long padd(long long a, long long b) {
    if (a >= kInf || b >= kInf) return kInf;
    return a + b;
}

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
    for (const Rational& x : xs) {
        __int128 v = (__int128)x.num() * (l / x.den());
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("scaled cost overflow");
        out.nums.push_back((long long)v);
    }
    return out;
}

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

int resolve_guard(int guard, int fallback) {
    if (guard >= 0) return guard;
    if (const char* env = std::getenv("COALITION_TACTICS_GUARD")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 0) return (int)v;
    }
    return fallback;
}

// Spoilers grouped by top running choice, cheapest first, with prefix sums.
struct AddPools {
    std::vector<std::vector<int>> spoilers;      // per universe party, pool-sorted
    std::vector<std::vector<long long>> prefix;

    long long cost(Party p, long long count) const {
        if (count < 0 || count > (long long)spoilers[p].size()) return kInf;
        return prefix[p][count];
    }
};

struct AddContext {
    int n = 0;  // registered voters
    int w = 0;  // spoiler pool size
    Party pivot = -1;
    std::vector<Party> others;       // running parties except pivot
    std::vector<char> crest_mask;    // others in the coalition
    std::vector<long long> base;     // registered votes per party
    AddPools pools;
    ScaledCosts costs;
};

AddContext build_add_context(const VoterControlInstance& inst) {
    const Election& e = inst.election;
    AddContext ctx;
    ctx.n = e.num_voters();
    ctx.w = (int)inst.spoilers.size();
    ctx.pivot = inst.goal.favored ? *inst.goal.favored : inst.goal.coalition.front();

    std::vector<Rational> prices;
    for (const SpoilerVoter& s : inst.spoilers) prices.push_back(s.cost);
    ctx.costs = scale_rationals(prices);

    int m = e.num_parties();
    ctx.base.assign(m, 0);
    for (const Voter& v : e.voters) ctx.base[top_choice(v.order, e.running)]++;

    ctx.pools.spoilers.assign(m, {});
    ctx.pools.prefix.assign(m, {});
    for (int i = 0; i < ctx.w; ++i)
        ctx.pools.spoilers[top_choice(inst.spoilers[i].order, e.running)].push_back(i);
    for (Party p = 0; p < m; ++p) {
        auto& vs = ctx.pools.spoilers[p];
        std::sort(vs.begin(), vs.end(), [&](int a, int b) {
            if (ctx.costs.nums[a] != ctx.costs.nums[b]) return ctx.costs.nums[a] < ctx.costs.nums[b];
            return a < b;
        });
        auto& pref = ctx.pools.prefix[p];
        pref.assign(vs.size() + 1, 0);
        for (size_t i = 0; i < vs.size(); ++i) pref[i + 1] = pref[i] + ctx.costs.nums[vs[i]];
    }

    ctx.crest_mask.assign(m, 0);
    for (Party p : e.running_parties()) {
        if (p == ctx.pivot) continue;
        ctx.others.push_back(p);
        if (inst.goal.in_coalition(p)) ctx.crest_mask[p] = 1;
    }
    return ctx;
}

// Table over (active crest votes, active opposition votes, spoilers used)
// after folding a prefix of ctx.others at addition count r.
struct AddChain {
    int cap = 0;  // n + r
    int r = 0;
    std::vector<std::vector<long long>> steps;

    int idx(int l, int lb, int s) const { return (l * (cap + 1) + lb) * (r + 1) + s; }
};

AddChain build_add_chain(const AddContext& ctx, int r, long long tr) {
    AddChain chain;
    chain.cap = ctx.n + r;
    chain.r = r;
    int cap = chain.cap;
    std::vector<long long> cur((cap + 1) * (cap + 1) * (r + 1), kInf);
    cur[chain.idx(0, 0, 0)] = 0;
    chain.steps.push_back(cur);
    for (Party j : ctx.others) {
        std::vector<long long> next((cap + 1) * (cap + 1) * (r + 1), kInf);
        long long pool = (long long)ctx.pools.spoilers[j].size();
        bool crest = ctx.crest_mask[j] != 0;
        for (int l = 0; l <= cap; ++l)
            for (int lb = 0; lb <= cap; ++lb)
                for (int s = 0; s <= r; ++s) {
                    long long best = kInf;
                    for (int sj = 0; sj <= std::min<long long>(s, pool); ++sj) {
                        long long na = ctx.base[j] + sj;
                        long long c = ctx.pools.cost(j, sj);
                        long long prev;
                        if (na >= tr) {
                            if (crest) {
                                if (l < na) continue;
                                prev = cur[chain.idx(l - (int)na, lb, s - sj)];
                            } else {
                                if (lb < na) continue;
                                prev = cur[chain.idx(l, lb - (int)na, s - sj)];
                            }
                        } else {
                            prev = cur[chain.idx(l, lb, s - sj)];
                        }
                        best = std::min(best, padd(prev, c));
                    }
                    next[chain.idx(l, lb, s)] = best;
                }
        cur = std::move(next);
        chain.steps.push_back(cur);
    }
    return chain;
}

ControlDecision solve_add(const VoterControlInstance& inst) {
    const Election& e = inst.election;
    AddContext ctx = build_add_context(inst);
    IntegerObjectives obj(inst.goal);

    long long best = kInf;
    int br = 0, bs1 = 0, bac = 0, bao = 0;
    for (int r = 0; r <= ctx.w; ++r) {
        long long tr = threshold_count(e.tau, ctx.n + r);
        AddChain chain = build_add_chain(ctx, r, tr);
        const std::vector<long long>& f = chain.steps.back();
        long long pivot_pool = (long long)ctx.pools.spoilers[ctx.pivot].size();
        for (int s1 = 0; s1 <= std::min<long long>(r, pivot_pool); ++s1) {
            long long na = ctx.base[ctx.pivot] + s1;
            long long a1 = (e.is_running(ctx.pivot) && na >= tr) ? na : 0;
            long long cp = ctx.pools.cost(ctx.pivot, s1);
            for (int ac = 0; ac <= chain.cap; ++ac)
                for (int ao = 0; ao <= chain.cap; ++ao) {
                    if (!obj.ok(a1, ac, ao)) continue;
                    long long cand = padd(cp, f[chain.idx(ac, ao, r - s1)]);
                    if (cand < best) {
                        best = cand;
                        br = r; bs1 = s1; bac = ac; bao = ao;
                    }
                }
        }
    }

    ControlDecision out;
    if (best >= kInf || !scaled_le(best, ctx.costs.den, inst.budget)) return out;

    // Rebuild the chain for the winning r and walk it back to per-party
    // addition counts.
    long long tr = threshold_count(e.tau, ctx.n + br);
    AddChain chain = build_add_chain(ctx, br, tr);
    std::vector<int> added;
    for (int i = 0; i < bs1; ++i) added.push_back(ctx.pools.spoilers[ctx.pivot][i]);
    {
        int l = bac, lb = bao, s = br - bs1;
        for (int t = (int)ctx.others.size() - 1; t >= 0; --t) {
            Party j = ctx.others[t];
            long long pool = (long long)ctx.pools.spoilers[j].size();
            bool crest = ctx.crest_mask[j] != 0;
            long long cur = chain.steps[t + 1][chain.idx(l, lb, s)];
            bool done = false;
            for (int sj = 0; sj <= std::min<long long>(s, pool) && !done; ++sj) {
                long long na = ctx.base[j] + sj;
                long long c = ctx.pools.cost(j, sj);
                if (na >= tr) {
                    if (crest && l >= na &&
                        padd(chain.steps[t][chain.idx(l - (int)na, lb, s - sj)], c) == cur) {
                        l -= (int)na;
                        done = true;
                    } else if (!crest && lb >= na &&
                               padd(chain.steps[t][chain.idx(l, lb - (int)na, s - sj)], c) == cur) {
                        lb -= (int)na;
                        done = true;
                    }
                } else if (padd(chain.steps[t][chain.idx(l, lb, s - sj)], c) == cur) {
                    done = true;
                }
                if (done) {
                    for (int i = 0; i < sj; ++i) added.push_back(ctx.pools.spoilers[j][i]);
                    s -= sj;
                }
            }
            if (!done) throw std::logic_error("table walk failed");
        }
    }

    std::sort(added.begin(), added.end());
    std::vector<std::string> ids;
    for (int i : added) ids.push_back(inst.spoilers[i].id);

    Tally check = tally(apply_voter_control(inst, ids));
    if (!check_objectives(check, inst.goal).both()) throw std::logic_error("witness failed re-check");

    out.feasible = true;
    out.cost = Rational(best, ctx.costs.den);
    out.witness = std::move(ids);
    return out;
}

}  // namespace

void VoterControlInstance::validate() const {
    election.validate();
    validate_goal(election.universe, goal);
    std::unordered_set<std::string> ids;
    for (const Voter& v : election.voters) ids.insert(v.id);
    if (mode == ControlMode::AddVoters) {
        if (!deletion_costs.empty())
            throw std::invalid_argument("deletion costs on an addition instance");
        std::vector<char> seen(election.num_parties());
        for (const SpoilerVoter& s : spoilers) {
            if (s.id.empty()) throw std::invalid_argument("empty spoiler id");
            if (!ids.insert(s.id).second)
                throw std::invalid_argument("duplicate voter id: " + s.id);
            if ((int)s.order.ranking.size() != election.num_parties())
                throw std::invalid_argument("spoiler ranking does not cover the universe");
            std::fill(seen.begin(), seen.end(), 0);
            for (Party p : s.order.ranking) {
                if (p < 0 || p >= election.num_parties() || seen[p])
                    throw std::invalid_argument("spoiler ranking is not a permutation");
                seen[p] = 1;
            }
        }
    } else {
        if (!spoilers.empty()) throw std::invalid_argument("spoiler pool on a deletion instance");
        if (deletion_costs.size() != ids.size())
            throw std::invalid_argument("deletion cost count mismatch");
        for (const auto& [id, cost] : deletion_costs)
            if (!ids.count(id)) throw std::invalid_argument("deletion cost for unknown voter: " + id);
    }
}

std::optional<Rational> add_pool_cost(const VoterControlInstance& inst, Party p, long long count) {
    if (inst.mode != ControlMode::AddVoters)
        throw std::invalid_argument("addition pool on a deletion instance");
    if (p < 0 || p >= inst.election.num_parties())
        throw std::invalid_argument("party outside universe");
    if (count < 0) throw std::invalid_argument("negative pool count");
    std::vector<Rational> pool;
    for (const SpoilerVoter& s : inst.spoilers)
        if (top_choice(s.order, inst.election.running) == p) pool.push_back(s.cost);
    if (count > (long long)pool.size()) return std::nullopt;
    std::sort(pool.begin(), pool.end());
    Rational total(0);
    for (long long i = 0; i < count; ++i) total += pool[i];
    return total;
}

ControlDecision solve_add_voters(const VoterControlInstance& inst) {
    inst.validate();
    if (inst.mode != ControlMode::AddVoters)
        throw std::invalid_argument("addition solver on a deletion instance");
    return solve_add(inst);
}

ControlDecision solve_delete_voters(const VoterControlInstance& inst) {
    inst.validate();
    if (inst.mode != ControlMode::DeleteVoters)
        throw std::invalid_argument("deletion solver on an addition instance");

    VoterControlInstance add;
    add.election = inst.election;
    add.election.voters.clear();
    add.mode = ControlMode::AddVoters;
    add.goal = inst.goal;
    Rational total(0);
    for (const Voter& v : inst.election.voters) {
        Rational c = inst.deletion_costs.at(v.id);
        total += c;
        add.spoilers.push_back({v.id, v.order, -c});
    }
    add.budget = inst.budget - total;

    ControlDecision kept = solve_add(add);
    ControlDecision out;
    if (!kept.feasible) return out;

    std::unordered_set<std::string> keep(kept.witness->begin(), kept.witness->end());
    std::vector<std::string> deleted;
    for (const Voter& v : inst.election.voters)
        if (!keep.count(v.id)) deleted.push_back(v.id);

    Tally check = tally(apply_voter_control(inst, deleted));
    if (!check_objectives(check, inst.goal).both()) throw std::logic_error("witness failed re-check");

    out.feasible = true;
    out.cost = total + *kept.cost;
    out.witness = std::move(deleted);
    return out;
}

ControlDecision brute_force_voter_control(const VoterControlInstance& inst, int guard) {
    inst.validate();
    int limit = resolve_guard(guard, 12);
    const Election& e = inst.election;
    bool add = inst.mode == ControlMode::AddVoters;
    int w = add ? (int)inst.spoilers.size() : e.num_voters();
    if (w > limit) throw std::invalid_argument("instance exceeds the oracle guard");

    int m = e.num_parties();
    std::vector<char> cmask = mask_of(m, inst.goal.coalition);
    Party favored = inst.goal.favored ? *inst.goal.favored : -1;
    IntegerObjectives obj(inst.goal);

    std::vector<long long> base(m, 0);
    for (const Voter& v : e.voters) base[top_choice(v.order, e.running)]++;
    std::vector<Party> tops(w);
    std::vector<Rational> prices(w);
    for (int i = 0; i < w; ++i) {
        if (add) {
            tops[i] = top_choice(inst.spoilers[i].order, e.running);
            prices[i] = inst.spoilers[i].cost;
        } else {
            tops[i] = top_choice(e.voters[i].order, e.running);
            prices[i] = inst.deletion_costs.at(e.voters[i].id);
        }
    }

    std::optional<Rational> best;
    unsigned best_mask = 0;
    std::vector<long long> votes(m);
    for (unsigned mask = 0; mask < (1u << w); ++mask) {
        votes = base;
        long long picked = 0;
        Rational cost(0);
        for (int i = 0; i < w; ++i)
            if (mask & (1u << i)) {
                votes[tops[i]] += add ? 1 : -1;
                cost += prices[i];
                picked++;
            }
        long long total = e.num_voters() + (add ? picked : -picked);
        long long tr = threshold_count(e.tau, total);
        long long a_fav = 0, a_crest = 0, a_opp = 0;
        for (Party p = 0; p < m; ++p) {
            if (!e.is_running(p) || votes[p] < tr) continue;
            if (p == favored)
                a_fav = votes[p];
            else if (cmask[p])
                a_crest += votes[p];
            else
                a_opp += votes[p];
        }
        if (!obj.ok(a_fav, a_crest, a_opp)) continue;
        if (!best || cost < *best) {
            best = cost;
            best_mask = mask;
        }
    }

    ControlDecision out;
    if (!best || !(*best <= inst.budget)) return out;
    out.feasible = true;
    out.cost = *best;
    std::vector<std::string> ids;
    for (int i = 0; i < w; ++i)
        if (best_mask & (1u << i)) ids.push_back(add ? inst.spoilers[i].id : e.voters[i].id);
    out.witness = std::move(ids);
    return out;
}

Election apply_voter_control(const VoterControlInstance& inst, const std::vector<std::string>& ids) {
    Election out = inst.election;
    if (inst.mode == ControlMode::AddVoters) {
        std::unordered_set<std::string> chosen(ids.begin(), ids.end());
        if (chosen.size() != ids.size()) throw std::invalid_argument("duplicate witness id");
        size_t found = 0;
        for (const SpoilerVoter& s : inst.spoilers)
            if (chosen.count(s.id)) {
                out.voters.push_back({s.id, s.order});
                found++;
            }
        if (found != ids.size()) throw std::invalid_argument("witness names unknown spoiler");
    } else {
        std::unordered_set<std::string> doomed(ids.begin(), ids.end());
        if (doomed.size() != ids.size()) throw std::invalid_argument("duplicate witness id");
        size_t before = out.voters.size();
        std::erase_if(out.voters, [&](const Voter& v) { return doomed.count(v.id) > 0; });
        if (before - out.voters.size() != ids.size())
            throw std::invalid_argument("witness names unknown voter");
    }
    out.validate();
    return out;
}

Rational voter_control_cost(const VoterControlInstance& inst, const std::vector<std::string>& ids) {
    Rational total(0);
    if (inst.mode == ControlMode::AddVoters) {
        for (const std::string& id : ids) {
            bool found = false;
            for (const SpoilerVoter& s : inst.spoilers)
                if (s.id == id) {
                    total += s.cost;
                    found = true;
                    break;
                }
            if (!found) throw std::invalid_argument("unknown spoiler id: " + id);
        }
    } else {
        for (const std::string& id : ids) {
            auto it = inst.deletion_costs.find(id);
            if (it == inst.deletion_costs.end()) throw std::invalid_argument("unknown voter id: " + id);
            total += it->second;
        }
    }
    return total;
}

}  // namespace ct
