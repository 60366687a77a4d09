#include "ct/instance_io.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "json.hpp"

namespace ct {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

std::string rat(const Rational& r) {
    return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

bool is_bribery(ProblemKind k) {
    return k == ProblemKind::BriberyOne || k == ProblemKind::BriberyDollar ||
           k == ProblemKind::BriberySwap || k == ProblemKind::BriberyShift;
}

bool is_voter_control(ProblemKind k) {
    return k == ProblemKind::ControlAV || k == ProblemKind::ControlDV;
}

bool is_party_addition(ProblemKind k) {
    return k == ProblemKind::ControlACP || k == ProblemKind::ControlAOP;
}

PartyControlVariant variant_of(ProblemKind k) {
    switch (k) {
        case ProblemKind::ControlDCP: return PartyControlVariant::DeleteCoalition;
        case ProblemKind::ControlDOP: return PartyControlVariant::DeleteOpposition;
        case ProblemKind::ControlACP: return PartyControlVariant::AddCoalition;
        default: return PartyControlVariant::AddOpposition;
    }
}

const json& need(const json& obj, const char* key, const std::string& at) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(at, "missing key");
    return *it;
}

std::string need_string(const json& j, const std::string& at) {
    if (!j.is_string()) throw ParseError(at, "expected a string");
    return j.get<std::string>();
}

bool need_bool(const json& j, const std::string& at) {
    if (!j.is_boolean()) throw ParseError(at, "expected a boolean");
    return j.get<bool>();
}

Rational need_rational(const json& j, const std::string& at) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw ParseError(at, "expected an integer or a \"num/den\" string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& ex) {
        throw ParseError(at, ex.what());
    }
}

long long need_int(const json& j, const std::string& at) {
    if (!j.is_number_integer()) throw ParseError(at, "expected an integer");
    return j.get<long long>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& at) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ParseError(at.empty() ? it.key() : at + "." + it.key(), "unknown key");
}

struct RawVoter {
    std::string id;
    PreferenceOrder order;
    std::optional<Rational> cost;
    bool registered = true;
};

// Shared schedule from either an array table or {"slope": x}.
ShiftSchedule parse_schedule(const json& j, const std::string& at) {
    ShiftSchedule s;
    if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            s.table.push_back(need_rational(j[i], at + "[" + std::to_string(i) + "]"));
    } else if (j.is_object()) {
        reject_unknown(j, {"slope"}, at);
        s.slope = need_rational(need(j, "slope", at + ".slope"), at + ".slope");
    } else {
        throw ParseError(at, "expected an array or {\"slope\": ...}");
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& ex) {
        throw ParseError(at, ex.what());
    }
    return s;
}

}  // namespace

ParseError::ParseError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

const std::string& problem_tag(ProblemKind kind) {
    static const std::string tags[] = {"bribery-1",  "bribery-dollar", "bribery-swap",
                                       "bribery-shift", "control-av",  "control-dv",
                                       "control-dcp",   "control-dop", "control-acp",
                                       "control-aop"};
    return tags[(int)kind];
}

std::optional<ProblemKind> problem_from_tag(const std::string& tag) {
    for (int i = 0; i < 10; ++i)
        if (problem_tag((ProblemKind)i) == tag) return (ProblemKind)i;
    return std::nullopt;
}

ParsedInstance parse_instance(const std::string& bytes) {
    json root;
    try {
        root = json::parse(bytes);
    } catch (const json::exception& ex) {
        throw ParseError("$", ex.what());
    }
    if (!root.is_object()) throw ParseError("$", "instance document must be a JSON object");
    reject_unknown(root,
                   {"problem", "universe", "running", "spoiler_parties", "tau", "phi", "rho",
                    "coalition", "favored", "budget", "k", "voters", "swap_costs",
                    "shift_schedule"},
                   "");

    std::string tag = need_string(need(root, "problem", "problem"), "problem");
    auto kind = problem_from_tag(tag);
    if (!kind) throw ParseError("problem", "unknown problem tag " + tag);

    const json& juni = need(root, "universe", "universe");
    if (!juni.is_array() || juni.empty())
        throw ParseError("universe", "expected a non-empty array of party ids");
    std::vector<std::string> names;
    for (size_t i = 0; i < juni.size(); ++i)
        names.push_back(need_string(juni[i], "universe[" + std::to_string(i) + "]"));
    PartyUniverse universe;
    try {
        universe = PartyUniverse::of(std::move(names));
    } catch (const std::invalid_argument& ex) {
        throw ParseError("universe", ex.what());
    }
    int m = universe.size();

    auto party_of = [&](const json& j, const std::string& at) -> Party {
        std::string nm = need_string(j, at);
        Party p = universe.find(nm);
        if (p < 0) throw ParseError(at, "unknown party id " + nm);
        return p;
    };
    // Accepts any order, canonicalizes ascending, rejects repeats.
    auto party_set = [&](const json& j, const std::string& at) -> std::vector<Party> {
        if (!j.is_array()) throw ParseError(at, "expected an array of party ids");
        std::vector<Party> out;
        for (size_t i = 0; i < j.size(); ++i)
            out.push_back(party_of(j[i], at + "[" + std::to_string(i) + "]"));
        std::sort(out.begin(), out.end());
        if (std::adjacent_find(out.begin(), out.end()) != out.end())
            throw ParseError(at, "repeated party id");
        return out;
    };

    std::vector<Party> running_list = party_set(need(root, "running", "running"), "running");
    if (running_list.empty()) throw ParseError("running", "no party is running");
    std::vector<char> running = mask_of(m, running_list);

    Rational tau = need_rational(need(root, "tau", "tau"), "tau");
    Goal goal;
    goal.phi = need_rational(need(root, "phi", "phi"), "phi");
    goal.rho = need_rational(need(root, "rho", "rho"), "rho");
    goal.coalition = party_set(need(root, "coalition", "coalition"), "coalition");
    if (const json* jfav = root.contains("favored") ? &root["favored"] : nullptr;
        jfav && !jfav->is_null())
        goal.favored = party_of(*jfav, "favored");

    const json& jv = need(root, "voters", "voters");
    if (!jv.is_array() || jv.empty())
        throw ParseError("voters", "expected a non-empty voter array");
    std::vector<RawVoter> raw;
    for (size_t i = 0; i < jv.size(); ++i) {
        std::string at = "voters[" + std::to_string(i) + "]";
        const json& v = jv[i];
        if (!v.is_object()) throw ParseError(at, "expected a voter object");
        reject_unknown(v, {"id", "order", "cost", "registered"}, at);
        RawVoter rv;
        rv.id = need_string(need(v, "id", at + ".id"), at + ".id");
        if (rv.id.empty()) throw ParseError(at + ".id", "empty voter id");
        const json& jo = need(v, "order", at + ".order");
        if (!jo.is_array() || (int)jo.size() != m)
            throw ParseError(at + ".order", "order must rank every universe party exactly once");
        std::vector<char> seen(m, 0);
        for (size_t p = 0; p < jo.size(); ++p) {
            Party q = party_of(jo[p], at + ".order[" + std::to_string(p) + "]");
            if (seen[q])
                throw ParseError(at + ".order[" + std::to_string(p) + "]",
                                 "party ranked twice: " + universe.name(q));
            seen[q] = 1;
            rv.order.ranking.push_back(q);
        }
        if (v.contains("cost") && !v["cost"].is_null())
            rv.cost = need_rational(v["cost"], at + ".cost");
        if (v.contains("registered")) rv.registered = need_bool(v["registered"], at + ".registered");
        raw.push_back(std::move(rv));
    }

    auto no_cost = [&](size_t i, const char* why) {
        if (raw[i].cost)
            throw ParseError("voters[" + std::to_string(i) + "].cost", why);
    };
    auto must_cost = [&](size_t i, const char* why) -> Rational {
        if (!raw[i].cost)
            throw ParseError("voters[" + std::to_string(i) + "].cost", why);
        return *raw[i].cost;
    };
    auto must_registered = [&](size_t i) {
        if (!raw[i].registered)
            throw ParseError("voters[" + std::to_string(i) + "].registered",
                             "only control-av takes unregistered voters");
    };

    const json* jbudget = root.contains("budget") && !root["budget"].is_null() ? &root["budget"] : nullptr;
    const json* jk = root.contains("k") && !root["k"].is_null() ? &root["k"] : nullptr;
    const json* jsp = root.contains("spoiler_parties") ? &root["spoiler_parties"] : nullptr;
    const json* jsw = root.contains("swap_costs") ? &root["swap_costs"] : nullptr;
    const json* jss = root.contains("shift_schedule") ? &root["shift_schedule"] : nullptr;

    if (jsw && *kind != ProblemKind::BriberySwap)
        throw ParseError("swap_costs", "only bribery-swap takes swap costs");
    if (jss && *kind != ProblemKind::BriberyShift)
        throw ParseError("shift_schedule", "only bribery-shift takes a shift schedule");
    if (jk && !is_party_addition(*kind) && *kind != ProblemKind::ControlDCP &&
        *kind != ProblemKind::ControlDOP)
        throw ParseError("k", "k applies to party control only");
    if (jsp && !jsp->is_null() && !(jsp->is_array() && jsp->empty()) && !is_party_addition(*kind))
        throw ParseError("spoiler_parties", "spoiler parties apply to control-acp and control-aop");

    ParsedInstance out;
    out.problem = *kind;

    Election e;
    e.universe = universe;
    e.running = running;
    e.tau = tau;

    try {
        if (is_bribery(*kind)) {
            if (!jbudget) throw ParseError("budget", "missing key");
            BriberyInstance bi;
            for (size_t i = 0; i < raw.size(); ++i) {
                must_registered(i);
                e.voters.push_back({raw[i].id, raw[i].order});
            }
            bi.election = std::move(e);
            bi.goal = goal;
            bi.budget = need_rational(*jbudget, "budget");
            switch (*kind) {
                case ProblemKind::BriberyOne:
                    for (size_t i = 0; i < raw.size(); ++i)
                        no_cost(i, "unit pricing takes no per-voter cost");
                    bi.cost_model = CostModel::uniform();
                    break;
                case ProblemKind::BriberyDollar: {
                    std::vector<Rational> prices;
                    for (size_t i = 0; i < raw.size(); ++i)
                        prices.push_back(must_cost(i, "bribery-dollar needs a price per voter"));
                    bi.cost_model = CostModel::per_voter_costs(std::move(prices));
                    break;
                }
                case ProblemKind::BriberySwap: {
                    for (size_t i = 0; i < raw.size(); ++i)
                        no_cost(i, "swap pricing lives in swap_costs");
                    if (!jsw) throw ParseError("swap_costs", "missing key");
                    if (!jsw->is_object()) throw ParseError("swap_costs", "expected an object");
                    int n = (int)raw.size();
                    std::vector<std::vector<std::vector<Rational>>> sw(
                        n, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m)));
                    for (auto it = jsw->begin(); it != jsw->end(); ++it) {
                        std::string at = "swap_costs." + it.key();
                        int vi = -1;
                        for (int i = 0; i < n; ++i)
                            if (raw[i].id == it.key()) vi = i;
                        if (vi < 0) throw ParseError(at, "unknown voter id");
                        if (!it.value().is_object()) throw ParseError(at, "expected an object");
                        for (auto pit = it.value().begin(); pit != it.value().end(); ++pit) {
                            Party p = universe.find(pit.key());
                            if (p < 0) throw ParseError(at + "." + pit.key(), "unknown party id");
                            std::string pat = at + "." + pit.key();
                            if (!pit.value().is_object()) throw ParseError(pat, "expected an object");
                            for (auto qit = pit.value().begin(); qit != pit.value().end(); ++qit) {
                                Party q = universe.find(qit.key());
                                std::string qat = pat + "." + qit.key();
                                if (q < 0) throw ParseError(qat, "unknown party id");
                                if (q == p) throw ParseError(qat, "diagonal swap entry");
                                sw[vi][p][q] = need_rational(qit.value(), qat);
                            }
                        }
                    }
                    bi.cost_model = CostModel::swap_matrix(std::move(sw));
                    break;
                }
                default: {
                    for (size_t i = 0; i < raw.size(); ++i)
                        no_cost(i, "shift pricing lives in shift_schedule");
                    if (!jss) throw ParseError("shift_schedule", "missing key");
                    ShiftSchedule s = parse_schedule(*jss, "shift_schedule");
                    bi.cost_model = CostModel::coalition_shift(
                        std::vector<ShiftSchedule>(raw.size(), s));
                    break;
                }
            }
            bi.validate();
            out.bribery = std::move(bi);
        } else if (is_voter_control(*kind)) {
            if (!jbudget) throw ParseError("budget", "missing key");
            VoterControlInstance vc;
            vc.mode = *kind == ProblemKind::ControlAV ? ControlMode::AddVoters
                                                      : ControlMode::DeleteVoters;
            for (size_t i = 0; i < raw.size(); ++i) {
                if (vc.mode == ControlMode::AddVoters && !raw[i].registered) {
                    vc.spoilers.push_back(
                        {raw[i].id, raw[i].order,
                         must_cost(i, "unregistered voters need an addition price")});
                } else {
                    must_registered(i);
                    e.voters.push_back({raw[i].id, raw[i].order});
                    if (vc.mode == ControlMode::AddVoters) {
                        no_cost(i, "registered voters take no price under control-av");
                    } else {
                        vc.deletion_costs[raw[i].id] =
                            must_cost(i, "control-dv needs a deletion price per voter");
                    }
                }
            }
            vc.election = std::move(e);
            vc.goal = goal;
            vc.budget = need_rational(*jbudget, "budget");
            vc.validate();
            out.voter_control = std::move(vc);
        } else {
            if (jbudget) throw ParseError("budget", "party control takes no budget");
            if (!jk) throw ParseError("k", "missing key");
            PartyControlInstance pc;
            pc.variant = variant_of(*kind);
            long long k = need_int(*jk, "k");
            if (k < 0) throw ParseError("k", "k must be non-negative");
            pc.k = (int)k;
            if (is_party_addition(*kind)) {
                if (!jsp) throw ParseError("spoiler_parties", "missing key");
                pc.spoiler_parties = party_set(*jsp, "spoiler_parties");
            }
            for (size_t i = 0; i < raw.size(); ++i) {
                must_registered(i);
                no_cost(i, "party control voters take no price");
                e.voters.push_back({raw[i].id, raw[i].order});
            }
            pc.election = std::move(e);
            pc.goal = goal;
            pc.validate();
            out.party_control = std::move(pc);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw ParseError("$", ex.what());
    }
    return out;
}

namespace {

const Election& election_of(const ParsedInstance& inst) {
    if (inst.bribery) return inst.bribery->election;
    if (inst.voter_control) return inst.voter_control->election;
    return inst.party_control->election;
}

const Goal& goal_of(const ParsedInstance& inst) {
    if (inst.bribery) return inst.bribery->goal;
    if (inst.voter_control) return inst.voter_control->goal;
    return inst.party_control->goal;
}

ordered voter_entry(const PartyUniverse& u, const std::string& id, const PreferenceOrder& order,
                    const std::optional<Rational>& cost, bool registered) {
    ordered v;
    v["id"] = id;
    ordered ord = ordered::array();
    for (Party p : order.ranking) ord.push_back(u.name(p));
    v["order"] = std::move(ord);
    v["cost"] = cost ? ordered(rat(*cost)) : ordered(nullptr);
    v["registered"] = registered;
    return v;
}

}  // namespace

std::string serialize_instance(const ParsedInstance& inst) {
    const Election& e = election_of(inst);
    const Goal& goal = goal_of(inst);
    const PartyUniverse& u = e.universe;

    ordered doc;
    doc["problem"] = problem_tag(inst.problem);
    ordered uni = ordered::array();
    for (const auto& nm : u.names) uni.push_back(nm);
    doc["universe"] = std::move(uni);
    ordered run = ordered::array();
    for (Party p = 0; p < u.size(); ++p)
        if (e.is_running(p)) run.push_back(u.name(p));
    doc["running"] = std::move(run);
    if (inst.party_control) {
        ordered sp = ordered::array();
        for (Party p : inst.party_control->spoiler_parties) sp.push_back(u.name(p));
        doc["spoiler_parties"] = std::move(sp);
    }
    doc["tau"] = rat(e.tau);
    doc["phi"] = rat(goal.phi);
    doc["rho"] = rat(goal.rho);
    ordered coal = ordered::array();
    for (Party p : goal.coalition) coal.push_back(u.name(p));
    doc["coalition"] = std::move(coal);
    doc["favored"] = goal.favored ? ordered(u.name(*goal.favored)) : ordered(nullptr);
    if (inst.bribery) doc["budget"] = rat(inst.bribery->budget);
    if (inst.voter_control) doc["budget"] = rat(inst.voter_control->budget);
    if (inst.party_control) doc["k"] = inst.party_control->k;

    ordered voters = ordered::array();
    if (inst.bribery) {
        const auto& model = inst.bribery->cost_model;
        for (int i = 0; i < (int)e.voters.size(); ++i) {
            std::optional<Rational> cost;
            if (model.kind == CostModel::Kind::PerVoter) cost = model.per_voter[i];
            voters.push_back(voter_entry(u, e.voters[i].id, e.voters[i].order, cost, true));
        }
    } else if (inst.voter_control) {
        const auto& vc = *inst.voter_control;
        for (const auto& v : e.voters) {
            std::optional<Rational> cost;
            if (vc.mode == ControlMode::DeleteVoters) cost = vc.deletion_costs.at(v.id);
            voters.push_back(voter_entry(u, v.id, v.order, cost, true));
        }
        for (const auto& s : vc.spoilers)
            voters.push_back(voter_entry(u, s.id, s.order, s.cost, false));
    } else {
        for (const auto& v : e.voters)
            voters.push_back(voter_entry(u, v.id, v.order, std::nullopt, true));
    }
    doc["voters"] = std::move(voters);

    if (inst.problem == ProblemKind::BriberySwap) {
        const auto& sw = inst.bribery->cost_model.swap;
        ordered all = ordered::object();
        for (int i = 0; i < (int)sw.size(); ++i) {
            ordered tab = ordered::object();
            for (Party p = 0; p < u.size(); ++p) {
                ordered row = ordered::object();
                for (Party q = 0; q < u.size(); ++q)
                    if (q != p && !sw[i][p][q].is_zero()) row[u.name(q)] = rat(sw[i][p][q]);
                if (!row.empty()) tab[u.name(p)] = std::move(row);
            }
            if (!tab.empty()) all[e.voters[i].id] = std::move(tab);
        }
        doc["swap_costs"] = std::move(all);
    }
    if (inst.problem == ProblemKind::BriberyShift) {
        const auto& shift = inst.bribery->cost_model.shift;
        for (const auto& s : shift)
            if (s.slope != shift[0].slope || s.table != shift[0].table)
                throw std::invalid_argument(
                    "document format shares one shift schedule across voters");
        if (shift[0].is_linear()) {
            ordered s;
            s["slope"] = rat(*shift[0].slope);
            doc["shift_schedule"] = std::move(s);
        } else {
            ordered t = ordered::array();
            for (const auto& c : shift[0].table)
                t.push_back(c.is_integer() ? ordered(c.num()) : ordered(rat(c)));
            doc["shift_schedule"] = std::move(t);
        }
    }
    return doc.dump(2) + "\n";
}

namespace {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(unsigned long long seed) : g(seed) {}
    // Modulo draw: deterministic across platforms, bias irrelevant here.
    long long below(long long bound) {
        return bound <= 1 ? 0 : (long long)(g() % (unsigned long long)bound);
    }
    long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }
    bool coin() { return (g() & 1ull) != 0; }
};

PreferenceOrder random_order(Rng& rng, int m) {
    std::vector<Party> r(m);
    std::iota(r.begin(), r.end(), 0);
    for (int i = m - 1; i > 0; --i) std::swap(r[i], r[(int)rng.below(i + 1)]);
    return {std::move(r)};
}

Rational pick(Rng& rng, const std::vector<Rational>& pool) {
    return pool[(size_t)rng.below((long long)pool.size())];
}

}  // namespace

ParsedInstance generate_random(const GenOptions& opt) {
    if (opt.voters <= 0) throw std::invalid_argument("generator needs at least one voter");
    if (opt.parties <= 0) throw std::invalid_argument("generator needs at least one party");
    if (opt.max_cost < opt.min_cost) throw std::invalid_argument("empty cost range");
    if (opt.max_budget < 0) throw std::invalid_argument("negative budget bound");

    std::vector<Rational> taus = opt.taus.empty()
                                     ? std::vector<Rational>{Rational(0), Rational(1, 4), Rational(2, 5)}
                                     : opt.taus;
    std::vector<Rational> phis =
        opt.phis.empty() ? std::vector<Rational>{Rational(1, 2), Rational(1, 4)} : opt.phis;
    std::vector<Rational> rhos =
        opt.rhos.empty() ? std::vector<Rational>{Rational(0), Rational(1, 2)} : opt.rhos;

    Rng rng(opt.seed);
    int n = opt.voters;
    int m = opt.parties;
    std::vector<std::string> names;
    for (int p = 0; p < m; ++p) names.push_back("p" + std::to_string(p + 1));

    Election e;
    e.universe = PartyUniverse::of(names);
    e.running = std::vector<char>(m, 1);
    e.tau = pick(rng, taus);
    if (opt.problem == ProblemKind::BriberySwap || opt.problem == ProblemKind::BriberyShift)
        e.tau = Rational(0);
    for (int i = 0; i < n; ++i)
        e.voters.push_back({"v" + std::to_string(i + 1), random_order(rng, m)});

    Goal goal;
    goal.phi = pick(rng, phis);
    goal.rho = pick(rng, rhos);
    goal.favored = 0;

    auto cost = [&]() { return Rational(rng.range(opt.min_cost, opt.max_cost)); };
    auto budget = [&]() { return Rational(rng.range(0, opt.max_budget)); };
    // Party 1 plus a random draw from the rest, `want` extra members.
    auto coalition_with = [&](const std::vector<Party>& others, long long want) {
        std::vector<Party> shuffled = others;
        for (int i = (int)shuffled.size() - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[(int)rng.below(i + 1)]);
        std::vector<Party> c{0};
        c.insert(c.end(), shuffled.begin(), shuffled.begin() + want);
        std::sort(c.begin(), c.end());
        return c;
    };

    ParsedInstance out;
    out.problem = opt.problem;

    if (is_bribery(opt.problem) || is_voter_control(opt.problem)) {
        std::vector<Party> rest;
        for (Party p = 1; p < m; ++p) rest.push_back(p);
        long long extra = m >= 2 ? rng.below(m - 1) : 0;  // keeps one opposition party when possible
        goal.coalition = coalition_with(rest, extra);
    }

    switch (opt.problem) {
        case ProblemKind::BriberyOne:
        case ProblemKind::BriberyDollar:
        case ProblemKind::BriberySwap:
        case ProblemKind::BriberyShift: {
            BriberyInstance bi;
            bi.goal = goal;
            bi.budget = budget();
            if (opt.problem == ProblemKind::BriberyOne) {
                bi.cost_model = CostModel::uniform();
            } else if (opt.problem == ProblemKind::BriberyDollar) {
                std::vector<Rational> prices;
                for (int i = 0; i < n; ++i) prices.push_back(cost());
                bi.cost_model = CostModel::per_voter_costs(std::move(prices));
            } else if (opt.problem == ProblemKind::BriberySwap) {
                std::vector<std::vector<std::vector<Rational>>> sw(
                    n, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m)));
                for (int i = 0; i < n; ++i)
                    for (Party p = 0; p < m; ++p)
                        for (Party q = 0; q < m; ++q)
                            if (p != q) sw[i][p][q] = cost();
                bi.cost_model = CostModel::swap_matrix(std::move(sw));
            } else {
                ShiftSchedule s;
                if (rng.coin()) {
                    s.slope = Rational(rng.range(0, opt.max_cost));
                } else {
                    s.table.push_back(Rational(0));
                    for (int i = 1; i < m; ++i)
                        s.table.push_back(s.table.back() + Rational(rng.range(0, opt.max_cost)));
                }
                bi.cost_model = CostModel::coalition_shift(std::vector<ShiftSchedule>(n, s));
            }
            bi.election = std::move(e);
            bi.validate();
            out.bribery = std::move(bi);
            break;
        }
        case ProblemKind::ControlAV:
        case ProblemKind::ControlDV: {
            VoterControlInstance vc;
            vc.goal = goal;
            vc.budget = budget();
            if (opt.problem == ProblemKind::ControlAV) {
                vc.mode = ControlMode::AddVoters;
                int w = opt.spoilers >= 0 ? opt.spoilers : n;
                for (int i = 0; i < w; ++i)
                    vc.spoilers.push_back({"w" + std::to_string(i + 1), random_order(rng, m), cost()});
            } else {
                vc.mode = ControlMode::DeleteVoters;
                for (const auto& v : e.voters) vc.deletion_costs[v.id] = cost();
            }
            vc.election = std::move(e);
            vc.validate();
            out.voter_control = std::move(vc);
            break;
        }
        default: {
            PartyControlInstance pc;
            pc.variant = variant_of(opt.problem);
            std::vector<Party> others;
            for (Party p = 1; p < m; ++p) others.push_back(p);
            for (int i = (int)others.size() - 1; i > 0; --i)
                std::swap(others[i], others[(int)rng.below(i + 1)]);
            if (is_party_addition(opt.problem)) {
                int sp = opt.spoilers >= 0 ? std::min(opt.spoilers, m - 1)
                                           : (m >= 2 ? 1 + (int)rng.below(std::min(m - 1, 3)) : 0);
                pc.spoiler_parties.assign(others.begin(), others.begin() + sp);
                std::sort(pc.spoiler_parties.begin(), pc.spoiler_parties.end());
                for (Party p : pc.spoiler_parties) e.running[p] = 0;
                goal.coalition = {0};
                if (opt.problem == ProblemKind::ControlACP) {
                    goal.coalition.insert(goal.coalition.end(), pc.spoiler_parties.begin(),
                                          pc.spoiler_parties.end());
                }
                for (int i = sp; i < (int)others.size(); ++i)
                    if (rng.coin()) goal.coalition.push_back(others[i]);
                std::sort(goal.coalition.begin(), goal.coalition.end());
                pc.k = opt.k >= 0 ? std::min(opt.k, sp) : (int)rng.below(sp + 1);
            } else {
                goal.coalition = {0};
                for (Party p : others)
                    if (rng.coin()) goal.coalition.push_back(p);
                std::sort(goal.coalition.begin(), goal.coalition.end());
                long long pool = pc.variant == PartyControlVariant::DeleteCoalition
                                     ? (long long)goal.coalition.size()
                                     : m - (long long)goal.coalition.size();
                pc.k = opt.k >= 0 ? (int)std::min<long long>(opt.k, pool) : (int)rng.below(pool + 1);
            }
            pc.goal = goal;
            pc.election = std::move(e);
            pc.validate();
            out.party_control = std::move(pc);
            break;
        }
    }
    return out;
}

SolveResult solve_instance(const ParsedInstance& inst) {
    SolveResult out;
    out.after = election_of(inst);
    const Goal& goal = goal_of(inst);
    if (inst.bribery) {
        const BriberyInstance& bi = *inst.bribery;
        BriberyDecision d;
        if (inst.problem == ProblemKind::BriberyOne || inst.problem == ProblemKind::BriberyDollar)
            d = solve_dollar(bi);
        else if (bi.election.tau.is_zero())
            d = solve_swapshift_no_threshold(bi);
        else
            d = brute_force_bribery(bi);
        out.feasible = d.feasible;
        out.cost = d.cost;
        out.bribe = d.witness;
        if (d.feasible) out.after = apply_bribe(bi.election, *d.witness);
    } else if (inst.voter_control) {
        const VoterControlInstance& vc = *inst.voter_control;
        ControlDecision d = vc.mode == ControlMode::AddVoters ? solve_add_voters(vc)
                                                              : solve_delete_voters(vc);
        out.feasible = d.feasible;
        out.cost = d.cost;
        out.voter_ids = d.witness;
        if (d.feasible) out.after = apply_voter_control(vc, *d.witness);
    } else {
        PartyControlDecision d = solve_party_control(*inst.party_control);
        out.feasible = d.feasible;
        out.parties = d.witness;
        if (d.feasible) out.after = apply_party_control(*inst.party_control, *d.witness);
    }
    if (out.feasible) out.checked = check_objectives(tally(out.after), goal).both();
    return out;
}

SolveResult oracle_instance(const ParsedInstance& inst, int guard) {
    SolveResult out;
    out.after = election_of(inst);
    const Goal& goal = goal_of(inst);
    if (inst.bribery) {
        BriberyDecision d = brute_force_bribery(*inst.bribery, guard);
        out.feasible = d.feasible;
        out.cost = d.cost;
        out.bribe = d.witness;
        if (d.feasible) out.after = apply_bribe(inst.bribery->election, *d.witness);
    } else if (inst.voter_control) {
        ControlDecision d = brute_force_voter_control(*inst.voter_control, guard);
        out.feasible = d.feasible;
        out.cost = d.cost;
        out.voter_ids = d.witness;
        if (d.feasible) out.after = apply_voter_control(*inst.voter_control, *d.witness);
    } else {
        // Subset enumeration is already the reference for party control.
        PartyControlDecision d = solve_party_control(*inst.party_control);
        out.feasible = d.feasible;
        out.parties = d.witness;
        if (d.feasible) out.after = apply_party_control(*inst.party_control, *d.witness);
    }
    if (out.feasible) out.checked = check_objectives(tally(out.after), goal).both();
    return out;
}

std::string serialize_result(const ParsedInstance& inst, const SolveResult& result) {
    const PartyUniverse& u = election_of(inst).universe;
    ordered doc;
    doc["feasible"] = result.feasible;
    doc["cost"] = result.cost ? ordered(rat(*result.cost)) : ordered(nullptr);
    if (!result.feasible) {
        doc["witness"] = nullptr;
    } else if (result.bribe) {
        ordered w = ordered::object();
        for (const auto& [id, order] : result.bribe->changes) {
            ordered ord = ordered::array();
            for (Party p : order.ranking) ord.push_back(u.name(p));
            w[id] = std::move(ord);
        }
        doc["witness"] = std::move(w);
    } else if (result.voter_ids) {
        doc["witness"] = *result.voter_ids;
    } else {
        ordered w = ordered::array();
        for (Party p : *result.parties) w.push_back(u.name(p));
        doc["witness"] = std::move(w);
    }
    Tally t = tally(result.after);
    ordered ta;
    ta["total"] = t.total_voters;
    ta["threshold"] = t.threshold;
    ta["active_votes"] = t.active_votes;
    ordered parties = ordered::object();
    for (Party p = 0; p < u.size(); ++p) {
        ordered row;
        row["votes"] = t.votes[p];
        row["active"] = t.active[p] != 0;
        row["fraction"] = rat(t.fraction(p));
        parties[u.name(p)] = std::move(row);
    }
    ta["parties"] = std::move(parties);
    doc["tally_after"] = std::move(ta);
    doc["checked"] = result.checked;
    return doc.dump(2) + "\n";
}

long long round_percent(const Rational& r) {
    if (r.is_negative()) throw std::invalid_argument("round_percent takes non-negative values");
    __int128 num = (__int128)200 * r.num() + r.den();
    __int128 den = (__int128)2 * r.den();
    return (long long)(num / den);
}

}  // namespace ct
