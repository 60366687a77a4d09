#include "ct/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ct {

namespace {

int resolve_guard(int guard, int fallback) {
    if (guard >= 0) return guard;
    if (const char* env = std::getenv("COALITION_TACTICS_GUARD")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 0) return (int)v;
    }
    return fallback;
}

// Full ranking: the given parties first, every other party after them in
// universe order.
PreferenceOrder with_prefix(int m, std::vector<Party> prefix) {
    std::vector<char> used(m, 0);
    for (Party p : prefix) used[p] = 1;
    PreferenceOrder o;
    o.ranking = std::move(prefix);
    for (Party p = 0; p < m; ++p)
        if (!used[p]) o.ranking.push_back(p);
    return o;
}

long long pairs_of(long long k) { return k * (k - 1) / 2; }

std::vector<Party> seq(Party from, int count) {
    std::vector<Party> v(count);
    std::iota(v.begin(), v.end(), from);
    return v;
}

void require_edges(const Graph& g) {
    g.validate();
    if (g.num_edges() == 0)
        throw std::invalid_argument("clique reductions need at least one edge");
}

void require_vertices(const Graph& g) {
    g.validate();
    if (g.num_vertices() == 0)
        throw std::invalid_argument("dominating set reductions need at least one vertex");
}

void require_size(int k) {
    if (k < 0) throw std::invalid_argument("target set size must be non-negative");
}

// Universe indices of the closed neighborhood of vertex i, the graph's
// vertex parties starting at universe index `base`.
std::vector<Party> neighborhood_block(const Graph& g, int i, Party base) {
    std::vector<Party> block;
    for (int j = 0; j < g.num_vertices(); ++j)
        if (j == i || g.adjacent(i, j)) block.push_back(base + j);
    return block;
}

std::vector<std::string> vertex_party_names(const Graph& g, std::vector<std::string> core) {
    for (const auto& v : g.vertices) core.push_back("v_" + v);
    return core;
}

}  // namespace

Graph Graph::from_edge_list(const std::string& text) {
    Graph g;
    std::unordered_map<std::string, int> seen;
    auto vertex = [&](const std::string& name) {
        auto it = seen.find(name);
        if (it != seen.end()) return it->second;
        int id = (int)g.vertices.size();
        g.vertices.push_back(name);
        seen.emplace(name, id);
        return id;
    };
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::vector<std::string> tok;
        std::string w;
        while (words >> w) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok.size() == 1) {
            vertex(tok[0]);
        } else if (tok.size() == 2) {
            int a = vertex(tok[0]);
            int b = vertex(tok[1]);
            if (a == b)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": self-loop at " +
                                            tok[0]);
            g.edges.emplace_back(std::min(a, b), std::max(a, b));
        } else {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected one vertex or two endpoints");
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    g.validate();
    return g;
}

std::string Graph::to_edge_list() const {
    std::string out;
    for (const auto& v : vertices) {
        out += v;
        out += '\n';
    }
    for (auto [a, b] : edges) {
        out += vertices[a];
        out += ' ';
        out += vertices[b];
        out += '\n';
    }
    return out;
}

bool Graph::adjacent(int a, int b) const {
    if (a == b) return false;
    std::pair<int, int> e{std::min(a, b), std::max(a, b)};
    return std::binary_search(edges.begin(), edges.end(), e);
}

void Graph::validate() const {
    std::unordered_set<std::string> names;
    for (const auto& v : vertices) {
        if (v.empty()) throw std::invalid_argument("empty vertex name");
        if (!names.insert(v).second) throw std::invalid_argument("duplicate vertex " + v);
    }
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [a, b] = edges[i];
        if (a < 0 || b >= (int)vertices.size() || a >= b)
            throw std::invalid_argument("edge endpoints out of range or not ordered");
        if (i > 0 && !(edges[i - 1] < edges[i]))
            throw std::invalid_argument("edges not sorted and unique");
    }
}

void ExactCoverInstance::validate() const {
    if (elements.empty()) throw std::invalid_argument("cover instance needs elements");
    std::unordered_set<std::string> names;
    for (const auto& z : elements) {
        if (z.empty()) throw std::invalid_argument("empty element name");
        if (!names.insert(z).second) throw std::invalid_argument("duplicate element " + z);
    }
    std::vector<int> hits(elements.size(), 0);
    for (const auto& s : subsets) {
        for (int j = 0; j < 4; ++j) {
            if (s[j] < 0 || s[j] >= (int)elements.size())
                throw std::invalid_argument("subset member out of range");
            if (j > 0 && s[j - 1] >= s[j])
                throw std::invalid_argument("subset members not strictly ascending");
            ++hits[s[j]];
        }
    }
    for (size_t i = 0; i < hits.size(); ++i)
        if (hits[i] != 3)
            throw std::invalid_argument("element " + elements[i] +
                                        " must sit in exactly 3 subsets, sits in " +
                                        std::to_string(hits[i]));
}

BriberyInstance exact_cover_to_shift(const ExactCoverInstance& cover) {
    cover.validate();
    int nz = (int)cover.elements.size();
    int nd = (int)cover.subsets.size();
    int nf = 3 * nz;
    int m = nd + 1 + nf;
    Party anchor = nd;

    std::vector<std::string> names;
    names.reserve(m);
    for (int j = 0; j < nd; ++j) names.push_back("d" + std::to_string(j + 1));
    names.push_back("anchor");
    for (int j = 0; j < nf; ++j) names.push_back("f" + std::to_string(j + 1));

    std::vector<std::vector<Party>> covering(nz);
    for (int j = 0; j < nd; ++j)
        for (int x : cover.subsets[j]) covering[x].push_back(j);

    std::vector<Party> fillers = seq(nd + 1, nf);

    Election e;
    e.universe = PartyUniverse::of(std::move(names));
    e.running = std::vector<char>(m, 1);
    e.tau = Rational(2, nz);
    // Covering subset parties sit right under the anchor, so lifting one
    // costs its rank there; everything below the filler wall costs more
    // than the whole budget.
    for (int i = 0; i < nz; ++i) {
        std::vector<Party> pre{anchor};
        pre.insert(pre.end(), covering[i].begin(), covering[i].end());
        pre.insert(pre.end(), fillers.begin(), fillers.end());
        e.voters.push_back({"t1_" + cover.elements[i], with_prefix(m, std::move(pre))});
    }
    for (int i = 0; i < nz; ++i) {
        std::vector<Party> pre{anchor};
        pre.insert(pre.end(), fillers.begin(), fillers.end());
        e.voters.push_back({"t2_" + cover.elements[i], with_prefix(m, std::move(pre))});
    }

    BriberyInstance inst;
    inst.election = std::move(e);
    inst.goal.coalition = seq(0, nd);
    inst.goal.favored = 0;
    inst.goal.phi = Rational(1, 2);
    inst.goal.rho = Rational(0);
    inst.cost_model =
        CostModel::coalition_shift(std::vector<ShiftSchedule>(2 * nz, ShiftSchedule{Rational(1), {}}));
    inst.budget = Rational(3 * nz);
    inst.validate();
    return inst;
}

PartyControlInstance clique_to_dcp_jf(const Graph& g, int k) {
    require_edges(g);
    require_size(k);
    int nv = g.num_vertices();
    long long ne = g.num_edges();
    int m = 2 + nv;

    Election e;
    e.universe = PartyUniverse::of(vertex_party_names(g, {"p1", "o1"}));
    e.running = std::vector<char>(m, 1);
    e.tau = Rational(0);
    for (int i = 0; i < (int)g.edges.size(); ++i) {
        auto [x, y] = g.edges[i];
        std::string tag = "e" + std::to_string(i + 1);
        e.voters.push_back({tag + "a", with_prefix(m, {2 + x, 2 + y, 0, 1})});
        e.voters.push_back({tag + "b", with_prefix(m, {0, 1})});
        e.voters.push_back({tag + "c", with_prefix(m, {1})});
        e.voters.push_back({tag + "d", with_prefix(m, {1})});
    }

    PartyControlInstance inst;
    inst.election = std::move(e);
    inst.variant = PartyControlVariant::DeleteCoalition;
    inst.k = std::min(k, 1 + nv);
    std::vector<Party> vertex_parties = seq(2, nv);
    inst.goal.coalition = seq(0, 1);
    inst.goal.coalition.insert(inst.goal.coalition.end(), vertex_parties.begin(),
                               vertex_parties.end());
    inst.goal.favored = 0;
    inst.goal.phi = Rational(1, 2);
    // Deleting a clique hands the favored party one extra vote per inside
    // edge, meeting this ratio with equality.
    inst.goal.rho = Rational(ne + pairs_of(k), 2 * ne);
    inst.validate();
    return inst;
}

PartyControlInstance clique_to_dcp_j_threshold(const Graph& g, int k) {
    require_edges(g);
    require_size(k);
    int nv = g.num_vertices();
    long long ne = g.num_edges();
    long long kk = pairs_of(k);
    int m = 2 + nv;

    Election e;
    e.universe = PartyUniverse::of(vertex_party_names(g, {"p1", "o1"}));
    e.running = std::vector<char>(m, 1);
    // n = 3|E| + C(k,2) voters, so the cutoff lands exactly on
    // |E| + C(k,2) votes: reachable by the favored party only through the
    // inside edges of a deleted clique.
    e.tau = Rational(ne + kk, 3 * ne + kk);
    for (int i = 0; i < (int)g.edges.size(); ++i) {
        auto [x, y] = g.edges[i];
        std::string tag = "e" + std::to_string(i + 1);
        e.voters.push_back({tag + "a", with_prefix(m, {2 + x, 2 + y, 0, 1})});
        e.voters.push_back({tag + "b", with_prefix(m, {0, 1})});
        e.voters.push_back({tag + "c", with_prefix(m, {1})});
    }
    for (long long i = 0; i < kk; ++i)
        e.voters.push_back({"t" + std::to_string(i + 1), with_prefix(m, {1})});

    PartyControlInstance inst;
    inst.election = std::move(e);
    inst.variant = PartyControlVariant::DeleteCoalition;
    inst.k = std::min(k, 1 + nv);
    std::vector<Party> vertex_parties = seq(2, nv);
    inst.goal.coalition = seq(0, 1);
    inst.goal.coalition.insert(inst.goal.coalition.end(), vertex_parties.begin(),
                               vertex_parties.end());
    inst.goal.phi = Rational(1, 2);
    inst.goal.rho = Rational(0);
    inst.validate();
    return inst;
}

PartyControlInstance clique_to_dop(const Graph& g, int k) {
    require_edges(g);
    require_size(k);
    int nv = g.num_vertices();
    long long ne = g.num_edges();
    int m = 1 + nv;

    Election e;
    e.universe = PartyUniverse::of(vertex_party_names(g, {"p1"}));
    e.running = std::vector<char>(m, 1);
    e.tau = Rational(0);
    for (int i = 0; i < (int)g.edges.size(); ++i) {
        auto [x, y] = g.edges[i];
        e.voters.push_back({"e" + std::to_string(i + 1), with_prefix(m, {1 + x, 1 + y, 0})});
    }

    PartyControlInstance inst;
    inst.election = std::move(e);
    inst.variant = PartyControlVariant::DeleteOpposition;
    inst.k = std::min(k, nv);
    inst.goal.coalition = seq(0, 1);
    // One coalition vote per edge inside the deleted set; C(k,2) of |E|
    // needs a clique. Over 1 means no clique of that size can exist.
    inst.goal.phi = Rational(pairs_of(k), ne);
    inst.goal.rho = Rational(0);
    inst.validate();
    return inst;
}

PartyControlInstance domset_to_acp(const Graph& g, int k) {
    require_vertices(g);
    require_size(k);
    int nv = g.num_vertices();
    int m = 2 + nv;

    Election e;
    e.universe = PartyUniverse::of(vertex_party_names(g, {"p1", "o2"}));
    e.running = std::vector<char>(m, 0);
    e.running[0] = e.running[1] = 1;
    e.tau = Rational(0);
    for (int i = 0; i < nv; ++i) {
        std::string tag = "w" + std::to_string(i + 1);
        std::vector<Party> pre = neighborhood_block(g, i, 2);
        pre.push_back(1);
        pre.push_back(0);
        e.voters.push_back({tag + "a", with_prefix(m, std::move(pre))});
        e.voters.push_back({tag + "b", with_prefix(m, {1, 0})});
    }

    PartyControlInstance inst;
    inst.election = std::move(e);
    inst.variant = PartyControlVariant::AddCoalition;
    inst.spoiler_parties = seq(2, nv);
    inst.k = std::min(k, nv);
    std::vector<Party> vertex_parties = seq(2, nv);
    inst.goal.coalition = seq(0, 1);
    inst.goal.coalition.insert(inst.goal.coalition.end(), vertex_parties.begin(),
                               vertex_parties.end());
    inst.goal.phi = Rational(1, 2);
    inst.goal.rho = Rational(0);
    inst.validate();
    return inst;
}

PartyControlInstance domset_to_aop_threshold(const Graph& g, int k) {
    require_vertices(g);
    require_size(k);
    int nv = g.num_vertices();
    int m = 3 + nv;

    Election e;
    e.universe = PartyUniverse::of(vertex_party_names(g, {"p1", "o2", "o3"}));
    e.running = std::vector<char>(m, 0);
    e.running[0] = e.running[1] = e.running[2] = 1;
    e.tau = Rational(2, 5);
    // Added spoilers soak up neighborhood voters but stay under the
    // threshold themselves, thinning the active opposition.
    for (int i = 0; i < nv; ++i) {
        std::string tag = "w" + std::to_string(i + 1);
        e.voters.push_back({tag + "a1", with_prefix(m, {0, 1})});
        e.voters.push_back({tag + "a2", with_prefix(m, {0, 1})});
        e.voters.push_back({tag + "b1", with_prefix(m, {1, 0})});
        e.voters.push_back({tag + "b2", with_prefix(m, {1, 0})});
        std::vector<Party> pre = neighborhood_block(g, i, 3);
        pre.push_back(1);
        pre.push_back(0);
        e.voters.push_back({tag + "c", with_prefix(m, std::move(pre))});
    }

    PartyControlInstance inst;
    inst.election = std::move(e);
    inst.variant = PartyControlVariant::AddOpposition;
    inst.spoiler_parties = seq(3, nv);
    inst.k = std::min(k, nv);
    inst.goal.coalition = seq(0, 1);
    inst.goal.phi = Rational(1, 2);
    inst.goal.rho = Rational(0);
    inst.validate();
    return inst;
}

PartyControlInstance domset_to_aop_jf(const Graph& g, int k) {
    require_vertices(g);
    require_size(k);
    int nv = g.num_vertices();
    int m = 2 + nv;

    Election e;
    e.universe = PartyUniverse::of(vertex_party_names(g, {"p1", "c2"}));
    e.running = std::vector<char>(m, 0);
    e.running[0] = e.running[1] = 1;
    e.tau = Rational(0);
    // The junior partner holds three quarters of the coalition vote;
    // spoilers covering every vertex drain it down to parity.
    for (int i = 0; i < nv; ++i) {
        std::string tag = "w" + std::to_string(i + 1);
        e.voters.push_back({tag + "a", with_prefix(m, {0, 1})});
        e.voters.push_back({tag + "b", with_prefix(m, {1, 0})});
        std::vector<Party> pre = neighborhood_block(g, i, 2);
        pre.push_back(1);
        pre.push_back(0);
        e.voters.push_back({tag + "c1", with_prefix(m, pre)});
        e.voters.push_back({tag + "c2", with_prefix(m, std::move(pre))});
    }

    PartyControlInstance inst;
    inst.election = std::move(e);
    inst.variant = PartyControlVariant::AddOpposition;
    inst.spoiler_parties = seq(2, nv);
    inst.k = std::min(k, nv);
    inst.goal.coalition = seq(0, 2);
    inst.goal.favored = 0;
    inst.goal.phi = Rational(1, 2);
    inst.goal.rho = Rational(1, 2);
    inst.validate();
    return inst;
}

bool brute_force_clique(const Graph& g, int k, int guard) {
    g.validate();
    require_size(k);
    int limit = resolve_guard(guard, 12);
    int nv = g.num_vertices();
    if (nv > limit) throw std::invalid_argument("instance exceeds the oracle guard");
    if (k == 0) return true;
    if (k > nv) return false;
    std::vector<int> pick;
    std::function<bool(int)> grow = [&](int from) {
        if ((int)pick.size() == k) return true;
        for (int v = from; v < nv; ++v) {
            bool joined = true;
            for (int u : pick)
                if (!g.adjacent(u, v)) {
                    joined = false;
                    break;
                }
            if (!joined) continue;
            pick.push_back(v);
            if (grow(v + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return grow(0);
}

bool brute_force_domset(const Graph& g, int k, int guard) {
    g.validate();
    require_size(k);
    int limit = resolve_guard(guard, 12);
    int nv = g.num_vertices();
    if (nv > limit) throw std::invalid_argument("instance exceeds the oracle guard");
    if (nv == 0) return true;
    for (unsigned long long mask = 0; mask < (1ull << nv); ++mask) {
        if (std::popcount(mask) > k) continue;
        std::vector<char> covered(nv, 0);
        for (int v = 0; v < nv; ++v)
            if (mask >> v & 1ull) {
                covered[v] = 1;
                for (int u = 0; u < nv; ++u)
                    if (g.adjacent(u, v)) covered[u] = 1;
            }
        if (std::find(covered.begin(), covered.end(), 0) == covered.end()) return true;
    }
    return false;
}

bool brute_force_exact_cover(const ExactCoverInstance& cover, int guard) {
    cover.validate();
    int limit = resolve_guard(guard, 12);
    int nd = (int)cover.subsets.size();
    if (nd > limit) throw std::invalid_argument("instance exceeds the oracle guard");
    int nz = (int)cover.elements.size();
    for (unsigned long long mask = 0; mask < (1ull << nd); ++mask) {
        std::vector<int> hits(nz, 0);
        bool clash = false;
        for (int j = 0; j < nd && !clash; ++j)
            if (mask >> j & 1ull)
                for (int x : cover.subsets[j])
                    if (++hits[x] > 1) {
                        clash = true;
                        break;
                    }
        if (clash) continue;
        if (std::find(hits.begin(), hits.end(), 0) == hits.end()) return true;
    }
    return false;
}

}  // namespace ct
