#pragma once

// Inexact modularity maximization: CNM greedy merging, Louvain local moves
// with aggregation, Leiden (Louvain plus a refinement phase that keeps
// communities connected), and Combo (best subset shift between community
// pairs found by Kernighan-Lin style passes).
//
// All gain comparisons use the integer-scaled modularity entries of
// PairWeights, so ties are exact and runs are reproducible given the seed.
// The resolution parameter enters every gain through the same scaled entries,
// which makes Leiden with a non-default gamma the LN-style variant.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "modmax/graph.hpp"
#include "modmax/modularity.hpp"
#include "modmax/partition.hpp"
#include "modmax/random.hpp"

namespace modmax {

struct HeuristicConfig {
    unsigned long long seed = 0;
    ModularityParams gamma{};
    int max_passes = 100;
    double theta = 0.01;  // leiden refinement randomness
    std::optional<int> combo_max_communities{};
    std::optional<Partition> init{};
    std::vector<Ratio>* q_trace = nullptr;  // modularity after each pass/move

    void validate() const {
        gamma.validate();
        if (max_passes < 1) throw std::invalid_argument("max_passes must be >= 1");
        if (!(theta > 0)) throw std::invalid_argument("theta must be > 0");
    }
};

namespace detail {

// Community-aggregated multigraph. Node u stands for a set of original
// nodes; loops[u] counts original edges inside the set, strength[u] sums
// original degrees, adjacency multiplicities count original cross edges.
struct LevelGraph {
    long long two_m_q = 0;  // 2*m*gamma_den
    long long p = 0;        // gamma_num
    long long scale = 0;    // 4*m^2*gamma_den
    std::vector<std::vector<std::pair<int, long long>>> adj;
    std::vector<long long> loops;
    std::vector<long long> strength;

    int size() const noexcept { return static_cast<int>(strength.size()); }
};

inline LevelGraph make_level0(const Graph& g, const ModularityParams& params) {
    params.validate();
    if (g.edge_count() < 1) throw std::invalid_argument("heuristics need at least one edge");
    check_scale_fits(g, params);
    LevelGraph lg;
    const long long m = g.edge_count();
    lg.two_m_q = 2 * m * params.gamma_den;
    lg.p = params.gamma_num;
    lg.scale = 4 * m * m * params.gamma_den;
    lg.adj.resize(g.node_count());
    lg.loops.assign(g.node_count(), 0);
    lg.strength.assign(g.node_count(), 0);
    for (int v = 0; v < g.node_count(); ++v) {
        lg.strength[v] = g.degree(v);
        lg.adj[v].reserve(g.neighbors(v).size());
        for (int w : g.neighbors(v)) lg.adj[v].emplace_back(w, 1);
    }
    return lg;
}

// Scaled modularity of a community labeling of a level graph.
inline long long level_q_scaled(const LevelGraph& lg, const std::vector<int>& comm) {
    int top = 0;
    for (int c : comm) top = std::max(top, c);
    std::vector<long long> intra2(top + 1, 0), str(top + 1, 0);  // intra2: twice the intra edges
    for (int u = 0; u < lg.size(); ++u) {
        intra2[comm[u]] += 2 * lg.loops[u];
        str[comm[u]] += lg.strength[u];
        for (auto [v, mult] : lg.adj[u])
            if (comm[v] == comm[u]) intra2[comm[u]] += mult;
    }
    long long total = 0;
    for (int c = 0; c <= top; ++c) total += lg.two_m_q * intra2[c] - lg.p * str[c] * str[c];
    return total;
}

// Accumulates one node's edge mass per neighboring community, sorted by
// community id so ties resolve to the smallest label.
inline void gather_neighbor_communities(const LevelGraph& lg, const std::vector<int>& comm, int u,
                                        std::vector<std::pair<int, long long>>& out) {
    out.clear();
    for (auto [v, mult] : lg.adj[u]) out.emplace_back(comm[v], mult);
    std::sort(out.begin(), out.end());
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size(); ++r) {
        if (w > 0 && out[w - 1].first == out[r].first)
            out[w - 1].second += out[r].second;
        else
            out[w++] = out[r];
    }
    out.resize(w);
}

// One local-move sweep in seeded random order; strictly positive gains only,
// ties to the smallest community id. Returns the number of moves.
inline int local_move_sweep(const LevelGraph& lg, std::vector<int>& comm,
                            std::vector<long long>& comm_strength, Rng& rng) {
    std::vector<int> order(lg.size());
    for (int i = 0; i < lg.size(); ++i) order[i] = i;
    shuffle(rng, order);

    std::vector<std::pair<int, long long>> cand;
    int moves = 0;
    for (int u : order) {
        const int a = comm[u];
        const long long su = lg.strength[u];
        gather_neighbor_communities(lg, comm, u, cand);
        long long k_stay = 0;
        for (auto& [c, k] : cand)
            if (c == a) k_stay = k;
        const long long stay = 2 * (lg.two_m_q * k_stay - lg.p * su * (comm_strength[a] - su));
        long long best_gain = 0;
        int best_comm = a;
        for (auto& [b, kb] : cand) {
            if (b == a) continue;
            const long long enter = 2 * (lg.two_m_q * kb - lg.p * su * comm_strength[b]);
            if (enter - stay > best_gain) {
                best_gain = enter - stay;
                best_comm = b;
            }
        }
        if (best_comm != a) {
            comm_strength[a] -= su;
            comm_strength[best_comm] += su;
            comm[u] = best_comm;
            ++moves;
        }
    }
    return moves;
}

inline bool local_moves_to_convergence(const LevelGraph& lg, std::vector<int>& comm, Rng& rng) {
    std::vector<long long> comm_strength(lg.size(), 0);
    for (int u = 0; u < lg.size(); ++u) comm_strength[comm[u]] += lg.strength[u];
    bool any = false;
    while (local_move_sweep(lg, comm, comm_strength, rng) > 0) any = true;
    return any;
}

// Aggregates by the labeling; relabels communities canonically and rewrites
// `comm` so that comm[u] afterwards is u's supernode in the result.
inline LevelGraph aggregate(const LevelGraph& lg, std::vector<int>& comm) {
    std::vector<int> remap(lg.size(), -1);
    int next = 0;
    for (int u = 0; u < lg.size(); ++u) {
        int& slot = remap[comm[u]];
        if (slot == -1) slot = next++;
        comm[u] = slot;
    }
    LevelGraph out;
    out.two_m_q = lg.two_m_q;
    out.p = lg.p;
    out.scale = lg.scale;
    out.loops.assign(next, 0);
    out.strength.assign(next, 0);
    out.adj.resize(next);
    std::map<std::pair<int, int>, long long> cross;
    for (int u = 0; u < lg.size(); ++u) {
        out.loops[comm[u]] += lg.loops[u];
        out.strength[comm[u]] += lg.strength[u];
        for (auto [v, mult] : lg.adj[u]) {
            if (u < v) {
                int cu = comm[u], cv = comm[v];
                if (cu == cv)
                    out.loops[cu] += mult;
                else
                    cross[{std::min(cu, cv), std::max(cu, cv)}] += mult;
            }
        }
    }
    for (auto& [pair, mult] : cross) {
        out.adj[pair.first].emplace_back(pair.second, mult);
        out.adj[pair.second].emplace_back(pair.first, mult);
    }
    return out;
}

inline void record_trace(const HeuristicConfig& cfg, const LevelGraph& lg0,
                         const std::vector<int>& flat) {
    if (cfg.q_trace) cfg.q_trace->push_back(Ratio{level_q_scaled(lg0, flat), lg0.scale});
}

inline std::vector<int> initial_labels(const Graph& g, const HeuristicConfig& cfg) {
    if (cfg.init) {
        if (cfg.init->size() != g.node_count())
            throw std::invalid_argument("initial partition does not match graph");
        return cfg.init->canonical().assignment();
    }
    std::vector<int> labels(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) labels[v] = v;
    return labels;
}

// Splits communities that induce disconnected subgraphs into their connected
// components. Never decreases modularity: components share no edges and the
// squared degree-sum penalty is superadditive.
inline void split_disconnected(const Graph& g, std::vector<int>& labels) {
    const int n = g.node_count();
    std::vector<int> out(n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (out[s] != -1) continue;
        int c = next++;
        out[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v))
                if (out[w] == -1 && labels[w] == labels[v]) {
                    out[w] = c;
                    stack.push_back(w);
                }
        }
    }
    labels = std::move(out);
}

}  // namespace detail

// Greedy agglomeration: repeatedly merges the community pair with the largest
// strictly positive modularity gain. Zero-gain merges are not taken.
inline Partition cnm(const Graph& g, const HeuristicConfig& cfg = {}) {
    cfg.validate();
    auto lg = detail::make_level0(g, cfg.gamma);

    // Communities keyed by their smallest member node id, which keeps the
    // scan order independent of merge history.
    struct Comm {
        long long strength = 0;
        std::map<int, long long> cross;
        std::vector<int> members;
    };
    std::map<int, Comm> comms;
    for (int v = 0; v < g.node_count(); ++v) {
        comms[v].strength = g.degree(v);
        comms[v].members = {v};
    }
    for (auto [u, v] : g.edges()) {
        comms[u].cross[v] += 1;
        comms[v].cross[u] += 1;
    }

    auto trace = [&] {
        if (!cfg.q_trace) return;
        std::vector<int> labels(g.node_count());
        int c = 0;
        for (auto& [id, comm] : comms) {
            for (int v : comm.members) labels[v] = c;
            ++c;
        }
        cfg.q_trace->push_back(Ratio{detail::level_q_scaled(lg, labels), lg.scale});
    };

    while (true) {
        long long best = 0;
        int best_a = -1, best_b = -1;
        for (auto& [a, ca] : comms) {
            for (auto& [b, w] : ca.cross) {
                if (b < a) continue;
                long long gain = 2 * (lg.two_m_q * w - lg.p * ca.strength * comms[b].strength);
                if (gain > best) {
                    best = gain;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best <= 0) break;

        Comm cb = std::move(comms[best_b]);
        comms.erase(best_b);
        Comm& ca = comms[best_a];
        ca.strength += cb.strength;
        ca.members.insert(ca.members.end(), cb.members.begin(), cb.members.end());
        ca.cross.erase(best_b);
        for (auto& [x, w] : cb.cross) {
            if (x == best_a) continue;
            ca.cross[x] += w;
            Comm& cx = comms[x];
            cx.cross.erase(best_b);
            cx.cross[best_a] += w;
        }
        trace();
    }

    std::vector<int> labels(g.node_count());
    int c = 0;
    for (auto& [id, comm] : comms) {
        for (int v : comm.members) labels[v] = c;
        ++c;
    }
    return Partition(std::move(labels)).canonical();
}

// Louvain: seeded-random local-move sweeps alternated with aggregation.
// Terminates when a flat sweep over the original graph finds no improving
// single-node move (the result is then a local optimum under single-node
// moves to neighboring communities), or when max_passes is reached.
inline Partition louvain(const Graph& g, const HeuristicConfig& cfg = {}) {
    cfg.validate();
    auto lg0 = detail::make_level0(g, cfg.gamma);
    std::vector<int> labels = detail::initial_labels(g, cfg);
    Rng rng(cfg.seed);

    for (int pass = 0; pass < cfg.max_passes; ++pass) {
        bool moved_flat = detail::local_moves_to_convergence(lg0, labels, rng);
        detail::record_trace(cfg, lg0, labels);
        if (!moved_flat) break;

        // Multi-level ascent from the current flat labeling.
        while (true) {
            std::vector<int> flat_to_super = labels;
            detail::LevelGraph lg = detail::aggregate(lg0, flat_to_super);
            std::vector<int> comm(lg.size());
            for (int u = 0; u < lg.size(); ++u) comm[u] = u;
            if (!detail::local_moves_to_convergence(lg, comm, rng)) break;
            for (int v = 0; v < g.node_count(); ++v) labels[v] = comm[flat_to_super[v]];
        }
        detail::record_trace(cfg, lg0, labels);
    }
    return Partition(std::move(labels)).canonical();
}

namespace detail {

// Leiden refinement: inside each community, well-connected nodes merge into
// well-connected subcommunities, chosen randomly among non-negative gains
// with probability proportional to exp(gain/theta). Returns the refined
// labeling on the level graph.
inline std::vector<int> refine_partition(const LevelGraph& lg, const std::vector<int>& comm,
                                         double theta, Rng& rng) {
    const int n = lg.size();
    std::vector<int> refined(n);
    for (int v = 0; v < n; ++v) refined[v] = v;

    int top = 0;
    for (int c : comm) top = std::max(top, c);
    std::vector<std::vector<int>> members(top + 1);
    for (int v = 0; v < n; ++v) members[comm[v]].push_back(v);

    std::vector<long long> rc_strength(n, 0), rc_cut(n, 0), k_to(n, 0);
    std::vector<int> rc_size(n, 1);

    for (auto& group : members) {
        if (group.size() <= 1) continue;
        long long group_strength = 0;
        for (int v : group) group_strength += lg.strength[v];

        std::vector<long long> cut_v(group.size(), 0);
        for (std::size_t idx = 0; idx < group.size(); ++idx) {
            int v = group[idx];
            for (auto [w, mult] : lg.adj[v])
                if (comm[w] == comm[v]) cut_v[idx] += mult;
            rc_strength[v] = lg.strength[v];
            rc_cut[v] = cut_v[idx];
        }

        std::vector<std::size_t> order(group.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        shuffle(rng, order);

        std::vector<int> touched;
        for (std::size_t idx : order) {
            int v = group[idx];
            if (rc_size[refined[v]] != 1) continue;  // only still-singleton nodes move
            // v itself must be well connected to its community.
            if (lg.two_m_q * cut_v[idx] < lg.p * lg.strength[v] * (group_strength - lg.strength[v]))
                continue;

            touched.clear();
            for (auto [w, mult] : lg.adj[v]) {
                if (comm[w] != comm[v]) continue;
                int rc = refined[w];
                if (rc == refined[v]) continue;
                if (k_to[rc] == 0) touched.push_back(rc);
                k_to[rc] += mult;
            }
            std::sort(touched.begin(), touched.end());

            std::vector<std::pair<int, long long>> cands;
            for (int rc : touched) {
                if (lg.two_m_q * rc_cut[rc] <
                    lg.p * rc_strength[rc] * (group_strength - rc_strength[rc]))
                    continue;
                long long gain =
                    2 * (lg.two_m_q * k_to[rc] - lg.p * lg.strength[v] * rc_strength[rc]);
                if (gain >= 0) cands.emplace_back(rc, gain);
            }
            if (!cands.empty()) {
                double max_gain = 0;
                for (auto& [rc, gain] : cands)
                    max_gain = std::max(max_gain, static_cast<double>(gain) / lg.scale);
                std::vector<double> weight(cands.size());
                double total = 0;
                for (std::size_t i = 0; i < cands.size(); ++i) {
                    double x = (static_cast<double>(cands[i].second) / lg.scale - max_gain) / theta;
                    weight[i] = std::exp(std::max(x, -700.0));
                    total += weight[i];
                }
                double r = uniform_real(rng) * total;
                std::size_t pick = 0;
                for (; pick + 1 < cands.size(); ++pick) {
                    if (r < weight[pick]) break;
                    r -= weight[pick];
                }
                int rc = cands[pick].first;
                long long k = k_to[rc];
                refined[v] = rc;
                rc_size[rc] += 1;
                rc_strength[rc] += lg.strength[v];
                rc_cut[rc] += cut_v[idx] - 2 * k;
            }
            for (int rc : touched) k_to[rc] = 0;
        }
    }
    return refined;
}

}  // namespace detail

// Leiden: local moves, refinement into well-connected subcommunities, and
// aggregation on the refined partition. Every returned community induces a
// connected subgraph.
inline Partition leiden(const Graph& g, const HeuristicConfig& cfg = {}) {
    cfg.validate();
    auto lg0 = detail::make_level0(g, cfg.gamma);
    std::vector<int> labels = detail::initial_labels(g, cfg);
    Rng rng(cfg.seed);

    detail::LevelGraph lg = lg0;
    std::vector<int> comm = labels;             // community of each supernode
    std::vector<int> super_of(g.node_count());  // supernode of each original node
    for (int v = 0; v < g.node_count(); ++v) super_of[v] = v;

    for (int pass = 0; pass < cfg.max_passes; ++pass) {
        detail::local_moves_to_convergence(lg, comm, rng);
        for (int v = 0; v < g.node_count(); ++v) labels[v] = comm[super_of[v]];
        detail::record_trace(cfg, lg0, labels);

        // Done once every community is a single supernode.
        std::vector<int> comm_nodes(lg.size(), 0);
        bool done = true;
        for (int u = 0; u < lg.size(); ++u)
            if (++comm_nodes[comm[u]] > 1) done = false;
        if (done) break;

        std::vector<int> refined = detail::refine_partition(lg, comm, cfg.theta, rng);
        detail::LevelGraph next = detail::aggregate(lg, refined);
        std::vector<int> next_comm(next.size(), -1);
        for (int u = 0; u < lg.size(); ++u) next_comm[refined[u]] = comm[u];
        for (int v = 0; v < g.node_count(); ++v) super_of[v] = refined[super_of[v]];
        lg = std::move(next);
        comm = std::move(next_comm);
    }

    for (int v = 0; v < g.node_count(); ++v) labels[v] = comm[super_of[v]];
    detail::split_disconnected(g, labels);
    detail::record_trace(cfg, lg0, labels);
    return Partition(std::move(labels)).canonical();
}

namespace detail {

struct ShiftProposal {
    long long gain = 0;
    std::vector<int> moved;  // nodes that change sides
};

// One Kernighan-Lin style pass over the members of two communities: every
// node switches sides exactly once in greedy gain order; the best prefix with
// strictly positive cumulative gain is the proposed shift.
inline ShiftProposal best_shift(const Graph& g, const LevelGraph& lg, const std::vector<int>& src,
                                const std::vector<int>& dst) {
    std::vector<int> nodes = src;
    nodes.insert(nodes.end(), dst.begin(), dst.end());
    const int u_count = static_cast<int>(nodes.size());

    std::vector<int> side(g.node_count(), -1);
    for (int v : src) side[v] = 0;
    for (int v : dst) side[v] = 1;

    std::vector<long long> k_side0(g.node_count(), 0), k_side1(g.node_count(), 0);
    long long strength[2] = {0, 0};
    for (int v : nodes) {
        strength[side[v]] += g.degree(v);
        for (int w : g.neighbors(v)) {
            if (side[w] == 0)
                k_side0[v] += 1;
            else if (side[w] == 1)
                k_side1[v] += 1;
        }
    }

    std::vector<bool> locked(g.node_count(), false);
    std::vector<int> sequence;
    sequence.reserve(u_count);
    long long cumulative = 0, best_cumulative = 0;
    int best_len = 0;

    for (int step = 0; step < u_count; ++step) {
        long long best_gain = std::numeric_limits<long long>::min();
        int pick = -1;
        for (int v : nodes) {
            if (locked[v]) continue;
            const int a = side[v];
            const long long dv = g.degree(v);
            const long long k_a = a == 0 ? k_side0[v] : k_side1[v];
            const long long k_b = a == 0 ? k_side1[v] : k_side0[v];
            long long gain = 2 * (lg.two_m_q * k_b - lg.p * dv * strength[1 - a]) -
                             2 * (lg.two_m_q * k_a - lg.p * dv * (strength[a] - dv));
            if (gain > best_gain) {
                best_gain = gain;
                pick = v;
            }
        }
        const int a = side[pick];
        side[pick] = 1 - a;
        locked[pick] = true;
        strength[a] -= g.degree(pick);
        strength[1 - a] += g.degree(pick);
        for (int w : g.neighbors(pick)) {
            if (side[w] == -1) continue;
            if (a == 0) {
                k_side0[w] -= 1;
                k_side1[w] += 1;
            } else {
                k_side1[w] -= 1;
                k_side0[w] += 1;
            }
        }
        cumulative += best_gain;
        sequence.push_back(pick);
        if (cumulative > best_cumulative) {
            best_cumulative = cumulative;
            best_len = step + 1;
        }
    }

    ShiftProposal out;
    out.gain = best_cumulative;
    out.moved.assign(sequence.begin(), sequence.begin() + best_len);
    return out;
}

}  // namespace detail

// Combo: starting from a single community, repeatedly applies the best
// positive-gain subset shift over all ordered community pairs (including a
// new empty destination), each evaluated by a Kernighan-Lin pass. Labels are
// canonicalized every round, so decisions do not depend on the labels of
// intermediate states.
inline Partition combo(const Graph& g, const HeuristicConfig& cfg = {}) {
    cfg.validate();
    auto lg = detail::make_level0(g, cfg.gamma);
    std::vector<int> labels = cfg.init ? detail::initial_labels(g, cfg)
                                       : std::vector<int>(g.node_count(), 0);

    while (true) {
        labels = Partition(labels).canonical().assignment();
        const int k = 1 + *std::max_element(labels.begin(), labels.end());
        std::vector<std::vector<int>> groups(k);
        for (int v = 0; v < g.node_count(); ++v) groups[labels[v]].push_back(v);

        const bool allow_new = !cfg.combo_max_communities || k < *cfg.combo_max_communities;
        static const std::vector<int> kEmpty;

        detail::ShiftProposal best;
        int best_src = -1, best_dst = -1;
        for (int s = 0; s < k; ++s) {
            for (int d = 0; d <= k; ++d) {
                if (d == s) continue;
                if (d == k && (!allow_new || groups[s].size() < 2)) continue;
                auto prop = detail::best_shift(g, lg, groups[s], d == k ? kEmpty : groups[d]);
                if (prop.gain > best.gain) {
                    best = std::move(prop);
                    best_src = s;
                    best_dst = d;
                }
            }
        }
        if (best.gain <= 0) break;
        for (int v : best.moved) labels[v] = labels[v] == best_src ? best_dst : best_src;
        if (cfg.q_trace)
            cfg.q_trace->push_back(Ratio{detail::level_q_scaled(lg, labels), lg.scale});
    }
    return Partition(std::move(labels)).canonical();
}

}  // namespace modmax
