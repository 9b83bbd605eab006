#pragma once

// Provably optimal and gap-bounded modularity maximization.
//
// brute_force_max enumerates every set partition (restricted-growth order)
// and is the independent oracle for small instances. branch_and_bound_max
// searches over pair decisions: each search node either merges two must-link
// classes or cannot-links them, which walks the same feasible set as the
// triangle-constrained pair IP. Bounds, incumbents and optima are compared in
// exact integer arithmetic, so optimality proofs and all-optima enumeration
// are free of float ties.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modmax/graph.hpp"
#include "modmax/heuristics.hpp"
#include "modmax/modularity.hpp"
#include "modmax/pair_state.hpp"
#include "modmax/partition.hpp"

namespace modmax {

struct SolveConfig {
    double tolerance = 0.0;  // epsilon: allowed relative gap; 0 proves optimality
    std::optional<double> time_limit_seconds{};
    std::optional<long long> node_limit{};
    bool enumerate_all = false;   // requires tolerance == 0
    unsigned long long seed = 0;  // heuristic seeding / tie-breaking only
    bool seed_incumbent_with_heuristics = true;

    void validate() const {
        if (!(tolerance >= 0.0) || tolerance >= 1.0)
            throw std::invalid_argument("tolerance must lie in [0, 1)");
        if (enumerate_all && tolerance != 0.0)
            throw std::invalid_argument("enumerate_all requires tolerance 0");
    }
};

// Floor for the relative-gap denominator, mirrored by the GOP float guard.
inline constexpr double kGapDenominatorFloor = 1e-12;

// (ub - lb) / lb for positive lb (floored denominator), absolute otherwise.
inline double relative_gap(const Ratio& lb, const Ratio& ub) {
    double lo = lb.value(), hi = ub.value();
    if (lb.num > 0) return (hi - lo) / std::max(lo, kGapDenominatorFloor);
    return hi - lo;
}

struct SolveResult {
    std::vector<Partition> optima;  // canonical, sorted; every entry has modularity q_lb
    Ratio q_lb{0, 1};
    Ratio q_ub{0, 1};
    double gap = 0.0;
    bool proven_optimal = false;
    bool enumeration_complete = true;  // false when limits cut an enumeration short
    long long nodes_explored = 0;
    double elapsed_seconds = 0.0;
};

namespace detail {

// Dense scaled modularity entries for the solvers.
struct WeightMatrix {
    int n = 0;
    long long scale = 0;
    std::vector<long long> w;  // row-major n*n

    WeightMatrix(const Graph& g, const ModularityParams& params) {
        params.validate();
        if (g.edge_count() < 1) throw std::invalid_argument("solver needs at least one edge");
        check_scale_fits(g, params);
        n = g.node_count();
        if (n > 2048) throw std::invalid_argument("dense solver limited to 2048 nodes");
        const long long m = g.edge_count();
        const long long two_m_q = 2 * m * params.gamma_den;
        scale = 4 * m * m * params.gamma_den;
        w.assign(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                w[static_cast<std::size_t>(i) * n + j] =
                    -params.gamma_num * g.degree(i) * g.degree(j);
        for (auto [u, v] : g.edges()) {
            w[static_cast<std::size_t>(u) * n + v] += two_m_q;
            w[static_cast<std::size_t>(v) * n + u] += two_m_q;
        }
    }

    long long at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

}  // namespace detail

// Diagonal plus decided-same contribution of a partial state:
// (1/2m) * [sum_i b_ii + sum over same pairs of 2 b_ij].
inline Ratio fixed_contribution(const Graph& g, const ModularityParams& params,
                                const PairDecisionState& s) {
    detail::WeightMatrix wm(g, params);
    if (s.node_count() != wm.n) throw std::invalid_argument("state does not match graph");
    long long fixed = 0;
    for (int i = 0; i < wm.n; ++i) fixed += wm.at(i, i);
    for (int i = 0; i < wm.n; ++i)
        for (int j = i + 1; j < wm.n; ++j)
            if (s.status(i, j) == PairDecisionState::PairStatus::same) fixed += 2 * wm.at(i, j);
    return Ratio{fixed, wm.scale};
}

// Admissible bound on every completion of the state:
// (1/2m) * [sum_i b_ii + sum_same 2 b_ij + sum_undecided 2 max(b_ij, 0)].
// Equals the exact modularity on fully decided states; never increases as
// pairs become decided. fixed_contribution's value may be passed to avoid
// recomputing the decided part.
inline Ratio upper_bound(const Graph& g, const ModularityParams& params,
                         const PairDecisionState& s, const Ratio& fixed) {
    detail::WeightMatrix wm(g, params);
    if (s.node_count() != wm.n) throw std::invalid_argument("state does not match graph");
    if (wm.scale % fixed.den != 0)
        throw std::invalid_argument("fixed_contribution has incompatible denominator");
    long long undecided = 0;
    for (int i = 0; i < wm.n; ++i)
        for (int j = i + 1; j < wm.n; ++j)
            if (s.status(i, j) == PairDecisionState::PairStatus::undecided)
                undecided += 2 * std::max(wm.at(i, j), 0LL);
    return Ratio{fixed.num * (wm.scale / fixed.den) + undecided, wm.scale};
}

inline Ratio upper_bound(const Graph& g, const ModularityParams& params,
                         const PairDecisionState& s) {
    return upper_bound(g, params, s, fixed_contribution(g, params, s));
}

// Exhaustive oracle: enumerates all set partitions of the node set in
// restricted-growth order and returns the maximum and every partition
// attaining it. Guarded by a Bell-number limit on n.
inline SolveResult brute_force_max(const Graph& g, const ModularityParams& params = {},
                                   int node_guard = 13) {
    const auto start = std::chrono::steady_clock::now();
    if (g.node_count() > node_guard)
        throw std::invalid_argument(
            "brute_force_max refused: " + std::to_string(g.node_count()) + " nodes exceeds the " +
            std::to_string(node_guard) + "-node guard; use branch_and_bound_max");
    detail::WeightMatrix wm(g, params);
    const int n = wm.n;

    std::vector<int> assign(n, 0);
    std::vector<std::vector<int>> members(n);
    long long best = std::numeric_limits<long long>::min();
    std::vector<std::vector<int>> best_assignments;
    long long leaves = 0;

    auto extend = [&](auto&& self, int v, int used, long long value) -> void {
        if (v == n) {
            ++leaves;
            if (value > best) {
                best = value;
                best_assignments.clear();
            }
            if (value == best) best_assignments.push_back(assign);
            return;
        }
        for (int c = 0; c <= used && c < n; ++c) {
            long long delta = wm.at(v, v);
            for (int u : members[c]) delta += 2 * wm.at(u, v);
            members[c].push_back(v);
            assign[v] = c;
            self(self, v + 1, std::max(used, c + 1), value + delta);
            members[c].pop_back();
        }
    };
    extend(extend, 0, 0, 0);

    SolveResult res;
    res.q_lb = Ratio{best, wm.scale};
    res.q_ub = res.q_lb;
    res.proven_optimal = true;
    res.nodes_explored = leaves;
    for (auto& a : best_assignments) res.optima.push_back(Partition(a).canonical());
    std::sort(res.optima.begin(), res.optima.end());
    res.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

namespace detail {

// Branch-and-bound over pair decisions with class-aggregated bookkeeping.
// The working bound is the class-level analogue of upper_bound (sum over
// undecided class pairs of 2*max(aggregated weight, 0)); since completions
// assign whole must-link classes, it is admissible and at most the per-pair
// bound. A greedy correction over conflicted class triples tightens it.
class BnbSolver {
public:
    BnbSolver(const Graph& g, const ModularityParams& params, const SolveConfig& cfg)
        : graph_(g), wm_(g, params), cfg_(cfg), state_(g.node_count()) {
        n_ = wm_.n;
        agg_ = wm_.w;
        fixed_ = 0;
        for (int i = 0; i < n_; ++i) fixed_ += wm_.at(i, i);
        positive_sum_ = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) positive_sum_ += 2 * std::max(agg(i, j), 0LL);
        undecided_pairs_ = static_cast<long long>(n_) * (n_ - 1) / 2;

        if (cfg_.seed_incumbent_with_heuristics) {
            HeuristicConfig hcfg;
            hcfg.seed = cfg_.seed;
            hcfg.gamma = params;
            offer_incumbent(louvain(graph_, hcfg));
            offer_incumbent(combo(graph_, hcfg));
        }
        // All-in-one is always a valid fallback incumbent.
        offer_incumbent(Partition::all_in_one(n_));
    }

    SolveResult solve() {
        start_ = std::chrono::steady_clock::now();

        bool pass1_complete = false;
        if (cfg_.enumerate_all) {
            // Pass 1 proves the optimum, pass 2 collects every leaf tying it.
            // A pass-2 interruption costs completeness, not the proof.
            enumerating_ = false;
            search();
            pass1_complete = !aborted_;
            if (pass1_complete) {
                enumerating_ = true;
                collect_threshold_ = incumbent_value_;
                search();
            }
        } else {
            enumerating_ = false;
            search();
        }

        SolveResult res;
        res.nodes_explored = nodes_;
        res.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        res.q_lb = Ratio{incumbent_value_, wm_.scale};
        long long ub = incumbent_value_;
        if (aborted_ && !(cfg_.enumerate_all && pass1_complete))
            ub = std::max(ub, abort_bound_);
        if (pruned_any_) ub = std::max(ub, std::min(max_pruned_bound_, prune_threshold()));
        res.q_ub = Ratio{ub, wm_.scale};
        res.proven_optimal =
            (cfg_.enumerate_all ? pass1_complete : !aborted_) && res.q_lb == res.q_ub;
        res.gap = relative_gap(res.q_lb, res.q_ub);
        res.enumeration_complete = !cfg_.enumerate_all || (pass1_complete && !aborted_);

        if (cfg_.enumerate_all && !optima_.empty()) {
            for (auto& a : optima_) res.optima.push_back(Partition(a).canonical());
        } else {
            res.optima.push_back(Partition(incumbent_assignment_).canonical());
        }
        std::sort(res.optima.begin(), res.optima.end());
        res.optima.erase(std::unique(res.optima.begin(), res.optima.end()), res.optima.end());
        return res;
    }

private:
    long long& agg(int i, int j) { return agg_[static_cast<std::size_t>(i) * n_ + j]; }
    long long agg(int i, int j) const { return agg_[static_cast<std::size_t>(i) * n_ + j]; }

    void offer_incumbent(const Partition& x) {
        long long value = 0;
        for (const auto& grp : x.groups())
            for (int i : grp)
                for (int j : grp) value += wm_.at(i, j);
        if (value > incumbent_value_) {
            incumbent_value_ = value;
            incumbent_assignment_ = x.assignment();
        }
    }

    long long prune_threshold() const {
        if (cfg_.tolerance == 0.0) return incumbent_value_;
        long double t = static_cast<long double>(incumbent_value_) *
                        (1.0L + static_cast<long double>(cfg_.tolerance));
        if (t >= static_cast<long double>(std::numeric_limits<long long>::max()))
            return std::numeric_limits<long long>::max();
        return static_cast<long long>(std::floor(t));
    }

    bool limits_hit() const {
        if (cfg_.node_limit && nodes_ >= *cfg_.node_limit) return true;
        if (cfg_.time_limit_seconds && (nodes_ & 255) == 0) {
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            if (elapsed >= *cfg_.time_limit_seconds) return true;
        }
        return false;
    }

    long long bound() const { return fixed_ + positive_sum_; }

    // Greedy pair-disjoint correction over conflicted class triples (two
    // positive cross weights tied to one negative): a completion realizes at
    // most max(W12, W13, W12+W13+W23) of such a triple, so min(W12, W13, -W23)
    // comes off the plain bound once per disjoint triple.
    long long triangle_correction() const {
        const auto& roots = state_.roots();
        const int k = static_cast<int>(roots.size());
        if (k < 3 || k > 96) return 0;
        struct Cand {
            long long value;
            int a, b, c;
        };
        std::vector<Cand> cands;
        for (int x = 0; x < k; ++x) {
            int rx = roots[x];
            for (int y = x + 1; y < k; ++y) {
                int ry = roots[y];
                if (state_.status(rx, ry) != PairDecisionState::PairStatus::undecided) continue;
                for (int z = y + 1; z < k; ++z) {
                    int rz = roots[z];
                    if (state_.status(rx, rz) != PairDecisionState::PairStatus::undecided ||
                        state_.status(ry, rz) != PairDecisionState::PairStatus::undecided)
                        continue;
                    const long long wxy = agg(rx, ry), wxz = agg(rx, rz), wyz = agg(ry, rz);
                    long long best = 0;
                    if (wxy > 0 && wxz > 0 && wyz < 0)
                        best = std::max(best, std::min({wxy, wxz, -wyz}));
                    if (wxy > 0 && wyz > 0 && wxz < 0)
                        best = std::max(best, std::min({wxy, wyz, -wxz}));
                    if (wxz > 0 && wyz > 0 && wxy < 0)
                        best = std::max(best, std::min({wxz, wyz, -wxy}));
                    if (best > 0) cands.push_back({best, rx, ry, rz});
                }
            }
        }
        if (cands.empty()) return 0;
        std::sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) {
            if (l.value != r.value) return l.value > r.value;
            if (l.a != r.a) return l.a < r.a;
            if (l.b != r.b) return l.b < r.b;
            return l.c < r.c;
        });
        std::vector<bool> used(static_cast<std::size_t>(n_) * n_, false);
        auto pair_used = [&](int a, int b) -> std::vector<bool>::reference {
            return used[static_cast<std::size_t>(std::min(a, b)) * n_ + std::max(a, b)];
        };
        long long correction = 0;
        for (const Cand& c : cands) {
            if (pair_used(c.a, c.b) || pair_used(c.a, c.c) || pair_used(c.b, c.c)) continue;
            pair_used(c.a, c.b) = true;
            pair_used(c.a, c.c) = true;
            pair_used(c.b, c.c) = true;
            correction += 2 * c.value;
        }
        return correction;
    }

    struct BranchChoice {
        int a = -1, b = -1;
    };

    // Undecided class pair with maximum |aggregated weight|; ties to the
    // lexicographically smallest canonical representative pair. Merge is
    // explored first.
    BranchChoice select_branch() const {
        const auto& roots = state_.roots();
        BranchChoice choice;
        long long best_abs = -1;
        int best_lo = -1, best_hi = -1;
        for (std::size_t x = 0; x < roots.size(); ++x) {
            for (std::size_t y = x + 1; y < roots.size(); ++y) {
                int a = roots[x], b = roots[y];
                if (state_.status(a, b) != PairDecisionState::PairStatus::undecided) continue;
                long long v = agg(a, b);
                long long av = v < 0 ? -v : v;
                if (av < best_abs) continue;
                int lo = std::min(state_.canonical_rep(a), state_.canonical_rep(b));
                int hi = std::max(state_.canonical_rep(a), state_.canonical_rep(b));
                if (av > best_abs || lo < best_lo || (lo == best_lo && hi < best_hi)) {
                    best_abs = av;
                    best_lo = lo;
                    best_hi = hi;
                    choice = {a, b};
                }
            }
        }
        return choice;
    }

    struct MergeDelta {
        int absorbed = -1, into = -1;
        long long fixed_delta = 0, positive_delta = 0, undecided_delta = 0;
    };

    MergeDelta apply_merge(int a, int b) {
        MergeDelta d;
        int ra = state_.find(a), rb = state_.find(b);
        if (state_.class_size(ra) > state_.class_size(rb))
            std::swap(ra, rb);  // mirror the state's absorb direction
        d.absorbed = ra;
        d.into = rb;

        d.positive_delta -= 2 * std::max(agg(ra, rb), 0LL);
        d.undecided_delta -= 1;
        for (int c : state_.roots()) {
            if (c == ra || c == rb) continue;
            bool ua = state_.status(ra, c) == PairDecisionState::PairStatus::undecided;
            bool ub = state_.status(rb, c) == PairDecisionState::PairStatus::undecided;
            if (ua) d.positive_delta -= 2 * std::max(agg(ra, c), 0LL);
            if (ub) d.positive_delta -= 2 * std::max(agg(rb, c), 0LL);
            if (ua && ub) d.positive_delta += 2 * std::max(agg(ra, c) + agg(rb, c), 0LL);
            d.undecided_delta -= (ua ? 1 : 0) + (ub ? 1 : 0) - (ua && ub ? 1 : 0);
        }
        d.fixed_delta = 2 * agg(ra, rb);

        state_.merge(ra, rb);
        for (int c : state_.roots()) {
            if (c == d.into) continue;
            agg(d.into, c) += agg(d.absorbed, c);
            agg(c, d.into) = agg(d.into, c);
        }
        fixed_ += d.fixed_delta;
        positive_sum_ += d.positive_delta;
        undecided_pairs_ += d.undecided_delta;
        return d;
    }

    void undo_merge(const MergeDelta& d, std::size_t state_mark) {
        state_.rewind(state_mark);  // restores the live roots, absorbed included
        for (int c : state_.roots()) {
            if (c == d.into || c == d.absorbed) continue;
            agg(d.into, c) -= agg(d.absorbed, c);
            agg(c, d.into) = agg(d.into, c);
        }
        fixed_ -= d.fixed_delta;
        positive_sum_ -= d.positive_delta;
        undecided_pairs_ -= d.undecided_delta;
    }

    void handle_leaf() {
        const long long value = fixed_;
        if (enumerating_) {
            if (value == collect_threshold_) optima_.push_back(state_.class_assignment());
            return;
        }
        if (value > incumbent_value_) {
            incumbent_value_ = value;
            incumbent_assignment_ = state_.class_assignment();
        }
    }

    bool prunable(long long ub) {
        if (enumerating_) return ub < collect_threshold_;  // strict: ties survive
        if (ub <= prune_threshold()) {
            pruned_any_ = true;
            max_pruned_bound_ = std::max(max_pruned_bound_, ub);
            return true;
        }
        return false;
    }

    // Iterative DFS; frame phases: 0 = enter, 1 = merge child done,
    // 2 = separate child done.
    void search() {
        struct Frame {
            int phase = 0;
            BranchChoice pick{};
            MergeDelta md{};
            std::size_t mark = 0;
            long long sep_positive = 0;
            long long ub = 0;
        };
        std::vector<Frame> stack;
        stack.push_back({});

        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.phase == 0) {
                ++nodes_;
                if (limits_hit()) {
                    aborted_ = true;
                    abort_bound_ = std::max(abort_bound_, bound());
                    break;
                }
                if (undecided_pairs_ == 0) {
                    handle_leaf();
                    stack.pop_back();
                    continue;
                }
                f.ub = bound();
                bool pruned = prunable(f.ub);
                if (!pruned && undecided_pairs_ > 2)
                    pruned = prunable(f.ub - triangle_correction());
                if (pruned) {
                    stack.pop_back();
                    continue;
                }
                f.pick = select_branch();
                f.phase = 1;
                f.mark = state_.mark();
                f.md = apply_merge(f.pick.a, f.pick.b);
                stack.push_back({});
            } else if (f.phase == 1) {
                undo_merge(f.md, f.mark);
                f.phase = 2;
                f.mark = state_.mark();
                f.sep_positive = 2 * std::max(agg(f.pick.a, f.pick.b), 0LL);
                state_.separate(f.pick.a, f.pick.b);
                positive_sum_ -= f.sep_positive;
                undecided_pairs_ -= 1;
                stack.push_back({});
            } else {
                state_.rewind(f.mark);
                positive_sum_ += f.sep_positive;
                undecided_pairs_ += 1;
                stack.pop_back();
            }
        }

        if (aborted_) {
            // Unwind: open subtrees are covered by their frames' bounds.
            for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                Frame& f = *it;
                if (f.phase >= 1) abort_bound_ = std::max(abort_bound_, f.ub);
                if (f.phase == 1) undo_merge(f.md, f.mark);
                if (f.phase == 2) {
                    state_.rewind(f.mark);
                    positive_sum_ += f.sep_positive;
                    undecided_pairs_ += 1;
                }
            }
        }
    }

    const Graph& graph_;
    WeightMatrix wm_;
    SolveConfig cfg_;
    PairDecisionState state_;
    int n_ = 0;

    std::vector<long long> agg_;  // class-aggregated weights between live roots
    long long fixed_ = 0;         // diagonal + decided-same contribution
    long long positive_sum_ = 0;  // sum over undecided class pairs of 2*max(W,0)
    long long undecided_pairs_ = 0;

    long long incumbent_value_ = std::numeric_limits<long long>::min();
    std::vector<int> incumbent_assignment_;
    bool pruned_any_ = false;
    long long max_pruned_bound_ = std::numeric_limits<long long>::min();
    long long collect_threshold_ = 0;
    std::vector<std::vector<int>> optima_;

    bool enumerating_ = false;
    bool aborted_ = false;
    long long abort_bound_ = std::numeric_limits<long long>::min();
    long long nodes_ = 0;
    std::chrono::steady_clock::time_point start_{};
};

}  // namespace detail

// Branch-and-bound modularity maximization. With tolerance 0 and no limits
// the result is proven optimal; with a positive tolerance the search stops
// once the relative gap cannot exceed it. Limits never throw: the result
// carries proven_optimal = false and the achieved gap.
inline SolveResult branch_and_bound_max(const Graph& g, const ModularityParams& params = {},
                                        const SolveConfig& cfg = {}) {
    cfg.validate();
    detail::BnbSolver solver(g, params, cfg);
    return solver.solve();
}

// Every partition attaining the maximum modularity: an optimality pass, then
// a collection pass that prunes only on strict bound inequality so ties
// survive. If limits interrupt, the result is flagged incomplete.
inline SolveResult enumerate_optima(const Graph& g, const ModularityParams& params = {},
                                    SolveConfig cfg = {}) {
    cfg.enumerate_all = true;
    cfg.validate();
    detail::BnbSolver solver(g, params, cfg);
    return solver.solve();
}

}  // namespace modmax
