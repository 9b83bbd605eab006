#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: direct float summation of the modularity double sum, exhaustive
// set-partition sweeps, exact-factorial expected mutual information, raw NMI
// (used only as the chance-correction foil), a dense affinity-vector ECS, and
// brute-force contingency-table enumeration.

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "modmax/graph.hpp"
#include "modmax/partition.hpp"
#include "modmax/random.hpp"

namespace oracle {

// Direct evaluation of the modularity double sum over ordered node pairs.
inline double naive_modularity(const modmax::Graph& g, const std::vector<int>& assign,
                               double gamma = 1.0) {
    const int n = g.node_count();
    const double two_m = 2.0 * g.edge_count();
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (assign[i] != assign[j]) continue;
            double a = g.has_edge(i, j) ? 1.0 : 0.0;
            total += a - gamma * g.degree(i) * g.degree(j) / two_m;
        }
    return total / two_m;
}

// All set partitions of {0..n-1} as restricted-growth assignment vectors.
inline std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> assign(n, 0);
    auto rec = [&](auto&& self, int v, int used) -> void {
        if (v == n) {
            out.push_back(assign);
            return;
        }
        for (int c = 0; c <= used; ++c) {
            assign[v] = c;
            self(self, v + 1, std::max(used, c + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
}

struct SweepResult {
    double best_q = -1e9;
    std::vector<std::vector<int>> optima;
};

// Float brute-force sweep; tolerance separates distinct rational values on
// the tiny graphs this runs on.
inline SweepResult sweep_partitions(const modmax::Graph& g, double gamma = 1.0,
                                    double tol = 1e-9) {
    SweepResult res;
    for (auto& assign : all_partitions(g.node_count())) {
        double q = naive_modularity(g, assign, gamma);
        if (q > res.best_q + tol) {
            res.best_q = q;
            res.optima.clear();
        }
        if (q > res.best_q - tol) res.optima.push_back(assign);
    }
    return res;
}

// Contingency counts from two assignment vectors.
inline std::map<std::pair<int, int>, int> contingency(const std::vector<int>& x,
                                                      const std::vector<int>& y) {
    std::map<std::pair<int, int>, int> cells;
    for (std::size_t i = 0; i < x.size(); ++i) ++cells[{x[i], y[i]}];
    return cells;
}

inline std::map<int, int> sizes_of(const std::vector<int>& labels) {
    std::map<int, int> s;
    for (int l : labels) ++s[l];
    return s;
}

inline double entropy_of(const std::vector<int>& labels) {
    const double n = static_cast<double>(labels.size());
    double h = 0.0;
    for (auto& [l, c] : sizes_of(labels)) h -= (c / n) * std::log(c / n);
    return h;
}

inline double mutual_information_of(const std::vector<int>& x, const std::vector<int>& y) {
    const double n = static_cast<double>(x.size());
    auto ax = sizes_of(x);
    auto by = sizes_of(y);
    double mi = 0.0;
    for (auto& [cell, c] : contingency(x, y))
        mi += (c / n) * std::log(c * n / (static_cast<double>(ax[cell.first]) * by[cell.second]));
    return mi;
}

// Expected MI under the fixed-marginals permutation model with exact
// big-integer factorial probabilities.
inline double expected_mi_exact(const std::vector<int>& x, const std::vector<int>& y) {
    using boost::multiprecision::cpp_int;
    const int n = static_cast<int>(x.size());
    std::vector<cpp_int> fact(n + 1);
    fact[0] = 1;
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
    auto ax = sizes_of(x);
    auto by = sizes_of(y);
    double e = 0.0;
    for (auto& [lx, a] : ax) {
        for (auto& [ly, b] : by) {
            const int lo = std::max(1, a + b - n), hi = std::min(a, b);
            for (int nij = lo; nij <= hi; ++nij) {
                cpp_int num = fact[a] * fact[b] * fact[n - a] * fact[n - b];
                cpp_int den = fact[n] * fact[nij] * fact[a - nij] * fact[b - nij] *
                              fact[n - a - b + nij];
                boost::multiprecision::cpp_rational p(num, den);
                e += (static_cast<double>(nij) / n) *
                     std::log(static_cast<double>(n) * nij / (static_cast<double>(a) * b)) *
                     p.convert_to<double>();
            }
        }
    }
    return e;
}

// Raw NMI with arithmetic-mean normalization: the foil the chance-correction
// property compares against.
inline double nmi(const std::vector<int>& x, const std::vector<int>& y) {
    double hx = entropy_of(x), hy = entropy_of(y);
    if (hx == 0.0 && hy == 0.0) return 1.0;
    return 2.0 * mutual_information_of(x, y) / (hx + hy);
}

// ECS by materializing the full affinity vectors.
inline double ecs_affinity(const std::vector<int>& x, const std::vector<int>& y, double alpha) {
    const int n = static_cast<int>(x.size());
    auto build = [&](const std::vector<int>& labels, int i) {
        std::vector<double> p(n, 0.0);
        int size = 0;
        for (int j = 0; j < n; ++j)
            if (labels[j] == labels[i]) ++size;
        for (int j = 0; j < n; ++j)
            if (labels[j] == labels[i]) p[j] = alpha / size;
        p[i] += 1.0 - alpha;
        return p;
    };
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        auto px = build(x, i), py = build(y, i);
        double l1 = 0.0;
        for (int j = 0; j < n; ++j) l1 += std::abs(px[j] - py[j]);
        total += 1.0 - l1 / (2.0 * alpha);
    }
    return total / n;
}

// Brute-force count of non-negative integer tables with the given marginals.
inline long long enumerate_tables(const std::vector<int>& a, const std::vector<int>& b) {
    const int rows = static_cast<int>(a.size()), cols = static_cast<int>(b.size());
    std::vector<int> colrem = b;
    long long count = 0;
    auto rec = [&](auto&& self, int row, int col, int left) -> void {
        if (row == rows) {
            ++count;
            return;
        }
        if (col == cols - 1) {
            if (left <= colrem[col]) {
                colrem[col] -= left;
                self(self, row + 1, 0, row + 1 < rows ? a[row + 1] : 0);
                colrem[col] += left;
            }
            return;
        }
        for (int t = 0; t <= std::min(left, colrem[col]); ++t) {
            colrem[col] -= t;
            self(self, row, col + 1, left - t);
            colrem[col] += t;
        }
    };
    rec(rec, 0, 0, rows > 0 ? a[0] : 0);
    return count;
}

// Seeded Erdos-Renyi-style graph; resamples until at least one edge exists.
inline modmax::Graph random_graph(int n, double p, modmax::Rng& rng) {
    while (true) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (modmax::uniform_real(rng) < p) edges.emplace_back(i, j);
        if (!edges.empty()) return modmax::Graph(n, std::move(edges));
    }
}

// Uniformly random assignment with exactly the given community sizes.
inline std::vector<int> random_partition_with_sizes(const std::vector<int>& sizes,
                                                    modmax::Rng& rng) {
    std::vector<int> labels;
    for (std::size_t c = 0; c < sizes.size(); ++c)
        labels.insert(labels.end(), sizes[c], static_cast<int>(c));
    modmax::shuffle(rng, labels);
    return labels;
}

inline std::vector<int> random_assignment(int n, int max_k, modmax::Rng& rng) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(modmax::uniform_index(rng, max_k));
    return labels;
}

}  // namespace oracle
