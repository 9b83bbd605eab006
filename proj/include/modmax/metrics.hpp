#pragma once

// Partition-similarity and optimality-proximity measures: GOP, adjusted
// mutual information (symmetric, mean-entropy normalization), reduced mutual
// information (asymmetric normalization against a reference partition),
// element-centric similarity, and the max-over-all-optima protocol.
//
// Information measures use natural logs internally; the normalized forms are
// base-independent. The contingency-table count for RMI is exact big-integer
// dynamic programming in the regime tests pin down, with a flagged analytic
// approximation beyond it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "modmax/partition.hpp"

namespace modmax {

// q_alg / q_star, clamped to 0 for negative q_alg and to 1 when q_alg
// exceeds q_star by at most the float guard. A larger excess means the
// "optimum" was beaten and signals a solver bug.
inline constexpr double kGopFloatGuard = 1e-9;

inline double gop(double q_alg, double q_star) {
    if (!(q_star > 0))
        throw std::domain_error("gop undefined for non-positive optimal modularity");
    if (q_alg < 0) return 0.0;
    if (q_alg > q_star) {
        if (q_alg - q_star <= kGopFloatGuard) return 1.0;
        throw std::runtime_error("modularity exceeds the proven optimum: solver bug");
    }
    return q_alg / q_star;
}

struct ContingencyTable {
    int n = 0;
    std::vector<int> row_sums;              // community sizes of X
    std::vector<int> col_sums;              // community sizes of Y
    std::vector<std::vector<int>> counts;   // counts[u][v] = |X_u intersect Y_v|

    static ContingencyTable from_partitions(const Partition& x, const Partition& y) {
        if (x.size() != y.size())
            throw std::invalid_argument("partitions cover different node sets");
        Partition cx = x.canonical(), cy = y.canonical();
        ContingencyTable t;
        t.n = cx.size();
        const int kx = cx.community_count(), ky = cy.community_count();
        t.row_sums.assign(kx, 0);
        t.col_sums.assign(ky, 0);
        t.counts.assign(kx, std::vector<int>(ky, 0));
        for (int v = 0; v < t.n; ++v) {
            ++t.row_sums[cx.label(v)];
            ++t.col_sums[cy.label(v)];
            ++t.counts[cx.label(v)][cy.label(v)];
        }
        return t;
    }
};

namespace detail {

inline double entropy(const std::vector<int>& sizes, int n) {
    double h = 0.0;
    for (int s : sizes)
        if (s > 0) {
            double p = static_cast<double>(s) / n;
            h -= p * std::log(p);
        }
    return h;
}

inline double mutual_information(const ContingencyTable& t) {
    double mi = 0.0;
    for (std::size_t u = 0; u < t.row_sums.size(); ++u)
        for (std::size_t v = 0; v < t.col_sums.size(); ++v) {
            int c = t.counts[u][v];
            if (c > 0)
                mi += (static_cast<double>(c) / t.n) *
                      std::log(static_cast<double>(c) * t.n /
                               (static_cast<double>(t.row_sums[u]) * t.col_sums[v]));
        }
    return mi;
}

// E[I] under the fixed-marginals hypergeometric permutation model, summed
// exactly over the feasible cell counts.
inline double expected_mutual_information(const ContingencyTable& t) {
    const int n = t.n;
    std::vector<double> lf(n + 1);
    for (int i = 0; i <= n; ++i) lf[i] = std::lgamma(i + 1.0);
    double e = 0.0;
    for (int a : t.row_sums) {
        for (int b : t.col_sums) {
            const int lo = std::max(1, a + b - n), hi = std::min(a, b);
            for (int nij = lo; nij <= hi; ++nij) {
                double log_p = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n] - lf[nij] -
                               lf[a - nij] - lf[b - nij] - lf[n - a - b + nij];
                e += (static_cast<double>(nij) / n) *
                     std::log(static_cast<double>(n) * nij / (static_cast<double>(a) * b)) *
                     std::exp(log_p);
            }
        }
    }
    return e;
}

inline double log_big(const boost::multiprecision::cpp_int& x) {
    if (x <= 0) throw std::domain_error("log of non-positive count");
    using boost::multiprecision::msb;
    const unsigned bits = msb(x);
    if (bits < 900) return std::log(x.convert_to<double>());
    boost::multiprecision::cpp_int top = x >> (bits - 52);
    return std::log(top.convert_to<double>()) + (bits - 52) * std::log(2.0);
}

}  // namespace detail

struct TableCount {
    boost::multiprecision::cpp_int count;  // meaningful when exact
    double log_count = 0.0;                // natural log, always set
    bool exact = true;
};

// Exact count when n <= 40 and |a|*|b| <= 64 (big-integer DP over sorted
// remaining column sums); otherwise Good's analytic estimate with the
// approximate flag set.
inline TableCount count_tables(const std::vector<int>& a, const std::vector<int>& b) {
    long long total_a = 0, total_b = 0;
    for (int x : a) {
        if (x < 0) throw std::invalid_argument("negative marginal");
        total_a += x;
    }
    for (int x : b) {
        if (x < 0) throw std::invalid_argument("negative marginal");
        total_b += x;
    }
    if (total_a != total_b) throw std::invalid_argument("marginals disagree on the total");
    const int n = static_cast<int>(total_a);
    const int rows = static_cast<int>(a.size()), cols = static_cast<int>(b.size());
    if (rows == 0 || cols == 0) {
        if (n != 0) throw std::invalid_argument("empty marginal with nonzero total");
        return TableCount{1, 0.0, true};
    }

    if (n <= 40 && rows * cols <= 64) {
        using boost::multiprecision::cpp_int;
        // Count invariance under row/column permutation lets states share.
        std::vector<int> rows_sorted = a;
        std::sort(rows_sorted.begin(), rows_sorted.end(), std::greater<int>());
        std::map<std::pair<int, std::vector<int>>, cpp_int> memo;

        auto count_rec = [&](auto&& self, int row, std::vector<int> colrem) -> cpp_int {
            if (row == rows) return 1;
            std::sort(colrem.begin(), colrem.end(), std::greater<int>());
            auto key = std::make_pair(row, colrem);
            if (auto it = memo.find(key); it != memo.end()) return it->second;
            cpp_int total = 0;
            const int need = rows_sorted[row];
            // Distribute `need` over the columns within their remainders.
            std::vector<int> take(cols, 0);
            auto distribute = [&](auto&& dself, int col, int left) -> void {
                if (col == cols - 1) {
                    if (left > colrem[col]) return;
                    take[col] = left;
                    std::vector<int> next = colrem;
                    for (int cidx = 0; cidx < cols; ++cidx) next[cidx] -= take[cidx];
                    total += self(self, row + 1, std::move(next));
                    return;
                }
                for (int t = std::min(left, colrem[col]); t >= 0; --t) {
                    take[col] = t;
                    dself(dself, col + 1, left - t);
                }
                take[col] = 0;
            };
            distribute(distribute, 0, need);
            memo[key] = total;
            return total;
        };
        cpp_int c = count_rec(count_rec, 0, b);
        return TableCount{c, detail::log_big(c), true};
    }

    // Good's estimate: prod_u C(a_u+C-1, C-1) * prod_v C(b_v+R-1, R-1)
    // divided by C(n+RC-1, RC-1), in log space.
    auto log_choose = [](double top, double bottom) {
        return std::lgamma(top + 1.0) - std::lgamma(bottom + 1.0) - std::lgamma(top - bottom + 1.0);
    };
    double lg = -log_choose(static_cast<double>(n) + static_cast<double>(rows) * cols - 1,
                            static_cast<double>(rows) * cols - 1);
    for (int x : a) lg += log_choose(x + cols - 1.0, cols - 1.0);
    for (int x : b) lg += log_choose(x + rows - 1.0, rows - 1.0);
    return TableCount{0, lg, false};
}

// Symmetrically normalized adjusted mutual information:
// (I - E[I]) / (mean(H(X), H(Y)) - E[I]). Two all-in-one partitions compare
// as identical (1).
inline double ami(const Partition& x, const Partition& y) {
    auto t = ContingencyTable::from_partitions(x, y);
    const double hx = detail::entropy(t.row_sums, t.n);
    const double hy = detail::entropy(t.col_sums, t.n);
    if (hx == 0.0 && hy == 0.0) return 1.0;
    const double mi = detail::mutual_information(t);
    const double emi = detail::expected_mutual_information(t);
    const double denom = 0.5 * (hx + hy) - emi;
    if (std::abs(denom) < 1e-15)
        return x.canonical() == y.canonical() ? 1.0 : 0.0;
    return (mi - emi) / denom;
}

// Asymmetrically normalized reduced mutual information against a reference:
// [I(X;Y) - log(Omega(a,b))/n] / [H(Y) - log(Omega(b,b))/n]. Throws when the
// reference is non-normalizable (denominator <= 0). `approximate`, when
// given, reports whether either table count fell back to the estimate.
inline double rmi(const Partition& x, const Partition& y_reference, bool* approximate = nullptr) {
    auto t = ContingencyTable::from_partitions(x, y_reference);
    TableCount cross = count_tables(t.row_sums, t.col_sums);
    TableCount ref = count_tables(t.col_sums, t.col_sums);
    if (approximate) *approximate = !cross.exact || !ref.exact;
    const double numer = detail::mutual_information(t) - cross.log_count / t.n;
    const double denom = detail::entropy(t.col_sums, t.n) - ref.log_count / t.n;
    if (!(denom > 0))
        throw std::domain_error("rmi reference partition is non-normalizable");
    return numer / denom;
}

// Element-centric similarity for flat disjoint partitions. Node affinities
// spread alpha/|community| over the community (self included) plus (1-alpha)
// at the node itself; the per-node score is one minus the scaled L1 gap.
inline double ecs(const Partition& x, const Partition& y, double alpha = 0.9) {
    if (x.size() != y.size()) throw std::invalid_argument("partitions cover different node sets");
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
    auto t = ContingencyTable::from_partitions(x, y);
    Partition cx = x.canonical(), cy = y.canonical();
    double total = 0.0;
    for (int v = 0; v < cx.size(); ++v) {
        const int ax = t.row_sums[cx.label(v)];
        const int by = t.col_sums[cy.label(v)];
        const int overlap = t.counts[cx.label(v)][cy.label(v)];
        const double l1_over_alpha = std::abs(1.0 / ax - 1.0 / by) * overlap +
                                     static_cast<double>(ax - overlap) / ax +
                                     static_cast<double>(by - overlap) / by;
        total += 1.0 - 0.5 * l1_over_alpha;
    }
    return total / cx.size();
}

enum class Measure { ami, rmi, ecs };

// Conservative protocol when a graph has several optimal partitions: report
// the similarity to the closest one. For rmi the optimum is the reference.
inline double best_over_optima(const Partition& x, const std::vector<Partition>& optima,
                               Measure measure, double alpha = 0.9) {
    if (optima.empty()) throw std::invalid_argument("empty optima list");
    double best = -std::numeric_limits<double>::infinity();
    for (const Partition& opt : optima) {
        double v = 0.0;
        switch (measure) {
            case Measure::ami: v = ami(x, opt); break;
            case Measure::rmi: v = rmi(x, opt); break;
            case Measure::ecs: v = ecs(x, opt, alpha); break;
        }
        best = std::max(best, v);
    }
    return best;
}

struct SimilarityReport {
    double gop = 0.0;
    double ami = 0.0;
    double rmi = 0.0;
    double ecs = 0.0;
    int optima_count = 0;
    bool rmi_approximate = false;
};

// Full report of one partition against the optimal set. An exactly optimal
// partition scores 1 on all four measures. RMI skips non-normalizable
// references; if every reference is degenerate the field is NaN.
// best_ami_index, when given, receives the index of the AMI-maximizing
// optimum (the one whose community count reports as k*).
inline SimilarityReport compare_to_optima(const Partition& x, const std::vector<Partition>& optima,
                                          double q_alg, double q_star, double alpha = 0.9,
                                          int* best_ami_index = nullptr) {
    if (optima.empty()) throw std::invalid_argument("empty optima list");
    SimilarityReport rep;
    rep.optima_count = static_cast<int>(optima.size());
    rep.gop = gop(q_alg, q_star);

    Partition cx = x.canonical();
    for (std::size_t i = 0; i < optima.size(); ++i) {
        if (cx == optima[i].canonical()) {
            rep.ami = rep.rmi = rep.ecs = 1.0;
            rep.gop = 1.0;
            if (best_ami_index) *best_ami_index = static_cast<int>(i);
            return rep;
        }
    }

    double best_ami = -std::numeric_limits<double>::infinity();
    int best_ami_at = 0;
    for (std::size_t i = 0; i < optima.size(); ++i) {
        double v = ami(x, optima[i]);
        if (v > best_ami) {
            best_ami = v;
            best_ami_at = static_cast<int>(i);
        }
    }
    rep.ami = best_ami;
    if (best_ami_index) *best_ami_index = best_ami_at;

    rep.ecs = best_over_optima(x, optima, Measure::ecs, alpha);
    double best_rmi = -std::numeric_limits<double>::infinity();
    bool any_ref = false;
    for (const Partition& opt : optima) {
        try {
            bool approx = false;
            double v = rmi(x, opt, &approx);
            rep.rmi_approximate = rep.rmi_approximate || approx;
            best_rmi = std::max(best_rmi, v);
            any_ref = true;
        } catch (const std::domain_error&) {
            // non-normalizable reference
        }
    }
    rep.rmi = any_ref ? best_rmi : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

}  // namespace modmax
