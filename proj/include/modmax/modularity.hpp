#pragma once

// Exact modularity arithmetic. With resolution gamma = p/q, every modularity
// value of a graph with m edges is an integer over the common denominator
// 4*m^2*q, so partitions compare without float ties. A float view is provided
// for reporting.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "modmax/graph.hpp"
#include "modmax/partition.hpp"

namespace modmax {

struct ModularityParams {
    long long gamma_num = 1;
    long long gamma_den = 1;

    void validate() const {
        if (gamma_num <= 0 || gamma_den <= 0)
            throw std::invalid_argument("gamma must be a positive rational");
    }
};

// Parses "3", "1/2" or a decimal like "0.75" into an exact rational.
inline ModularityParams parse_gamma(const std::string& text) {
    auto parse_ll = [](const std::string& s) {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad gamma literal: " + s);
        return v;
    };
    ModularityParams p;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        p.gamma_num = parse_ll(text.substr(0, slash));
        p.gamma_den = parse_ll(text.substr(slash + 1));
    } else if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        p.gamma_num = parse_ll(digits);
        p.gamma_den = 1;
        for (size_t i = dot + 1; i < text.size(); ++i) p.gamma_den *= 10;
    } else {
        p.gamma_num = parse_ll(text);
        p.gamma_den = 1;
    }
    long long g = std::gcd(p.gamma_num, p.gamma_den);
    if (g > 1) {
        p.gamma_num /= g;
        p.gamma_den /= g;
    }
    p.validate();
    return p;
}

// Exact fraction with positive denominator. Comparison is exact via 128-bit
// cross multiplication; fractions are not implicitly reduced.
struct Ratio {
    long long num = 0;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    Ratio reduced() const {
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g == 0) return {0, 1};
        return {num / g, den / g};
    }

    std::string str() const {
        Ratio r = reduced();
        return std::to_string(r.num) + "/" + std::to_string(r.den);
    }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator!=(const Ratio& a, const Ratio& b) { return !(a == b); }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
    friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }
};

namespace detail {

inline void check_scale_fits(const Graph& g, const ModularityParams& p) {
    const long long m = g.edge_count();
    const __int128 scale = static_cast<__int128>(4) * m * m * p.gamma_den;
    // Room for summing n^2 entries of magnitude <= 2mq + p*dmax^2.
    const __int128 limit = static_cast<__int128>(1) << 62;
    int dmax = 0;
    for (int d : g.degrees()) dmax = std::max(dmax, d);
    const __int128 entry =
        static_cast<__int128>(2) * m * p.gamma_den + static_cast<__int128>(p.gamma_num) * dmax * dmax;
    const __int128 total = entry * g.node_count() * g.node_count();
    if (scale > limit || total > limit)
        throw std::overflow_error("graph too large for exact 64-bit modularity arithmetic");
}

}  // namespace detail

// Integer-scaled modularity entries: weight(i,j) = 2mq*a_ij - p*d_i*d_j,
// so that Q(X) = sum over ordered pairs in the same community of
// weight(i,j) / scale(), with scale() = 4*m^2*q.
class PairWeights {
public:
    PairWeights(const Graph& g, const ModularityParams& p) : graph_(&g) {
        p.validate();
        if (g.edge_count() < 1) throw std::invalid_argument("modularity needs at least one edge");
        detail::check_scale_fits(g, p);
        const long long m = g.edge_count();
        two_m_q_ = 2 * m * p.gamma_den;
        gamma_num_ = p.gamma_num;
        scale_ = 4 * m * m * p.gamma_den;
    }

    long long scale() const noexcept { return scale_; }
    const Graph& graph() const noexcept { return *graph_; }

    long long weight(int i, int j) const {
        long long a = (i != j && graph_->has_edge(i, j)) ? 1 : 0;
        return a * two_m_q_ - gamma_num_ * graph_->degree(i) * graph_->degree(j);
    }

    // Scaled Q over ordered pairs (diagonal included): for each community,
    // 2*2mq*(intra edges) - p*(degree sum)^2.
    long long partition_value(const Partition& x) const {
        if (x.size() != graph_->node_count())
            throw std::invalid_argument("partition does not cover this graph's node set");
        int top = 0;
        for (int v = 0; v < x.size(); ++v) top = std::max(top, x.label(v));
        std::vector<long long> deg_sum(top + 1, 0);
        std::vector<long long> intra(top + 1, 0);
        for (int v = 0; v < x.size(); ++v) deg_sum[x.label(v)] += graph_->degree(v);
        for (auto [u, v] : graph_->edges())
            if (x.label(u) == x.label(v)) ++intra[x.label(u)];
        long long total = 0;
        for (int c = 0; c <= top; ++c)
            total += 2 * two_m_q_ * intra[c] - gamma_num_ * deg_sum[c] * deg_sum[c];
        return total;
    }

private:
    const Graph* graph_;
    long long two_m_q_;
    long long gamma_num_;
    long long scale_;
};

// b_ij = a_ij - gamma*d_i*d_j/(2m), exact over denominator 2mq.
inline Ratio modularity_entry(const Graph& g, const ModularityParams& p, int i, int j) {
    p.validate();
    if (g.edge_count() < 1) throw std::invalid_argument("modularity needs at least one edge");
    if (i < 0 || j < 0 || i >= g.node_count() || j >= g.node_count())
        throw std::out_of_range("node index out of range");
    detail::check_scale_fits(g, p);
    const long long m = g.edge_count();
    long long a = (i != j && g.has_edge(i, j)) ? 1 : 0;
    return Ratio{a * 2 * m * p.gamma_den - p.gamma_num * g.degree(i) * g.degree(j),
                 2 * m * p.gamma_den};
}

// Q(G, X) over denominator 4*m^2*q. Value lies in [-1/2, 1] for gamma = 1.
inline Ratio modularity(const Graph& g, const Partition& x, const ModularityParams& p = {}) {
    PairWeights w(g, p);
    return Ratio{w.partition_value(x), w.scale()};
}

}  // namespace modmax
