#pragma once

// Seeded planted-partition benchmark generator ("abcdlite"): community sizes
// and degrees from truncated power laws, stubs split into intra and inter
// fractions by the mixing parameter, wired by configuration-model matching.
// It follows the LFR/ABCD parameter vocabulary but is not edge-distribution
// compatible with either; instances must be labeled abcdlite.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "modmax/graph.hpp"
#include "modmax/modularity.hpp"
#include "modmax/partition.hpp"
#include "modmax/random.hpp"

namespace modmax {

struct BenchmarkSpec {
    int n = 0;
    double tau1 = 3.0;  // degree power-law exponent
    double tau2 = 1.5;  // community-size power-law exponent
    int d_min = 1, d_max = 1;
    int k_min = 1, k_max = 1;
    double mu = 0.0;  // fraction of a node's stubs leaving its community
    unsigned long long seed = 0;

    void validate() const {
        if (n < 2) throw std::invalid_argument("benchmark spec: n must be >= 2");
        if (d_min < 1 || d_min > d_max || d_max >= n)
            throw std::invalid_argument("benchmark spec: need 1 <= d_min <= d_max < n");
        if (k_min < 1 || k_min > k_max || k_max > n)
            throw std::invalid_argument("benchmark spec: need 1 <= k_min <= k_max <= n");
        if (!(tau1 > 1.0) || !(tau2 > 1.0))
            throw std::invalid_argument("benchmark spec: power-law exponents must exceed 1");
        if (!(mu >= 0.0) || mu >= 1.0)
            throw std::invalid_argument("benchmark spec: mu must lie in [0, 1)");
    }
};

struct GenStats {
    long long intra_stubs_dropped = 0;  // stubs that could not be wired simply
    long long inter_stubs_dropped = 0;
    long long forced_inter_stubs = 0;   // intra demand beyond community size - 1
    long long repaired_isolated = 0;    // nodes given one edge after wiring
    long long realized_edges = 0;
    long long realized_inter_edges = 0;

    double realized_inter_fraction() const {
        return realized_edges == 0 ? 0.0
                                   : static_cast<double>(realized_inter_edges) / realized_edges;
    }
};

struct PlantedGraph {
    Graph graph;
    Partition planted;
    BenchmarkSpec spec;
    GenStats stats;
};

namespace detail {

// Matches stubs within one pool by repeated shuffling; pairs that would form
// self-loops or duplicates go back for another round, leftovers are dropped.
inline void wire_pool(std::vector<int> stubs, const std::vector<int>* community_of,
                      std::set<std::pair<int, int>>& edges, Rng& rng, long long& dropped) {
    for (int round = 0; round < 24 && stubs.size() >= 2; ++round) {
        shuffle(rng, stubs);
        std::vector<int> rejected;
        if (stubs.size() % 2 == 1) {
            rejected.push_back(stubs.back());
            stubs.pop_back();
        }
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || (community_of && (*community_of)[u] == (*community_of)[v])) {
                rejected.push_back(u);
                rejected.push_back(v);
                continue;
            }
            auto e = std::minmax(u, v);
            if (!edges.insert({e.first, e.second}).second) {
                rejected.push_back(u);
                rejected.push_back(v);
            }
        }
        stubs = std::move(rejected);
    }
    dropped += static_cast<long long>(stubs.size());
}

}  // namespace detail

// Deterministic for a given spec (the seed is part of it). Throws when
// community sizes cannot tile n within bounds or a wiring stage fails.
inline PlantedGraph generate(const BenchmarkSpec& spec) {
    spec.validate();
    Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);

    // Community sizes from the truncated power law until they tile n; the
    // last community is adjusted within bounds, with bounded retries.
    TruncatedPowerLaw size_law(spec.k_min, spec.k_max, spec.tau2);
    std::vector<int> sizes;
    bool tiled = false;
    for (int attempt = 0; attempt < 100 && !tiled; ++attempt) {
        sizes.clear();
        long long total = 0;
        while (total < spec.n) {
            int s = size_law.sample(rng);
            sizes.push_back(s);
            total += s;
        }
        if (total == spec.n) {
            tiled = true;
        } else {
            int excess = static_cast<int>(total - spec.n);
            int adjusted = sizes.back() - excess;
            if (adjusted >= spec.k_min && adjusted <= spec.k_max) {
                sizes.back() = adjusted;
                tiled = true;
            } else if (sizes.size() >= 2 && adjusted > 0 &&
                       sizes[sizes.size() - 2] + adjusted >= spec.k_min &&
                       sizes[sizes.size() - 2] + adjusted <= spec.k_max) {
                sizes[sizes.size() - 2] += adjusted;
                sizes.pop_back();
                tiled = true;
            }
        }
    }
    if (!tiled)
        throw std::runtime_error("benchmark generation failed: community sizes cannot tile n");

    // Nodes 0..n-1 in contiguous blocks per community.
    std::vector<int> community_of(spec.n);
    {
        int v = 0;
        for (std::size_t c = 0; c < sizes.size(); ++c)
            for (int i = 0; i < sizes[c]; ++i) community_of[v++] = static_cast<int>(c);
    }

    // Target degrees; intra demand is capped by community size - 1 and the
    // overflow is forced onto inter stubs.
    GenStats stats;
    TruncatedPowerLaw degree_law(spec.d_min, std::min(spec.d_max, spec.n - 1), spec.tau1);
    std::vector<int> degree(spec.n), intra_deg(spec.n), inter_deg(spec.n);
    for (int v = 0; v < spec.n; ++v) degree[v] = degree_law.sample(rng);
    for (int v = 0; v < spec.n; ++v) {
        double want_intra = degree[v] * (1.0 - spec.mu);
        int intra = static_cast<int>(want_intra);
        if (uniform_real(rng) < want_intra - intra) ++intra;  // randomized rounding
        int cap = sizes[community_of[v]] - 1;
        if (intra > cap) {
            stats.forced_inter_stubs += intra - cap;
            intra = cap;
        }
        intra_deg[v] = intra;
        inter_deg[v] = degree[v] - intra;
    }

    std::set<std::pair<int, int>> edge_set;
    // Intra wiring, one pool per community.
    {
        int base = 0;
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            std::vector<int> stubs;
            for (int v = base; v < base + sizes[c]; ++v)
                stubs.insert(stubs.end(), intra_deg[v], v);
            detail::wire_pool(std::move(stubs), nullptr, edge_set, rng, stats.intra_stubs_dropped);
            base += sizes[c];
        }
    }
    // Inter wiring, one global pool; same-community pairs are rejected.
    {
        std::vector<int> stubs;
        for (int v = 0; v < spec.n; ++v) stubs.insert(stubs.end(), inter_deg[v], v);
        detail::wire_pool(std::move(stubs), &community_of, edge_set, rng,
                          stats.inter_stubs_dropped);
    }

    // Keep every node attached: an isolated node gets one edge to the next
    // node (by id) that can still take one.
    std::vector<int> realized_degree(spec.n, 0);
    for (auto [u, v] : edge_set) {
        ++realized_degree[u];
        ++realized_degree[v];
    }
    for (int v = 0; v < spec.n; ++v) {
        if (realized_degree[v] > 0) continue;
        bool fixed = false;
        for (int step = 1; step < spec.n && !fixed; ++step) {
            int w = (v + step) % spec.n;
            if (realized_degree[w] >= spec.d_max) continue;
            auto e = std::minmax(v, w);
            if (edge_set.insert({e.first, e.second}).second) {
                ++realized_degree[v];
                ++realized_degree[w];
                ++stats.repaired_isolated;
                fixed = true;
            }
        }
        if (!fixed)
            throw std::runtime_error("benchmark generation failed: could not attach node " +
                                     std::to_string(v));
    }

    std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
    stats.realized_edges = static_cast<long long>(edges.size());
    for (auto [u, v] : edges)
        if (community_of[u] != community_of[v]) ++stats.realized_inter_edges;

    Graph g(spec.n, std::move(edges));
    Partition planted(community_of);
    return PlantedGraph{std::move(g), std::move(planted), spec, stats};
}

// Modularity of the planted partition; a sanity metric for generated
// instances.
inline double planted_quality(const PlantedGraph& pg, const ModularityParams& params = {}) {
    return modularity(pg.graph, pg.planted, params).value();
}

}  // namespace modmax
