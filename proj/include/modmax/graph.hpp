#pragma once

// Simple undirected unweighted graphs with dense node ids 0..n-1.
// Graphs are immutable after construction; all queries are const and
// safe to call concurrently.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modmax {

class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, long long line)
        : std::runtime_error("line " + std::to_string(line) + ": " + std::move(msg)),
          line_(line) {}
    long long line() const noexcept { return line_; }

private:
    long long line_;
};

// Undirected, unweighted, no self-loops, no parallel edges.
// Invariants: edges stored with u < v, sorted; sum of degrees == 2m.
class Graph {
public:
    Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
        if (n < 1) throw std::invalid_argument("graph needs at least one node");
        for (auto& [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("edge endpoint out of range");
            if (u == v) throw std::invalid_argument("self-loop not allowed");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("duplicate edge not allowed");
        edges_ = std::move(edges);
        degree_.assign(n_, 0);
        adj_.assign(n_, {});
        for (auto [u, v] : edges_) {
            ++degree_[u];
            ++degree_[v];
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    int node_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    int degree(int v) const { return degree_.at(v); }
    const std::vector<int>& degrees() const noexcept { return degree_; }
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }

    bool has_edge(int u, int v) const {
        if (u == v) return false;
        const auto& a = adj_.at(u);
        return std::binary_search(a.begin(), a.end(), v);
    }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> degree_;
    std::vector<std::vector<int>> adj_;
};

struct LoadStats {
    long long self_loops_dropped = 0;
    long long duplicate_edges_dropped = 0;
};

// A parsed edge list: the graph, the original node tokens (token of internal
// id i is node_tokens[i]), and what was silently dropped.
struct LoadedGraph {
    Graph graph;
    std::vector<std::string> node_tokens;
    LoadStats stats;
};

// Parses "u v" pairs, one per line. '#' starts a comment, blank lines are
// ignored. Tokens may be arbitrary strings; internal ids are assigned in
// first-appearance order. Self-loops and duplicate edges are dropped and
// counted in stats.
inline LoadedGraph load_edge_list(std::istream& in) {
    std::vector<std::string> tokens;
    std::map<std::string, int> id_of;
    auto intern = [&](const std::string& tok) {
        auto [it, fresh] = id_of.try_emplace(tok, static_cast<int>(tokens.size()));
        if (fresh) tokens.push_back(tok);
        return it->second;
    };

    LoadStats stats;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    long long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;  // blank or comment-only
        if (!(ls >> b) || (ls >> extra))
            throw parse_error("expected exactly two node tokens", lineno);
        int u = intern(a);
        int v = intern(b);
        if (u == v) {
            ++stats.self_loops_dropped;
            continue;
        }
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (tokens.empty()) throw parse_error("empty edge list", lineno);

    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    stats.duplicate_edges_dropped = edges.end() - last;
    edges.erase(last, edges.end());

    Graph g(static_cast<int>(tokens.size()), std::move(edges));
    return LoadedGraph{std::move(g), std::move(tokens), stats};
}

inline LoadedGraph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

// Canonical serialization: one "u v" per line with u < v, pairs in ascending
// (u, v) order, internal ids as decimal tokens. load_edge_list of the output
// reproduces the graph whenever ids already follow first-appearance order of
// the sorted edge list and no node is isolated.
inline std::string serialize_edge_list(const Graph& g) {
    std::string out;
    for (auto [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

struct ComponentResult {
    Graph graph;
    std::vector<int> old_to_new;  // -1 for nodes outside the component
    std::vector<int> new_to_old;
};

// Induced subgraph on the largest connected component, relabeled 0..n'-1 in
// ascending original id order. Ties between equal-sized components go to the
// one containing the smallest original node id.
inline ComponentResult giant_component(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> comp(n, -1);
    std::vector<int> comp_size;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        int c = static_cast<int>(comp_size.size());
        comp_size.push_back(0);
        stack.push_back(s);
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++comp_size[c];
            for (int w : g.neighbors(v)) {
                if (comp[w] == -1) {
                    comp[w] = c;
                    stack.push_back(w);
                }
            }
        }
    }
    // Components are discovered in order of their smallest node id, so the
    // first maximum realizes the tie-break.
    int best = 0;
    for (int c = 1; c < static_cast<int>(comp_size.size()); ++c)
        if (comp_size[c] > comp_size[best]) best = c;

    std::vector<int> old_to_new(n, -1), new_to_old;
    for (int v = 0; v < n; ++v) {
        if (comp[v] == best) {
            old_to_new[v] = static_cast<int>(new_to_old.size());
            new_to_old.push_back(v);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (comp[u] == best && comp[v] == best)
            edges.emplace_back(old_to_new[u], old_to_new[v]);
    Graph sub(static_cast<int>(new_to_old.size()), std::move(edges));
    return ComponentResult{std::move(sub), std::move(old_to_new), std::move(new_to_old)};
}

}  // namespace modmax
