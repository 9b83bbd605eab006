#pragma once

// Node-to-community assignments. Immutable value type; canonical form labels
// communities 0..k-1 in first-node-occurrence order.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace modmax {

class Partition {
public:
    explicit Partition(std::vector<int> assignment) : assign_(std::move(assignment)) {
        if (assign_.empty()) throw std::invalid_argument("partition of empty node set");
        for (int label : assign_)
            if (label < 0) throw std::invalid_argument("negative community label");
        std::vector<int> seen;
        for (int label : assign_)
            if (std::find(seen.begin(), seen.end(), label) == seen.end()) seen.push_back(label);
        k_ = static_cast<int>(seen.size());
    }

    static Partition singletons(int n) {
        std::vector<int> a(n);
        for (int i = 0; i < n; ++i) a[i] = i;
        return Partition(std::move(a));
    }

    static Partition all_in_one(int n) { return Partition(std::vector<int>(n, 0)); }

    // Groups must cover 0..n-1 exactly once; group order fixes the labels.
    static Partition from_groups(int n, const std::vector<std::vector<int>>& groups) {
        std::vector<int> a(n, -1);
        for (int c = 0; c < static_cast<int>(groups.size()); ++c) {
            for (int v : groups[c]) {
                if (v < 0 || v >= n) throw std::invalid_argument("group member out of range");
                if (a[v] != -1) throw std::invalid_argument("node in two groups");
                a[v] = c;
            }
        }
        for (int v = 0; v < n; ++v)
            if (a[v] == -1) throw std::invalid_argument("node " + std::to_string(v) + " unassigned");
        return Partition(std::move(a));
    }

    int size() const noexcept { return static_cast<int>(assign_.size()); }
    int community_count() const noexcept { return k_; }
    int label(int v) const { return assign_.at(v); }
    const std::vector<int>& assignment() const noexcept { return assign_; }

    // Realizes the Kronecker delta of the modularity sum.
    bool same_community(int i, int j) const { return assign_.at(i) == assign_.at(j); }

    std::vector<std::vector<int>> groups() const {
        int top = *std::max_element(assign_.begin(), assign_.end());
        std::vector<std::vector<int>> gs(top + 1);
        for (int v = 0; v < size(); ++v) gs[assign_[v]].push_back(v);
        gs.erase(std::remove_if(gs.begin(), gs.end(),
                                [](const std::vector<int>& g) { return g.empty(); }),
                 gs.end());
        return gs;
    }

    // Relabels to 0..k-1 by first node occurrence. Idempotent; the
    // same_community relation is unchanged.
    Partition canonical() const {
        std::vector<int> remap(1 + *std::max_element(assign_.begin(), assign_.end()), -1);
        std::vector<int> out(assign_.size());
        int next = 0;
        for (size_t v = 0; v < assign_.size(); ++v) {
            int& slot = remap[assign_[v]];
            if (slot == -1) slot = next++;
            out[v] = slot;
        }
        return Partition(std::move(out));
    }

    bool is_canonical() const { return assign_ == canonical().assign_; }

    bool operator==(const Partition& other) const { return assign_ == other.assign_; }
    bool operator!=(const Partition& other) const { return !(*this == other); }
    bool operator<(const Partition& other) const { return assign_ < other.assign_; }

private:
    std::vector<int> assign_;
    int k_;
};

inline Partition canonicalize(const Partition& x) { return x.canonical(); }

}  // namespace modmax
