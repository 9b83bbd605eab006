#pragma once

// Partial co-clustering decisions over node pairs: a disjoint-set forest of
// must-link classes plus cannot-link edges between class representatives.
// Transitive closure through the forest enforces every triangle constraint
// (same(i,j) and same(j,k) imply same(i,k)) without materializing them.
//
// merge/separate record an undo trail; rewind() restores any earlier mark.
// The type is copyable; a search that branches concurrently copies the state
// per subtree.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace modmax {

class PairDecisionState {
public:
    enum class PairStatus { same, different, undecided };

    explicit PairDecisionState(int n) : parent_(n), size_(n, 1), min_id_(n), cannot_(n) {
        if (n < 1) throw std::invalid_argument("state needs at least one node");
        for (int v = 0; v < n; ++v) {
            parent_[v] = v;
            min_id_[v] = v;
            live_.push_back(v);
        }
    }

    int node_count() const noexcept { return static_cast<int>(parent_.size()); }
    int class_count() const noexcept { return static_cast<int>(live_.size()); }

    // Live class roots in ascending root-id order.
    const std::vector<int>& roots() const noexcept { return live_; }

    int find(int v) const {
        while (parent_[v] != v) v = parent_[v];
        return v;
    }

    // Smallest node id in v's class; stable under later unions elsewhere.
    int canonical_rep(int v) const { return min_id_[find(v)]; }

    int class_size(int root) const { return size_[root]; }

    PairStatus status(int i, int j) const {
        int a = find(i), b = find(j);
        if (a == b) return PairStatus::same;
        if (linked(a, b)) return PairStatus::different;
        return PairStatus::undecided;
    }

    bool can_merge(int i, int j) const {
        int a = find(i), b = find(j);
        return a == b || !linked(a, b);
    }

    // Joins the classes of i and j. Returns false (state unchanged) if they
    // are cannot-linked. Merging an already-same pair is a no-op.
    bool merge(int i, int j) {
        int a = find(i), b = find(j);
        if (a == b) return true;
        if (linked(a, b)) return false;
        if (size_[a] > size_[b]) std::swap(a, b);  // absorb a into b
        trail_.push_back({Op::union_op, a, b, min_id_[b]});
        parent_[a] = b;
        size_[b] += size_[a];
        min_id_[b] = std::min(min_id_[b], min_id_[a]);
        live_.erase(std::lower_bound(live_.begin(), live_.end(), a));
        // Re-point a's cannot-links at b.
        for (int x : cannot_[a]) {
            erase_link(x, a);
            if (!linked(x, b)) {
                insert_link(x, b);
                insert_link(b, x);
            }
        }
        return true;
    }

    // Declares the classes of i and j distinct. Returns false (state
    // unchanged) if they are already the same class.
    bool separate(int i, int j) {
        int a = find(i), b = find(j);
        if (a == b) return false;
        if (linked(a, b)) return true;
        insert_link(a, b);
        insert_link(b, a);
        return true;
    }

    std::size_t mark() const noexcept { return trail_.size(); }

    void rewind(std::size_t mark) {
        while (trail_.size() > mark) {
            Record r = trail_.back();
            trail_.pop_back();
            switch (r.op) {
                case Op::union_op:
                    parent_[r.a] = r.a;
                    size_[r.b] -= size_[r.a];
                    min_id_[r.b] = r.aux;
                    live_.insert(std::lower_bound(live_.begin(), live_.end(), r.a), r.a);
                    break;
                case Op::link_insert:
                    erase_link_raw(r.a, r.b);
                    break;
                case Op::link_erase:
                    insert_link_raw(r.a, r.b);
                    break;
            }
        }
    }

    // Partition induced by the must-link classes (labels canonicalized).
    std::vector<int> class_assignment() const {
        std::vector<int> out(parent_.size());
        for (std::size_t v = 0; v < parent_.size(); ++v) out[v] = min_id_[find(static_cast<int>(v))];
        return out;
    }

    const std::vector<int>& cannot_links(int root) const { return cannot_[root]; }

private:
    enum class Op { union_op, link_insert, link_erase };
    struct Record {
        Op op;
        int a, b, aux;
    };

    bool linked(int a, int b) const {
        const auto& s = cannot_[a];
        return std::binary_search(s.begin(), s.end(), b);
    }

    void insert_link_raw(int a, int b) {
        auto& s = cannot_[a];
        s.insert(std::lower_bound(s.begin(), s.end(), b), b);
    }

    void insert_link(int a, int b) {
        insert_link_raw(a, b);
        trail_.push_back({Op::link_insert, a, b, 0});
    }

    void erase_link_raw(int a, int b) {
        auto& s = cannot_[a];
        s.erase(std::lower_bound(s.begin(), s.end(), b));
    }

    void erase_link(int a, int b) {
        erase_link_raw(a, b);
        trail_.push_back({Op::link_erase, a, b, 0});
    }

    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> min_id_;
    std::vector<std::vector<int>> cannot_;  // per root, sorted roots
    std::vector<int> live_;                 // sorted live roots
    std::vector<Record> trail_;
};

}  // namespace modmax
