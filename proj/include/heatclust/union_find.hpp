#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace heatclust {

// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    bool connected(std::size_t a, std::size_t b) { return find(a) == find(b); }

    // Component ids numbered 1..k in order of each component's smallest member.
    std::vector<int> component_labels() {
        std::vector<int> labels(parent_.size(), 0);
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            const std::size_t root = find(i);
            if (labels[root] == 0) labels[root] = ++next;
            labels[i] = labels[root];
        }
        return labels;
    }

    std::size_t component_count() {
        std::size_t count = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            if (find(i) == i) ++count;
        return count;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace heatclust
