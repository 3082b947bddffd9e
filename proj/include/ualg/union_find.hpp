#pragma once

#include <numeric>
#include <vector>

namespace ualg {

// Plain union-find with path halving.  Merge order does not affect the final
// partition, only the choice of internal roots.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns true when two classes were actually merged.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

    bool same(int a, int b) { return find(a) == find(b); }

    std::vector<int> roots() {
        std::vector<int> r(parent_.size());
        for (std::size_t i = 0; i < parent_.size(); ++i) r[i] = find(static_cast<int>(i));
        return r;
    }

private:
    std::vector<int> parent_;
};

}  // namespace ualg
