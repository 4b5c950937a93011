#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace perc {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), n_sets_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t i) {
        std::size_t root = i;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[i] != root) {
            std::size_t next = parent_[i];
            parent_[i] = root;
            i = next;
        }
        return root;
    }

    void unite(std::size_t a, std::size_t b) {
        std::size_t ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        --n_sets_;
    }

    std::size_t set_count() const { return n_sets_; }
    std::size_t set_size(std::size_t i) { return size_[find(i)]; }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t n_sets_;
};

} // namespace perc
