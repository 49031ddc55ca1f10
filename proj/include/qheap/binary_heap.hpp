#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qheap/key.hpp"

namespace qheap {

// Implicit min-heap in Eytzinger layout (node i has children 2i and 2i+1,
// 1-based; slot 0 is unused). Counts every key comparison.
//
// pop() moves the hole from the root to a leaf along the smaller-child path
// (one comparison per level) and then sifts the former last element up from
// there, which on typical inputs needs only a few comparisons.
template <Key K>
class binary_heap {
   public:
    using value_type = K;

    binary_heap() : data_(1) {}

    void push(K x) {
        data_.push_back(x);
        sift_up(data_.size() - 1, x);
    }

    std::optional<K> pop() {
        if (empty()) {
            return std::nullopt;
        }
        K const result = data_[1];
        K const last = data_.back();
        data_.pop_back();
        std::size_t const n = size();
        if (n == 0) {
            return result;
        }
        std::size_t hole = 1;
        std::size_t child = 2;
        while (child < n) {
            ++comparisons_;
            if (data_[child + 1] < data_[child]) ++child;
            data_[hole] = data_[child];
            hole = child;
            child = 2 * hole;
        }
        if (child == n) {
            data_[hole] = data_[child];
            hole = child;
        }
        sift_up(hole, last);
        return result;
    }

    std::optional<K> top() const {
        if (empty()) return std::nullopt;
        return data_[1];
    }

    std::size_t size() const noexcept { return data_.size() - 1; }
    bool empty() const noexcept { return data_.size() == 1; }
    std::uint64_t comparison_count() const noexcept { return comparisons_; }

    std::optional<std::string> check_invariants() const {
        for (std::size_t i = 2; i < data_.size(); ++i) {
            if (data_[i] < data_[i / 2]) {
                std::ostringstream why;
                why << "node " << i << " (" << data_[i] << ") below parent " << data_[i / 2];
                return why.str();
            }
        }
        return std::nullopt;
    }

   private:
    void sift_up(std::size_t hole, K x) {
        while (hole > 1) {
            std::size_t const parent = hole / 2;
            ++comparisons_;
            if (!(x < data_[parent])) break;
            data_[hole] = data_[parent];
            hole = parent;
        }
        data_[hole] = x;
    }

    std::vector<K> data_;
    std::uint64_t comparisons_ = 0;
};

}  // namespace qheap
