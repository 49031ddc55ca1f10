#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>

#include "qheap/key.hpp"

// Scalar reference kernels. Bucket indices are 0-based here: bucket 0 is
// the top (largest) bucket and bucket pivots.size() is the bottom one.
namespace qheap::kernels {

// Index of the first pivot <= x, or pivots.size() when there is none.
// Pivots are non-increasing. One counted comparison per probed pivot.
template <Key K>
std::size_t classify_linear(std::span<K const> pivots, K x, std::uint64_t& comparisons) {
    std::size_t i = 0;
    while (i < pivots.size() && pivots[i] > x) {
        ++i;
    }
    comparisons += std::min(i + 1, pivots.size());
    return i;
}

template <Key K>
std::size_t classify_binary(std::span<K const> pivots, K x, std::uint64_t& comparisons) {
    auto it = std::partition_point(pivots.begin(), pivots.end(), [&](K p) {
        ++comparisons;
        return p > x;
    });
    return static_cast<std::size_t>(it - pivots.begin());
}

struct partition_result {
    std::size_t retained;
    std::size_t moved;
};

// Splits data around data[pivot_pos]: elements left of the pivot move out
// when strictly smaller, elements right of it when smaller or equal. Moved
// elements are written to moved_out (room for data.size() keys); the rest are
// compacted to the front of data in their original order, pivot included.
// Charges one comparison per element of data.
template <Key K>
partition_result partition_scalar(std::span<K> data, std::size_t pivot_pos, K* moved_out,
                                  std::uint64_t& comparisons) {
    assert(pivot_pos < data.size());
    K const pivot = data[pivot_pos];
    std::size_t kept = 0;
    std::size_t moved = 0;
    for (std::size_t j = 0; j < pivot_pos; ++j) {
        K const e = data[j];
        if (e < pivot) {
            moved_out[moved++] = e;
        } else {
            data[kept++] = e;
        }
    }
    data[kept++] = pivot;
    for (std::size_t j = pivot_pos + 1; j < data.size(); ++j) {
        K const e = data[j];
        if (e <= pivot) {
            moved_out[moved++] = e;
        } else {
            data[kept++] = e;
        }
    }
    comparisons += data.size();
    return {kept, moved};
}

}  // namespace qheap::kernels
