#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qheap/key.hpp"

namespace qheap {

/// The 2010 QuickHeap layout: buckets and pivots interleaved in one circular
/// buffer, with a side stack of pivot positions.
///
/// Positions are logical (monotonically increasing) and map into the ring
/// modulo its power-of-two capacity, so growing the ring never invalidates
/// them. Smallest keys sit at head_, larger ones toward tail_. Pivot
/// positions are kept oldest-first, which is also largest-first.
template <Key K>
class original_quickheap {
   public:
    using value_type = K;

    explicit original_quickheap(std::uint64_t seed = 0x5eed) : rng_(seed), ring_(16) {}

    /// Appends at the tail, then lets the hole sink below every pivot that is
    /// greater than x. Crossing a pivot moves two keys: the first key above
    /// the pivot into the hole, and the pivot one slot up.
    void push(K x) {
        if (tail_ - head_ == ring_.size()) {
            grow();
        }
        std::uint64_t hole = tail_++;
        for (auto& pos : pivot_pos_) {
            ++comparisons_;
            if (!(x < at(pos))) break;
            if (pos + 1 != hole) {
                at(hole) = at(pos + 1);
            }
            at(pos + 1) = at(pos);
            hole = pos;
            ++pos;
        }
        at(hole) = x;
    }

    std::optional<K> pop() {
        if (empty()) {
            return std::nullopt;
        }
        settle();
        K const x = at(head_);
        ++head_;
        pivot_pos_.pop_back();
        return x;
    }

    /// Leaves the minimum at head_ as a pivot; contents are unchanged.
    std::optional<K> top() {
        if (empty()) {
            return std::nullopt;
        }
        settle();
        return at(head_);
    }

    std::size_t size() const noexcept { return static_cast<std::size_t>(tail_ - head_); }
    bool empty() const noexcept { return tail_ == head_; }
    std::uint64_t comparison_count() const noexcept { return comparisons_; }
    std::size_t pivot_count() const noexcept { return pivot_pos_.size(); }
    std::size_t capacity() const noexcept { return ring_.size(); }

    std::optional<std::string> check_invariants() const {
        std::ostringstream why;
        std::uint64_t upper = tail_;
        bool has_upper_value = false;
        K upper_value{};
        for (std::size_t k = 0; k < pivot_pos_.size(); ++k) {
            std::uint64_t const pos = pivot_pos_[k];
            if (pos < head_ || pos >= upper) {
                why << "pivot " << k << " at " << pos << " outside [" << head_ << ", " << upper
                    << ")";
                return why.str();
            }
            K const v = at(pos);
            if (has_upper_value && upper_value < v) {
                why << "pivot " << k << " (" << v << ") above older pivot " << upper_value;
                return why.str();
            }
            for (std::uint64_t j = pos + 1; j < upper; ++j) {
                if (at(j) < v || (has_upper_value && upper_value < at(j))) {
                    why << "key " << at(j) << " at " << j << " outside its pivot range";
                    return why.str();
                }
            }
            upper = pos;
            upper_value = v;
            has_upper_value = true;
        }
        for (std::uint64_t j = head_; j < upper; ++j) {
            if (has_upper_value && upper_value < at(j)) {
                why << "key " << at(j) << " at " << j << " above the lowest pivot";
                return why.str();
            }
        }
        return std::nullopt;
    }

   private:
    K& at(std::uint64_t pos) { return ring_[pos & (ring_.size() - 1)]; }
    K const& at(std::uint64_t pos) const { return ring_[pos & (ring_.size() - 1)]; }

    void grow() {
        std::vector<K> bigger(ring_.size() * 2);
        std::uint64_t const mask = bigger.size() - 1;
        for (std::uint64_t pos = head_; pos != tail_; ++pos) {
            bigger[pos & mask] = at(pos);
        }
        ring_ = std::move(bigger);
    }

    // Partition the lowest region until a pivot sits at head_.
    void settle() {
        while (pivot_pos_.empty() || pivot_pos_.back() != head_) {
            std::uint64_t const lo = head_;
            std::uint64_t const hi = pivot_pos_.empty() ? tail_ : pivot_pos_.back();
            std::uint64_t const pick = lo + uniform_below(rng_, hi - lo);
            pivot_pos_.push_back(partition(lo, hi, pick));
        }
    }

    // In-place split of [lo, hi) around the key at `pick`, using the same
    // rule as the bucketed heap: keys originally left of the pivot go low
    // when strictly smaller, keys right of it when smaller or equal.
    // Returns the pivot's final position.
    std::uint64_t partition(std::uint64_t lo, std::uint64_t hi, std::uint64_t pick) {
        std::swap(at(lo), at(pick));
        K const pivot = at(lo);
        std::uint64_t low_end = lo + 1;
        for (std::uint64_t j = lo + 1; j < hi; ++j) {
            K const e = at(j);
            ++comparisons_;
            // The key now at `pick` came from lo, i.e. left of the pivot.
            bool const goes_low = (j <= pick) ? (e < pivot) : !(pivot < e);
            if (goes_low) {
                std::swap(at(low_end), at(j));
                ++low_end;
            }
        }
        std::swap(at(lo), at(low_end - 1));
        return low_end - 1;
    }

    rng_type rng_;
    std::vector<K> ring_;
    std::uint64_t head_ = 0;
    std::uint64_t tail_ = 0;
    std::vector<std::uint64_t> pivot_pos_;
    std::uint64_t comparisons_ = 0;
};

}  // namespace qheap
