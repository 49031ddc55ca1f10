#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qheap/config.hpp"
#include "qheap/dispatch.hpp"
#include "qheap/key.hpp"

namespace qheap {

/// Partition-based priority queue. Pivots live in one non-increasing array;
/// the elements between two consecutive pivots live in their own bucket.
///
/// Buckets are indexed top (0, largest keys) to bottom (pivots().size(),
/// smallest keys). Only the bottom bucket is ever partitioned. A pushed key
/// is classified against the pivot array and appended to its bucket; ties
/// with a pivot go to the bucket above it.
///
/// Every key-to-key comparison is charged to comparison_count(), identically
/// for every kernel level.
template <Key K>
class quickheap {
   public:
    using value_type = K;

    /// Uses the widest kernel set the host supports (or QHEAP_KERNEL).
    explicit quickheap(quickheap_config config = {})
        : quickheap(config, detect_capabilities().selected) {}

    quickheap(quickheap_config config, kernel_level level)
        : config_(config), level_(level), rng_(config.seed) {
        config_.validate();
        if (level_ > detect_hardware()) {
            throw error(errc::capability_unavailable,
                        std::string(to_string(level_)) + " kernels not supported on this host");
        }
        buckets_.emplace_back();
    }

    void push(K x) {
        std::size_t const i = classify(x);
        auto& target = buckets_[i];
        if (bottom_sorted_ && i + 1 == buckets_.size()) {
            insert_sorted(target, x);
            if (target.size() >= config_.small_bucket_threshold) {
                bottom_sorted_ = false;
            }
        } else {
            target.push_back(x);
        }
        ++size_;
    }

    std::optional<K> pop() {
        if (size_ == 0) {
            return std::nullopt;
        }
        if (!bottom_sorted_) {
            settle_bottom();
        }
        auto& bottom = buckets_.back();
        K const x = bottom.back();
        bottom.pop_back();
        --size_;
        if (bottom.empty()) {
            if (buckets_.size() > 1) {
                buckets_.pop_back();
                pivots_.pop_back();
            }
            bottom_sorted_ = false;
        }
        return x;
    }

    std::optional<K> top() {
        if (size_ == 0) {
            return std::nullopt;
        }
        auto const& bottom = buckets_.back();
        if (bottom_sorted_) {
            return bottom.back();
        }
        K best = bottom.front();
        for (std::size_t j = 1; j < bottom.size(); ++j) {
            ++comparisons_;
            if (bottom[j] < best) best = bottom[j];
        }
        return best;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    std::uint64_t comparison_count() const noexcept { return comparisons_; }

    /// 0-based bucket for x: the number of leading pivots greater than x.
    std::size_t classify(K x) {
        std::span<K const> const pivots(pivots_);
        if (config_.classify == classify_mode::linear &&
            pivots.size() <= config_.linear_scan_threshold) {
            return kernels::classify_linear<K>(level_, pivots, x, comparisons_);
        }
        return kernels::classify_binary<K>(pivots, x, comparisons_);
    }

    /// Position of the pivot to split `elements` around, per the configured
    /// strategy. Consumes randomness from the heap's generator.
    std::size_t select_pivot(std::span<K const> elements) {
        assert(!elements.empty());
        std::size_t const m = elements.size();
        switch (config_.pivot) {
            case pivot_strategy::random:
                return draw(m);
            case pivot_strategy::median_of_3: {
                if (m < 3) return draw(m);
                std::size_t a = draw(m);
                std::size_t b = draw(m);
                std::size_t c = draw(m);
                ++comparisons_;
                if (elements[b] < elements[a]) std::swap(a, b);
                ++comparisons_;
                if (elements[c] < elements[b]) {
                    std::swap(b, c);
                    ++comparisons_;
                    if (elements[b] < elements[a]) std::swap(a, b);
                }
                return b;
            }
            case pivot_strategy::exact_median_oracle:
                return median_position(elements);
        }
        return 0;
    }

    quickheap_config const& config() const noexcept { return config_; }
    kernel_level kernel() const noexcept { return level_; }
    std::span<K const> pivots() const noexcept { return pivots_; }
    std::vector<bucket<K>> const& buckets() const noexcept { return buckets_; }
    std::size_t bucket_count() const noexcept { return buckets_.size(); }
    bool bottom_sorted() const noexcept { return bottom_sorted_; }

    /// Full O(n) structural check. Returns a description of the first
    /// violated invariant, or nullopt.
    std::optional<std::string> check_invariants() const {
        std::ostringstream why;
        if (buckets_.empty()) return "no buckets";
        if (pivots_.size() + 1 != buckets_.size()) {
            why << "pivot count " << pivots_.size() << " != bucket count " << buckets_.size()
                << " - 1";
            return why.str();
        }
        for (std::size_t i = 1; i < pivots_.size(); ++i) {
            if (pivots_[i - 1] < pivots_[i]) {
                why << "pivots increase at " << i;
                return why.str();
            }
        }
        std::size_t total = 0;
        for (std::size_t i = 0; i < buckets_.size(); ++i) {
            auto const& b = buckets_[i];
            total += b.size();
            if (b.empty() && buckets_.size() > 1) {
                why << "bucket " << i << " empty in a heap of " << buckets_.size() << " buckets";
                return why.str();
            }
            for (K e : b) {
                if (i > 0 && pivots_[i - 1] < e) {
                    why << "bucket " << i << " holds " << e << " above pivot " << pivots_[i - 1];
                    return why.str();
                }
                if (i < pivots_.size() && e < pivots_[i]) {
                    why << "bucket " << i << " holds " << e << " below pivot " << pivots_[i];
                    return why.str();
                }
            }
        }
        if (total != size_) {
            why << "size " << size_ << " != stored " << total;
            return why.str();
        }
        if (bottom_sorted_) {
            auto const& bottom = buckets_.back();
            if (!std::is_sorted(bottom.begin(), bottom.end(), std::greater<>{})) {
                return "bottom bucket flagged sorted but is not descending";
            }
            if (bottom.size() >= config_.small_bucket_threshold) {
                return "bottom bucket flagged sorted but reached the threshold";
            }
        }
        return std::nullopt;
    }

   private:
    std::size_t draw(std::size_t m) {
        return static_cast<std::size_t>(uniform_below(rng_, m));
    }

    // Insert into a descending bucket, scanning up from the minimum.
    void insert_sorted(bucket<K>& b, K x) {
        std::size_t j = b.size();
        while (j > 0) {
            ++comparisons_;
            if (!(b[j - 1] < x)) break;
            --j;
        }
        b.insert(b.begin() + static_cast<std::ptrdiff_t>(j), x);
    }

    // Chooses among equal keys so that exactly floor(m/2) elements move,
    // i.e. the split a true median pivot produces under the tie rule.
    // Oracle work is not charged.
    std::size_t median_position(std::span<K const> elements) {
        std::size_t const m = elements.size();
        std::size_t const k = m / 2;
        scratch_.assign(elements.begin(), elements.end());
        std::nth_element(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(k),
                         scratch_.end());
        K const median = scratch_[k];
        std::size_t less = 0;
        std::size_t equal = 0;
        for (K e : elements) {
            less += e < median;
            equal += e == median;
        }
        std::size_t occurrence = less + equal - k;  // 1-based among equal keys
        for (std::size_t j = 0; j < m; ++j) {
            if (elements[j] == median && --occurrence == 0) return j;
        }
        return 0;
    }

    // Split the bottom bucket until it is small, then sort it descending.
    void settle_bottom() {
        std::size_t const slack = lane_width(level_, 8 * sizeof(K));
        while (buckets_.back().size() >= config_.small_bucket_threshold) {
            auto& b = buckets_.back();
            std::size_t const pos = select_pivot(b);
            K const pivot = b[pos];
            bucket<K> moved;
            moved.resize(b.size() + slack);
            auto const r = kernels::partition<K>(level_, std::span<K>(b), pos, moved.data(),
                                                 comparisons_);
            b.resize(r.retained);
            if (r.moved > 0) {
                moved.resize(r.moved);
                buckets_.push_back(std::move(moved));
                pivots_.push_back(pivot);
            }
        }
        auto& bottom = buckets_.back();
        std::sort(bottom.begin(), bottom.end(), [this](K a, K b) {
            ++comparisons_;
            return a > b;
        });
        bottom_sorted_ = true;
    }

    quickheap_config config_;
    kernel_level level_;
    rng_type rng_;
    std::vector<K> pivots_;
    std::vector<bucket<K>> buckets_;
    std::vector<K> scratch_;
    std::size_t size_ = 0;
    bool bottom_sorted_ = false;
    std::uint64_t comparisons_ = 0;
};

/// The lane-parallel heap: kernels chosen from host capabilities.
template <Key K>
using simd_quickheap = quickheap<K>;

/// Same structure pinned to the scalar kernels.
template <Key K>
class scalar_quickheap : public quickheap<K> {
   public:
    explicit scalar_quickheap(quickheap_config config = {})
        : quickheap<K>(config, kernel_level::scalar) {}
};

}  // namespace qheap
