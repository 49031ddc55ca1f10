#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qheap/error.hpp"

namespace qheap {

enum class pivot_strategy { random, median_of_3, exact_median_oracle };

enum class classify_mode { linear, binary };

struct quickheap_config {
    // Above this many pivots classification uses binary search even in
    // linear mode.
    std::size_t linear_scan_threshold = 256;
    // Buckets shorter than this are not partitioned further.
    std::size_t small_bucket_threshold = 16;
    pivot_strategy pivot = pivot_strategy::median_of_3;
    classify_mode classify = classify_mode::linear;
    std::uint64_t seed = 0x5eed;

    void validate() const {
        if (small_bucket_threshold < 2) {
            throw error(errc::invalid_config, "small_bucket_threshold must be >= 2");
        }
        if (linear_scan_threshold < 1) {
            throw error(errc::invalid_config, "linear_scan_threshold must be >= 1");
        }
    }
};

constexpr std::string_view to_string(pivot_strategy s) noexcept {
    switch (s) {
        case pivot_strategy::random: return "random";
        case pivot_strategy::median_of_3: return "median3";
        case pivot_strategy::exact_median_oracle: return "oracle-median";
    }
    return "?";
}

constexpr std::string_view to_string(classify_mode m) noexcept {
    return m == classify_mode::linear ? "linear" : "binary";
}

inline std::optional<pivot_strategy> parse_pivot_strategy(std::string_view s) {
    if (s == "random") return pivot_strategy::random;
    if (s == "median3" || s == "median-of-3") return pivot_strategy::median_of_3;
    if (s == "oracle-median" || s == "oracle") return pivot_strategy::exact_median_oracle;
    return std::nullopt;
}

inline std::optional<classify_mode> parse_classify_mode(std::string_view s) {
    if (s == "linear" || s == "L") return classify_mode::linear;
    if (s == "binary" || s == "B") return classify_mode::binary;
    return std::nullopt;
}

}  // namespace qheap
