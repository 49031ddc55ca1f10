#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qheap/binary_heap.hpp"
#include "qheap/config.hpp"
#include "qheap/dispatch.hpp"
#include "qheap/error.hpp"
#include "qheap/original_quickheap.hpp"
#include "qheap/quickheap.hpp"

namespace qheap {

template <typename Q>
concept priority_queue = requires(Q q, typename Q::value_type x) {
    requires Key<typename Q::value_type>;
    q.push(x);
    { q.pop() } -> std::same_as<std::optional<typename Q::value_type>>;
    { q.top() } -> std::same_as<std::optional<typename Q::value_type>>;
    { q.size() } -> std::convertible_to<std::size_t>;
    { q.comparison_count() } -> std::convertible_to<std::uint64_t>;
};

inline constexpr std::array<std::string_view, 4> queue_names = {
    "binary-heap", "original-quickheap", "scalar-quickheap", "simd-quickheap"};

inline bool is_queue_name(std::string_view name) {
    for (auto n : queue_names) {
        if (n == name) return true;
    }
    return false;
}

inline std::string queue_names_list() {
    std::string out;
    for (auto n : queue_names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

struct queue_options {
    quickheap_config config;
    // Kernel level for simd-quickheap; nullopt means detect (honoring
    // QHEAP_KERNEL).
    std::optional<kernel_level> kernel;
};

// Builds a fresh, empty queue of the named kind and hands it to f. All
// branches must yield the same result type.
template <Key K, typename F>
decltype(auto) with_queue(std::string_view name, queue_options const& options, F&& f) {
    if (name == "binary-heap") {
        binary_heap<K> q;
        return f(q);
    }
    if (name == "original-quickheap") {
        original_quickheap<K> q(options.config.seed);
        return f(q);
    }
    if (name == "scalar-quickheap") {
        scalar_quickheap<K> q(options.config);
        return f(q);
    }
    if (name == "simd-quickheap") {
        simd_quickheap<K> q(options.config, detect_capabilities(options.kernel).selected);
        return f(q);
    }
    throw error(errc::unknown_name,
                "queue '" + std::string(name) + "' (valid: " + queue_names_list() + ")");
}

}  // namespace qheap
