#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qheap/error.hpp"
#include "qheap/kernels/scalar.hpp"
#include "qheap/kernels/x86.hpp"

namespace qheap {

// Ordered by width so levels compare by capability.
enum class kernel_level { scalar = 0, wide256 = 1, wide512 = 2 };

inline constexpr char const* kernel_env_var = "QHEAP_KERNEL";

constexpr std::string_view to_string(kernel_level level) noexcept {
    switch (level) {
        case kernel_level::scalar: return "scalar";
        case kernel_level::wide256: return "wide-256";
        case kernel_level::wide512: return "wide-512";
    }
    return "?";
}

inline std::optional<kernel_level> parse_kernel_level(std::string_view name) {
    if (name == "scalar") return kernel_level::scalar;
    if (name == "wide-256" || name == "avx2") return kernel_level::wide256;
    if (name == "wide-512" || name == "avx512") return kernel_level::wide512;
    return std::nullopt;
}

// Keys per vectorized step; 1 for the scalar kernels.
constexpr std::size_t lane_width(kernel_level level, std::size_t key_bits) noexcept {
    switch (level) {
        case kernel_level::scalar: return 1;
        case kernel_level::wide256: return 256 / key_bits;
        case kernel_level::wide512: return 512 / key_bits;
    }
    return 1;
}

inline kernel_level detect_hardware() noexcept {
#if QHEAP_HAVE_X86_KERNELS
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx512f") && __builtin_cpu_supports("popcnt")) {
        return kernel_level::wide512;
    }
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt")) {
        return kernel_level::wide256;
    }
#endif
    return kernel_level::scalar;
}

struct kernel_dispatch {
    kernel_level detected = kernel_level::scalar;
    kernel_level selected = kernel_level::scalar;
    bool forced = false;
};

// Widest supported level unless `forced` (or, failing that, the
// QHEAP_KERNEL environment variable) names a lower one.
inline kernel_dispatch detect_capabilities(std::optional<kernel_level> forced = std::nullopt) {
    kernel_dispatch d;
    d.detected = detect_hardware();
    d.selected = d.detected;
    if (!forced) {
        if (char const* env = std::getenv(kernel_env_var); env != nullptr && *env != '\0') {
            forced = parse_kernel_level(env);
            if (!forced) {
                throw error(errc::unknown_name, std::string(kernel_env_var) + "=" + env +
                                                    " (valid: scalar, wide-256, wide-512)");
            }
        }
    }
    if (forced) {
        if (*forced > d.detected) {
            throw error(errc::capability_unavailable,
                        std::string(to_string(*forced)) + " requested but host supports only " +
                            std::string(to_string(d.detected)));
        }
        d.selected = *forced;
        d.forced = true;
    }
    return d;
}

namespace kernels {

template <Key K>
std::size_t classify_linear(kernel_level level, std::span<K const> pivots, K x,
                            std::uint64_t& comparisons) {
#if QHEAP_HAVE_X86_KERNELS
    switch (level) {
        case kernel_level::wide512: return x86::classify_avx512<K>(pivots, x, comparisons);
        case kernel_level::wide256: return x86::classify_avx2<K>(pivots, x, comparisons);
        case kernel_level::scalar: break;
    }
#endif
    (void)level;
    return classify_linear<K>(pivots, x, comparisons);
}

// moved_out needs room for data.size() + lane_width(level) keys; wide
// kernels store whole registers.
template <Key K>
partition_result partition(kernel_level level, std::span<K> data, std::size_t pivot_pos,
                           K* moved_out, std::uint64_t& comparisons) {
#if QHEAP_HAVE_X86_KERNELS
    switch (level) {
        case kernel_level::wide512:
            return x86::partition_avx512<K>(data, pivot_pos, moved_out, comparisons);
        case kernel_level::wide256:
            return x86::partition_avx2<K>(data, pivot_pos, moved_out, comparisons);
        case kernel_level::scalar: break;
    }
#endif
    (void)level;
    return partition_scalar<K>(data, pivot_pos, moved_out, comparisons);
}

}  // namespace kernels

}  // namespace qheap
