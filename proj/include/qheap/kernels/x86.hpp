#pragma once

// Lane-parallel classify/partition kernels for x86-64. Each kernel carries
// its own target attribute, so the translation unit needs no -m flags and
// the caller must only invoke a kernel after checking CPU support.

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define QHEAP_HAVE_X86_KERNELS 1

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <type_traits>

#include "qheap/kernels/scalar.hpp"
#include "qheap/key.hpp"

#define QHEAP_TARGET_AVX2 __attribute__((target("avx2,popcnt")))
#define QHEAP_TARGET_AVX512 __attribute__((target("avx512f,popcnt")))

namespace qheap::kernels::x86 {

namespace detail {

// For every 8-bit lane mask, the byte indices of the set lanes packed to the
// front. Feeds _mm256_permutevar8x32_epi32.
constexpr std::array<std::uint64_t, 256> make_compress_table() {
    std::array<std::uint64_t, 256> table{};
    for (unsigned mask = 0; mask < 256; ++mask) {
        std::uint64_t packed = 0;
        unsigned out = 0;
        for (unsigned lane = 0; lane < 8; ++lane) {
            if (mask & (1u << lane)) {
                packed |= static_cast<std::uint64_t>(lane) << (8 * out++);
            }
        }
        table[mask] = packed;
    }
    return table;
}

inline constexpr std::array<std::uint64_t, 256> compress_table = make_compress_table();

// 64-bit lane mask (4 bits) -> the equivalent 32-bit lane mask (8 bits).
constexpr std::array<std::uint8_t, 16> make_widen_table() {
    std::array<std::uint8_t, 16> table{};
    for (unsigned mask = 0; mask < 16; ++mask) {
        unsigned wide = 0;
        for (unsigned lane = 0; lane < 4; ++lane) {
            if (mask & (1u << lane)) wide |= 3u << (2 * lane);
        }
        table[mask] = static_cast<std::uint8_t>(wide);
    }
    return table;
}

inline constexpr std::array<std::uint8_t, 16> widen_table = make_widen_table();

template <Key K>
constexpr K sign_bias() {
    if constexpr (std::is_signed_v<K>) {
        return K{0};
    } else {
        return static_cast<K>(K{1} << (8 * sizeof(K) - 1));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// AVX2 (256-bit)

template <Key K>
struct avx2 {
    static constexpr std::size_t lanes = 32 / sizeof(K);
    static constexpr unsigned full = (1u << lanes) - 1u;

    QHEAP_TARGET_AVX2 static __m256i load(K const* p) {
        return _mm256_loadu_si256(reinterpret_cast<__m256i const*>(p));
    }

    QHEAP_TARGET_AVX2 static void store(K* p, __m256i v) {
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
    }

    QHEAP_TARGET_AVX2 static __m256i broadcast(K x) {
        if constexpr (sizeof(K) == 4) {
            return _mm256_set1_epi32(static_cast<std::int32_t>(x));
        } else {
            return _mm256_set1_epi64x(static_cast<std::int64_t>(x));
        }
    }

    // AVX2 only has signed compares; unsigned keys are flipped into signed
    // order by toggling the top bit.
    QHEAP_TARGET_AVX2 static __m256i to_signed(__m256i v) {
        if constexpr (std::is_signed_v<K>) {
            return v;
        } else {
            return _mm256_xor_si256(v, broadcast(detail::sign_bias<K>()));
        }
    }

    // Lane mask of a > b (both already in signed order).
    QHEAP_TARGET_AVX2 static unsigned greater(__m256i a, __m256i b) {
        if constexpr (sizeof(K) == 4) {
            return static_cast<unsigned>(
                _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(a, b))));
        } else {
            return static_cast<unsigned>(
                _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(a, b))));
        }
    }

    QHEAP_TARGET_AVX2 static __m256i compress(__m256i v, unsigned mask) {
        if constexpr (sizeof(K) == 8) {
            mask = detail::widen_table[mask];
        }
        __m128i const bytes =
            _mm_cvtsi64_si128(static_cast<std::int64_t>(detail::compress_table[mask]));
        return _mm256_permutevar8x32_epi32(v, _mm256_cvtepu8_epi32(bytes));
    }
};

template <Key K>
QHEAP_TARGET_AVX2 std::size_t classify_avx2(std::span<K const> pivots, K x,
                                            std::uint64_t& comparisons) {
    using ops = avx2<K>;
    constexpr std::size_t lanes = ops::lanes;
    std::size_t const count = pivots.size();
    __m256i const key = ops::to_signed(ops::broadcast(x));
    std::size_t i = 0;
    for (; i + lanes <= count; i += lanes) {
        unsigned const at_most = ~ops::greater(ops::to_signed(ops::load(pivots.data() + i)), key) & ops::full;
        if (at_most != 0) {
            std::size_t const idx = i + static_cast<std::size_t>(std::countr_zero(at_most));
            comparisons += idx + 1;
            return idx;
        }
    }
    if (i < count) {
        // Pad the tail with the minimum key, which compares <= every x.
        alignas(32) K block[lanes];
        std::fill(block, block + lanes, std::numeric_limits<K>::min());
        std::copy(pivots.begin() + static_cast<std::ptrdiff_t>(i), pivots.end(), block);
        unsigned const at_most = ~ops::greater(ops::to_signed(ops::load(block)), key) & ops::full;
        std::size_t const idx =
            std::min(i + static_cast<std::size_t>(std::countr_zero(at_most)), count);
        comparisons += std::min(idx + 1, count);
        return idx;
    }
    comparisons += count;
    return count;
}

template <Key K>
QHEAP_TARGET_AVX2 partition_result partition_avx2(std::span<K> data, std::size_t pivot_pos,
                                                  K* moved_out, std::uint64_t& comparisons) {
    using ops = avx2<K>;
    constexpr std::size_t lanes = ops::lanes;
    assert(pivot_pos < data.size());
    K* const base = data.data();
    K const pivot = base[pivot_pos];
    __m256i const pv = ops::to_signed(ops::broadcast(pivot));
    std::size_t kept = 0;
    std::size_t moved = 0;

    // Prefix: move e < pivot.
    std::size_t j = 0;
    for (; j + lanes <= pivot_pos; j += lanes) {
        __m256i const raw = ops::load(base + j);
        unsigned const sel = ops::greater(pv, ops::to_signed(raw));
        ops::store(moved_out + moved, ops::compress(raw, sel));
        moved += static_cast<std::size_t>(std::popcount(sel));
        unsigned const rest = ~sel & ops::full;
        ops::store(base + kept, ops::compress(raw, rest));
        kept += static_cast<std::size_t>(std::popcount(rest));
    }
    for (; j < pivot_pos; ++j) {
        K const e = base[j];
        if (e < pivot) {
            moved_out[moved++] = e;
        } else {
            base[kept++] = e;
        }
    }
    base[kept++] = pivot;

    // Suffix: move e <= pivot.
    std::size_t const end = data.size();
    j = pivot_pos + 1;
    for (; j + lanes <= end; j += lanes) {
        __m256i const raw = ops::load(base + j);
        unsigned const rest = ops::greater(ops::to_signed(raw), pv);
        unsigned const sel = ~rest & ops::full;
        ops::store(moved_out + moved, ops::compress(raw, sel));
        moved += static_cast<std::size_t>(std::popcount(sel));
        ops::store(base + kept, ops::compress(raw, rest));
        kept += static_cast<std::size_t>(std::popcount(rest));
    }
    for (; j < end; ++j) {
        K const e = base[j];
        if (e <= pivot) {
            moved_out[moved++] = e;
        } else {
            base[kept++] = e;
        }
    }
    comparisons += data.size();
    return {kept, moved};
}

// ---------------------------------------------------------------------------
// AVX-512 (512-bit)

template <Key K>
struct avx512 {
    static constexpr std::size_t lanes = 64 / sizeof(K);

    QHEAP_TARGET_AVX512 static __m512i load(K const* p) { return _mm512_loadu_si512(p); }

    QHEAP_TARGET_AVX512 static void store(K* p, __m512i v) { _mm512_storeu_si512(p, v); }

    QHEAP_TARGET_AVX512 static __m512i broadcast(K x) {
        if constexpr (sizeof(K) == 4) {
            return _mm512_set1_epi32(static_cast<std::int32_t>(x));
        } else {
            return _mm512_set1_epi64(static_cast<std::int64_t>(x));
        }
    }

    QHEAP_TARGET_AVX512 static __m512i load_padded(K const* p, std::size_t count) {
        __m512i const pad = broadcast(std::numeric_limits<K>::min());
        if constexpr (sizeof(K) == 4) {
            auto const m = static_cast<__mmask16>((1u << count) - 1u);
            return _mm512_mask_loadu_epi32(pad, m, p);
        } else {
            auto const m = static_cast<__mmask8>((1u << count) - 1u);
            return _mm512_mask_loadu_epi64(pad, m, p);
        }
    }

    // Lane masks for a < b and a <= b.
    QHEAP_TARGET_AVX512 static unsigned less(__m512i a, __m512i b) {
        if constexpr (sizeof(K) == 4) {
            if constexpr (std::is_signed_v<K>) return _mm512_cmplt_epi32_mask(a, b);
            else return _mm512_cmplt_epu32_mask(a, b);
        } else {
            if constexpr (std::is_signed_v<K>) return _mm512_cmplt_epi64_mask(a, b);
            else return _mm512_cmplt_epu64_mask(a, b);
        }
    }

    QHEAP_TARGET_AVX512 static unsigned less_equal(__m512i a, __m512i b) {
        if constexpr (sizeof(K) == 4) {
            if constexpr (std::is_signed_v<K>) return _mm512_cmple_epi32_mask(a, b);
            else return _mm512_cmple_epu32_mask(a, b);
        } else {
            if constexpr (std::is_signed_v<K>) return _mm512_cmple_epi64_mask(a, b);
            else return _mm512_cmple_epu64_mask(a, b);
        }
    }

    // Register compress followed by a full-width store; compressstoreu to
    // memory is microcoded on some cores.
    QHEAP_TARGET_AVX512 static __m512i compress(__m512i v, unsigned mask) {
        if constexpr (sizeof(K) == 4) {
            return _mm512_maskz_compress_epi32(static_cast<__mmask16>(mask), v);
        } else {
            return _mm512_maskz_compress_epi64(static_cast<__mmask8>(mask), v);
        }
    }

    static constexpr unsigned full = (lanes == 16) ? 0xFFFFu : 0xFFu;
};

template <Key K>
QHEAP_TARGET_AVX512 std::size_t classify_avx512(std::span<K const> pivots, K x,
                                                std::uint64_t& comparisons) {
    using ops = avx512<K>;
    constexpr std::size_t lanes = ops::lanes;
    std::size_t const count = pivots.size();
    __m512i const key = ops::broadcast(x);
    std::size_t i = 0;
    for (; i + lanes <= count; i += lanes) {
        unsigned const at_most = ops::less_equal(ops::load(pivots.data() + i), key);
        if (at_most != 0) {
            std::size_t const idx = i + static_cast<std::size_t>(std::countr_zero(at_most));
            comparisons += idx + 1;
            return idx;
        }
    }
    if (i < count) {
        unsigned const at_most =
            ops::less_equal(ops::load_padded(pivots.data() + i, count - i), key);
        std::size_t const idx =
            std::min(i + static_cast<std::size_t>(std::countr_zero(at_most)), count);
        comparisons += std::min(idx + 1, count);
        return idx;
    }
    comparisons += count;
    return count;
}

template <Key K>
QHEAP_TARGET_AVX512 partition_result partition_avx512(std::span<K> data, std::size_t pivot_pos,
                                                      K* moved_out, std::uint64_t& comparisons) {
    using ops = avx512<K>;
    constexpr std::size_t lanes = ops::lanes;
    assert(pivot_pos < data.size());
    K* const base = data.data();
    K const pivot = base[pivot_pos];
    __m512i const pv = ops::broadcast(pivot);
    std::size_t kept = 0;
    std::size_t moved = 0;

    std::size_t j = 0;
    for (; j + lanes <= pivot_pos; j += lanes) {
        __m512i const raw = ops::load(base + j);
        unsigned const sel = ops::less(raw, pv);
        unsigned const rest = ~sel & ops::full;
        ops::store(moved_out + moved, ops::compress(raw, sel));
        moved += static_cast<std::size_t>(std::popcount(sel));
        ops::store(base + kept, ops::compress(raw, rest));
        kept += static_cast<std::size_t>(std::popcount(rest));
    }
    for (; j < pivot_pos; ++j) {
        K const e = base[j];
        if (e < pivot) {
            moved_out[moved++] = e;
        } else {
            base[kept++] = e;
        }
    }
    base[kept++] = pivot;

    std::size_t const end = data.size();
    j = pivot_pos + 1;
    for (; j + lanes <= end; j += lanes) {
        __m512i const raw = ops::load(base + j);
        unsigned const sel = ops::less_equal(raw, pv);
        unsigned const rest = ~sel & ops::full;
        ops::store(moved_out + moved, ops::compress(raw, sel));
        moved += static_cast<std::size_t>(std::popcount(sel));
        ops::store(base + kept, ops::compress(raw, rest));
        kept += static_cast<std::size_t>(std::popcount(rest));
    }
    for (; j < end; ++j) {
        K const e = base[j];
        if (e <= pivot) {
            moved_out[moved++] = e;
        } else {
            base[kept++] = e;
        }
    }
    comparisons += data.size();
    return {kept, moved};
}

}  // namespace qheap::kernels::x86

#else
#define QHEAP_HAVE_X86_KERNELS 0
#endif
