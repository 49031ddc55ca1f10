#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <type_traits>
#include <vector>

namespace qheap {

// Queue element: a fixed-width 32- or 64-bit integer, compared natively.
template <typename T>
concept Key = std::integral<T> && !std::same_as<T, bool> &&
              (sizeof(T) == 4 || sizeof(T) == 8);

// Allocator whose value-initialization is default-initialization, so
// resize() on trivially constructible keys leaves memory untouched. The
// lane kernels size buffers with slack before writing compressed blocks.
template <typename T, typename A = std::allocator<T>>
class default_init_allocator : public A {
    using traits = std::allocator_traits<A>;

   public:
    template <typename U>
    struct rebind {
        using other =
            default_init_allocator<U, typename traits::template rebind_alloc<U>>;
    };

    using A::A;

    template <typename U>
    void construct(U* ptr) noexcept(std::is_nothrow_default_constructible_v<U>) {
        ::new (static_cast<void*>(ptr)) U;
    }

    template <typename U, typename... Args>
    void construct(U* ptr, Args&&... args) {
        traits::construct(static_cast<A&>(*this), ptr, std::forward<Args>(args)...);
    }
};

template <Key K>
using bucket = std::vector<K, default_init_allocator<K>>;

// 64-bit Mersenne Twister; its output sequence is fixed by the standard, so
// seeded runs reproduce across platforms. Distributions are done by hand
// below because std::uniform_int_distribution is implementation-defined.
using rng_type = std::mt19937_64;

// Uniform draw from [0, bound), bound > 0. Multiply-shift with rejection.
inline std::uint64_t uniform_below(rng_type& rng, std::uint64_t bound) {
    __extension__ using u128 = unsigned __int128;
    u128 product = static_cast<u128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        std::uint64_t const threshold = -bound % bound;
        while (low < threshold) {
            product = static_cast<u128>(rng()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace qheap
