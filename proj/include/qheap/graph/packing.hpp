#pragma once

#include <cstdint>
#include <utility>

namespace qheap::graph {

// Priority in the high half so plain unsigned comparison orders by it; ties
// fall to the id.
constexpr std::uint64_t pack(std::uint32_t priority, std::uint32_t id) noexcept {
    return (static_cast<std::uint64_t>(priority) << 32) | id;
}

struct unpacked {
    std::uint32_t priority;
    std::uint32_t id;

    bool operator==(unpacked const&) const = default;
};

constexpr unpacked unpack(std::uint64_t e) noexcept {
    return {static_cast<std::uint32_t>(e >> 32), static_cast<std::uint32_t>(e)};
}

}  // namespace qheap::graph
