#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qheap/error.hpp"
#include "qheap/graph/graph.hpp"
#include "qheap/graph/packing.hpp"
#include "qheap/queue.hpp"

namespace qheap::graph {

inline constexpr std::uint64_t unreachable = std::numeric_limits<std::uint64_t>::max();

struct dijkstra_result {
    std::vector<std::uint64_t> distance;  // `unreachable` if not reached
    std::size_t finalized = 0;
    std::uint64_t stale_pops = 0;

    // Sum of finite distances.
    std::uint64_t checksum() const {
        std::uint64_t sum = 0;
        for (auto d : distance) {
            if (d != unreachable) sum += d;
        }
        return sum;
    }
};

struct prim_result {
    std::uint64_t weight = 0;
    std::size_t tree_edges = 0;
    std::uint64_t stale_pops = 0;
};

// Shortest paths without decrease-key: every improvement pushes a new entry,
// and pops whose priority no longer matches the table are dropped.
template <priority_queue Q>
    requires std::same_as<typename Q::value_type, std::uint64_t>
dijkstra_result dijkstra(graph const& g, vertex_id source, Q& queue) {
    if (source >= g.vertex_count()) {
        throw error(errc::source_out_of_range,
                    "source " + std::to_string(source) + " but graph has " +
                        std::to_string(g.vertex_count()) + " vertices");
    }
    if (queue.size() != 0) throw error(errc::queue_not_empty, "dijkstra needs an empty queue");
    dijkstra_result r;
    r.distance.assign(g.vertex_count(), unreachable);
    std::vector<bool> done(g.vertex_count(), false);
    r.distance[source] = 0;
    queue.push(pack(0, source));
    while (auto const top = queue.pop()) {
        auto const [priority, u] = unpack(*top);
        if (done[u] || priority != r.distance[u]) {
            ++r.stale_pops;
            continue;
        }
        done[u] = true;
        ++r.finalized;
        for (auto const& a : g.neighbors(u)) {
            std::uint64_t const candidate = r.distance[u] + a.weight;
            if (candidate < r.distance[a.target]) {
                if (candidate > std::numeric_limits<std::uint32_t>::max()) {
                    throw error(errc::priority_overflow,
                                "tentative distance " + std::to_string(candidate) +
                                    " does not fit 32 bits");
                }
                r.distance[a.target] = candidate;
                queue.push(pack(static_cast<std::uint32_t>(candidate), a.target));
            }
        }
    }
    return r;
}

// Jarnik-Prim from `start` over its component. Entries carry the connecting
// edge's weight; a pop is stale if its vertex is already in the tree or a
// lighter edge to it has been seen since.
template <priority_queue Q>
    requires std::same_as<typename Q::value_type, std::uint64_t>
prim_result prim(graph const& g, vertex_id start, Q& queue) {
    if (!g.undirected()) {
        throw error(errc::invalid_graph, "prim needs an undirected (mirrored) graph");
    }
    if (start >= g.vertex_count()) {
        throw error(errc::source_out_of_range,
                    "start " + std::to_string(start) + " but graph has " +
                        std::to_string(g.vertex_count()) + " vertices");
    }
    if (queue.size() != 0) throw error(errc::queue_not_empty, "prim needs an empty queue");
    prim_result r;
    std::vector<bool> in_tree(g.vertex_count(), false);
    std::vector<std::uint64_t> best(g.vertex_count(), unreachable);
    best[start] = 0;
    queue.push(pack(0, start));
    while (auto const top = queue.pop()) {
        auto const [priority, u] = unpack(*top);
        if (in_tree[u] || priority != best[u]) {
            ++r.stale_pops;
            continue;
        }
        in_tree[u] = true;
        if (u != start) {
            r.weight += priority;
            ++r.tree_edges;
        }
        for (auto const& a : g.neighbors(u)) {
            if (!in_tree[a.target] && a.weight < best[a.target]) {
                best[a.target] = a.weight;
                queue.push(pack(a.weight, a.target));
            }
        }
    }
    return r;
}

}  // namespace qheap::graph
