#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "qheap/error.hpp"
#include "qheap/graph/graph.hpp"
#include "qheap/key.hpp"

namespace qheap::graph {

// Undirected graph: a spanning path through a random vertex order, then
// uniform random edges (self-loops and parallel edges allowed) until the
// edge count reaches vertices * avg_degree / 2. Weights uniform in
// [1, max_weight].
inline std::vector<edge> random_edges(vertex_id vertices, double avg_degree, weight_type max_weight,
                                      std::uint64_t seed) {
    if (vertices == 0 || avg_degree < 0 || max_weight == 0) {
        throw error(errc::invalid_config, "random graph needs vertices > 0, degree >= 0, max weight > 0");
    }
    rng_type rng(seed);
    auto weight = [&] { return static_cast<weight_type>(1 + uniform_below(rng, max_weight)); };
    std::vector<vertex_id> order(vertices);
    std::iota(order.begin(), order.end(), vertex_id{0});
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[uniform_below(rng, i)]);
    }
    auto const target = static_cast<std::uint64_t>(static_cast<double>(vertices) * avg_degree / 2.0);
    std::vector<edge> edges;
    edges.reserve(std::max<std::uint64_t>(target, vertices - 1));
    for (std::size_t i = 1; i < order.size(); ++i) {
        edges.push_back({order[i - 1], order[i], weight()});
    }
    while (edges.size() < target) {
        auto const u = static_cast<vertex_id>(uniform_below(rng, vertices));
        auto const v = static_cast<vertex_id>(uniform_below(rng, vertices));
        edges.push_back({u, v, weight()});
    }
    return edges;
}

inline graph random_graph(vertex_id vertices, double avg_degree, weight_type max_weight,
                          std::uint64_t seed) {
    auto const edges = random_edges(vertices, avg_degree, max_weight, seed);
    return graph::from_edges(vertices, edges, true);
}

}  // namespace qheap::graph
