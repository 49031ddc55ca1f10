#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qheap/error.hpp"

namespace qheap::graph {

using vertex_id = std::uint32_t;
using weight_type = std::uint32_t;

struct arc {
    vertex_id target;
    weight_type weight;

    bool operator==(arc const&) const = default;
};

struct edge {
    vertex_id from;
    vertex_id to;
    weight_type weight;

    bool operator==(edge const&) const = default;
};

// Compressed adjacency (CSR). Immutable once built; undirected graphs store
// every edge in both endpoint lists.
class graph {
   public:
    graph() : offsets_(1, 0) {}

    static graph from_edges(vertex_id vertex_count, std::span<edge const> edges, bool undirected) {
        graph g;
        g.vertex_count_ = vertex_count;
        g.undirected_ = undirected;
        g.offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
        for (auto const& e : edges) {
            if (e.from >= vertex_count || e.to >= vertex_count) {
                throw error(errc::id_out_of_range, "edge endpoint outside vertex range");
            }
            ++g.offsets_[e.from + 1];
            if (undirected) ++g.offsets_[e.to + 1];
        }
        for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
        g.arcs_.resize(g.offsets_.back());
        std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto const& e : edges) {
            g.arcs_[fill[e.from]++] = {e.to, e.weight};
            if (undirected) g.arcs_[fill[e.to]++] = {e.from, e.weight};
        }
        return g;
    }

    vertex_id vertex_count() const noexcept { return vertex_count_; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }
    bool undirected() const noexcept { return undirected_; }

    std::span<arc const> neighbors(vertex_id v) const noexcept {
        return std::span<arc const>(arcs_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
    }

    // Each arc once; undirected graphs list each edge once, from its lower
    // endpoint. A mirrored self-loop sits twice in a row in its list.
    std::vector<edge> edges() const {
        std::vector<edge> out;
        for (vertex_id v = 0; v < vertex_count_; ++v) {
            bool skip_loop = false;
            for (auto const& a : neighbors(v)) {
                if (!undirected_ || v < a.target) {
                    out.push_back({v, a.target, a.weight});
                } else if (a.target == v) {
                    if (!skip_loop) out.push_back({v, v, a.weight});
                    skip_loop = !skip_loop;
                }
            }
        }
        return out;
    }

    std::optional<std::string> check_invariants() const {
        if (offsets_.size() != static_cast<std::size_t>(vertex_count_) + 1) return "offset count";
        if (offsets_.front() != 0 || offsets_.back() != arcs_.size()) return "offset bounds";
        for (std::size_t v = 0; v < vertex_count_; ++v) {
            if (offsets_[v] > offsets_[v + 1]) return "offsets decrease";
        }
        for (auto const& a : arcs_) {
            if (a.target >= vertex_count_) return "arc target out of range";
        }
        if (undirected_) {
            std::vector<std::tuple<vertex_id, vertex_id, weight_type>> forward;
            std::vector<std::tuple<vertex_id, vertex_id, weight_type>> backward;
            for (vertex_id v = 0; v < vertex_count_; ++v) {
                for (auto const& a : neighbors(v)) {
                    forward.emplace_back(v, a.target, a.weight);
                    backward.emplace_back(a.target, v, a.weight);
                }
            }
            std::sort(forward.begin(), forward.end());
            std::sort(backward.begin(), backward.end());
            if (forward != backward) return "undirected graph is not symmetric";
        }
        return std::nullopt;
    }

   private:
    vertex_id vertex_count_ = 0;
    bool undirected_ = false;
    std::vector<std::uint64_t> offsets_;
    std::vector<arc> arcs_;
};

}  // namespace qheap::graph
