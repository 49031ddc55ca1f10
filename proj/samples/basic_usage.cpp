#include <cstdint>
#include <iostream>

#include "qheap/qheap.hpp"

int main() {
    qheap::simd_quickheap<std::uint64_t> q;
    for (std::uint64_t v : {42, 7, 19, 7, 3}) q.push(v);
    std::cout << "kernel " << qheap::to_string(q.kernel()) << ", " << q.size() << " keys:";
    while (auto v = q.pop()) std::cout << ' ' << *v;
    std::cout << "\n" << q.comparison_count() << " comparisons\n";

    // Dijkstra over a small random graph with two different queues.
    auto const g = qheap::graph::random_graph(1000, 8, 100, 1);
    qheap::binary_heap<std::uint64_t> bh;
    qheap::simd_quickheap<std::uint64_t> qh;
    auto const a = qheap::graph::dijkstra(g, 0, bh);
    auto const b = qheap::graph::dijkstra(g, 0, qh);
    std::cout << "dijkstra checksums " << a.checksum() << " " << b.checksum() << "\n";
    return a.distance == b.distance ? 0 : 1;
}
