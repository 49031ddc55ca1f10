#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qheap/bench/workload.hpp"
#include "qheap/error.hpp"
#include "qheap/queue.hpp"

namespace qheap::bench {

struct sweep_params {
    std::vector<workload_kind> kinds;
    std::vector<std::string> heaps;
    std::vector<std::size_t> n_values;
    unsigned key_bits = 64;
    std::vector<std::uint64_t> seeds = {1};
    unsigned repeats = 3;
    queue_options queue;
};

// Powers of two from 2^min_log to 2^max_log inclusive.
inline std::vector<std::size_t> powers_of_two(unsigned min_log, unsigned max_log) {
    std::vector<std::size_t> out;
    for (unsigned e = min_log; e <= max_log; ++e) out.push_back(std::size_t{1} << e);
    return out;
}

// One measurement on a fresh queue of the named kind.
inline metrics_record measure_once(std::string const& heap, workload_spec const& spec,
                                   queue_options const& options) {
    auto run = [&]<Key K>() {
        return with_queue<K>(heap, options, [&](auto& q) { return run_workload(spec, q); });
    };
    metrics_record r = spec.key_bits == 32 ? run.template operator()<std::uint32_t>()
                                           : run.template operator()<std::uint64_t>();
    r.heap = heap;
    return r;
}

// For each configuration: one warm-up run, then `repeats` timed runs; the
// row carries the median time. Comparison counts are seed-deterministic and
// taken from the first timed run. `on_row` sees each row as it completes.
inline std::vector<metrics_record> sweep(
    sweep_params const& p, std::function<void(metrics_record const&)> const& on_row = {}) {
    for (auto const& h : p.heaps) {
        if (!is_queue_name(h)) {
            throw error(errc::unknown_name,
                        "queue '" + h + "' (valid: " + queue_names_list() + ")");
        }
    }
    if (p.repeats == 0) throw error(errc::invalid_config, "repeats must be >= 1");
    std::vector<metrics_record> rows;
    for (auto kind : p.kinds) {
        for (auto const& heap : p.heaps) {
            for (auto n : p.n_values) {
                for (auto seed : p.seeds) {
                    workload_spec const spec{kind, n, p.key_bits, seed};
                    spec.validate();
                    measure_once(heap, spec, p.queue);
                    std::vector<metrics_record> runs;
                    for (unsigned r = 0; r < p.repeats; ++r) {
                        runs.push_back(measure_once(heap, spec, p.queue));
                    }
                    std::vector<std::uint64_t> nanos;
                    for (auto const& r : runs) nanos.push_back(r.total_nanos);
                    std::nth_element(nanos.begin(), nanos.begin() + nanos.size() / 2, nanos.end());
                    metrics_record row = runs.front();
                    row.total_nanos = nanos[nanos.size() / 2];
                    normalize(row);
                    if (on_row) on_row(row);
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

}  // namespace qheap::bench
