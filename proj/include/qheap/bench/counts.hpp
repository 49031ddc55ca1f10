#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "qheap/bench/csv.hpp"
#include "qheap/bench/workload.hpp"
#include "qheap/config.hpp"
#include "qheap/queue.hpp"

namespace qheap::bench {

// Comparison totals of one workload run, split by the operation that made
// them (measured phase only).
struct counts_record {
    std::string heap;
    workload_spec workload;
    pivot_strategy pivot = pivot_strategy::median_of_3;
    classify_mode classify = classify_mode::linear;
    std::uint64_t measured_pairs = 0;
    std::uint64_t push_comparisons = 0;
    std::uint64_t pop_comparisons = 0;

    std::uint64_t total_comparisons() const { return push_comparisons + pop_comparisons; }
    double push_normalized() const {
        return static_cast<double>(push_comparisons) / fundamental_ops(measured_pairs, workload.n);
    }
    double pop_normalized() const {
        return static_cast<double>(pop_comparisons) / fundamental_ops(measured_pairs, workload.n);
    }
    double normalized() const {
        return static_cast<double>(total_comparisons()) /
               fundamental_ops(measured_pairs, workload.n);
    }
};

inline counts_record count_comparisons(std::string const& heap, workload_spec const& spec,
                                       queue_options const& options) {
    run_trace trace;
    trace.record_ops = false;
    auto run = [&]<Key K>() {
        return with_queue<K>(heap, options, [&](auto& q) { return run_workload(spec, q, &trace); });
    };
    metrics_record const m = spec.key_bits == 32 ? run.template operator()<std::uint32_t>()
                                                 : run.template operator()<std::uint64_t>();
    counts_record r;
    r.heap = heap;
    r.workload = spec;
    r.pivot = options.config.pivot;
    r.classify = options.config.classify;
    r.measured_pairs = m.measured_pairs;
    r.push_comparisons = trace.push_comparisons;
    r.pop_comparisons = trace.pop_comparisons;
    return r;
}

inline constexpr std::string_view counts_csv_header =
    "heap,workload,n,key_bits,seed,pivot,classify,measured_pairs,push_comparisons,"
    "pop_comparisons,total_comparisons,push_per_pair_normalized,pop_per_pair_normalized,"
    "comparisons_per_pair_normalized";

inline std::string emit_counts_csv(std::span<counts_record const> records) {
    std::string out(counts_csv_header);
    out += '\n';
    for (auto const& r : records) {
        bool const quick = r.heap == "scalar-quickheap" || r.heap == "simd-quickheap";
        out += r.heap;
        out += ',';
        out += to_string(r.workload.kind);
        out += ',' + std::to_string(r.workload.n);
        out += ',' + std::to_string(r.workload.key_bits);
        out += ',' + std::to_string(r.workload.seed);
        out += ',';
        out += quick ? to_string(r.pivot) : "-";
        out += ',';
        out += quick ? to_string(r.classify) : "-";
        out += ',' + std::to_string(r.measured_pairs);
        out += ',' + std::to_string(r.push_comparisons);
        out += ',' + std::to_string(r.pop_comparisons);
        out += ',' + std::to_string(r.total_comparisons());
        out += ',' + detail::format_double(r.push_normalized());
        out += ',' + detail::format_double(r.pop_normalized());
        out += ',' + detail::format_double(r.normalized());
        out += '\n';
    }
    return out;
}

}  // namespace qheap::bench
