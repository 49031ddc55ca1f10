#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qheap/bench/workload.hpp"
#include "qheap/error.hpp"

namespace qheap::bench {

inline constexpr std::string_view csv_header =
    "heap,workload,n,key_bits,seed,measured_pairs,total_nanos,total_comparisons,"
    "nanos_per_fundamental_op,comparisons_per_pair_normalized";

namespace detail {

// Shortest fixed-notation text that parses back to the same double.
inline std::string format_double(double v) {
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    if (ec != std::errc{}) throw error(errc::io_failure, "cannot format value");
    return std::string(buf, end);
}

template <typename T>
T parse_number(std::string_view field, std::size_t line) {
    T value{};
    auto const* first = field.data();
    auto const* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw error(errc::malformed_line,
                    "csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    }
    return value;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto const pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

inline std::string emit_csv(std::span<metrics_record const> records) {
    std::string out(csv_header);
    out += '\n';
    for (auto const& r : records) {
        out += r.heap;
        out += ',';
        out += to_string(r.workload.kind);
        out += ',' + std::to_string(r.workload.n);
        out += ',' + std::to_string(r.workload.key_bits);
        out += ',' + std::to_string(r.workload.seed);
        out += ',' + std::to_string(r.measured_pairs);
        out += ',' + std::to_string(r.total_nanos);
        out += ',' + std::to_string(r.total_comparisons);
        out += ',' + detail::format_double(r.nanos_per_fundamental_op);
        out += ',' + detail::format_double(r.comparisons_per_pair_normalized);
        out += '\n';
    }
    return out;
}

inline std::vector<metrics_record> parse_csv(std::string_view text) {
    std::vector<metrics_record> records;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (!text.empty()) {
        auto const nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!seen_header) {
            if (line != csv_header) {
                throw error(errc::malformed_line, "csv line 1: unexpected header");
            }
            seen_header = true;
            continue;
        }
        auto const f = detail::split(line, ',');
        if (f.size() != 10) {
            throw error(errc::malformed_line,
                        "csv line " + std::to_string(line_no) + ": expected 10 fields");
        }
        metrics_record r;
        r.heap = std::string(f[0]);
        auto kind = parse_workload_kind(f[1]);
        if (!kind) {
            throw error(errc::malformed_line,
                        "csv line " + std::to_string(line_no) + ": unknown workload");
        }
        r.workload.kind = *kind;
        r.workload.n = detail::parse_number<std::size_t>(f[2], line_no);
        r.workload.key_bits = detail::parse_number<unsigned>(f[3], line_no);
        r.workload.seed = detail::parse_number<std::uint64_t>(f[4], line_no);
        r.measured_pairs = detail::parse_number<std::uint64_t>(f[5], line_no);
        r.total_nanos = detail::parse_number<std::uint64_t>(f[6], line_no);
        r.total_comparisons = detail::parse_number<std::uint64_t>(f[7], line_no);
        r.nanos_per_fundamental_op = detail::parse_number<double>(f[8], line_no);
        r.comparisons_per_pair_normalized = detail::parse_number<double>(f[9], line_no);
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace qheap::bench
