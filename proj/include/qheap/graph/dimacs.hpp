#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qheap/error.hpp"
#include "qheap/graph/graph.hpp"

// Reader for the 9th DIMACS challenge shortest-path format (.gr):
//   c <comment>
//   p sp <vertices> <arcs>
//   a <from> <to> <weight>      (1-based ids)
namespace qheap::graph {

namespace detail {

inline std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t const start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

[[noreturn]] inline void fail(errc code, std::size_t line, std::string const& what) {
    throw error(code, "line " + std::to_string(line) + ": " + what);
}

inline std::uint64_t number(std::string_view tok, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        fail(errc::malformed_line, line, "expected a non-negative integer, got '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace detail

// `mirror` stores every arc in both directions, yielding an undirected graph.
inline graph parse_dimacs(std::string_view text, bool mirror = false) {
    std::size_t line_no = 0;
    bool have_problem = false;
    std::uint64_t vertices = 0;
    std::uint64_t declared_arcs = 0;
    std::vector<edge> edges;
    while (!text.empty()) {
        auto const nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto const tok = detail::tokens(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (have_problem) detail::fail(errc::malformed_line, line_no, "second problem line");
            if (tok.size() != 4 || tok[1] != "sp") {
                detail::fail(errc::malformed_line, line_no, "expected 'p sp <n> <m>'");
            }
            vertices = detail::number(tok[2], line_no);
            declared_arcs = detail::number(tok[3], line_no);
            if (vertices > UINT32_MAX) {
                detail::fail(errc::id_out_of_range, line_no, "vertex count exceeds 32 bits");
            }
            have_problem = true;
            edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(declared_arcs, 1u << 26)));
        } else if (tok[0] == "a") {
            if (!have_problem) detail::fail(errc::malformed_line, line_no, "arc before problem line");
            if (tok.size() != 4) detail::fail(errc::malformed_line, line_no, "expected 'a <u> <v> <w>'");
            auto const u = detail::number(tok[1], line_no);
            auto const v = detail::number(tok[2], line_no);
            auto const w = detail::number(tok[3], line_no);
            if (u == 0 || v == 0 || u > vertices || v > vertices) {
                detail::fail(errc::id_out_of_range, line_no,
                             "vertex id outside 1.." + std::to_string(vertices));
            }
            if (w > UINT32_MAX) detail::fail(errc::malformed_line, line_no, "weight exceeds 32 bits");
            edges.push_back({static_cast<vertex_id>(u - 1), static_cast<vertex_id>(v - 1),
                             static_cast<weight_type>(w)});
        } else {
            detail::fail(errc::malformed_line, line_no, "unknown line type '" + std::string(tok[0]) + "'");
        }
    }
    if (!have_problem) throw error(errc::malformed_line, "missing problem line");
    if (edges.size() != declared_arcs) {
        throw error(errc::arc_count_mismatch, "problem line declares " + std::to_string(declared_arcs) +
                                                  " arcs, found " + std::to_string(edges.size()));
    }
    return graph::from_edges(static_cast<vertex_id>(vertices), edges, mirror);
}

inline graph read_dimacs_file(std::string const& path, bool mirror = false) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io_failure, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dimacs(buf.str(), mirror);
}

}  // namespace qheap::graph
