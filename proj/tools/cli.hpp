#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qheap/qheap.hpp"
#include "qheap/testing/verify.hpp"

// Command-line front end. run() is kept separate from main() so the tests
// can drive it in-process.
namespace qheap::cli {

namespace detail {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string workload_names() {
    std::string out;
    for (auto k : bench::all_workloads) {
        if (!out.empty()) out += ", ";
        out += bench::to_string(k);
    }
    return out;
}

inline void check_heaps(std::vector<std::string> const& heaps) {
    for (auto const& h : heaps) {
        if (!is_queue_name(h)) {
            throw usage_error("--heap: unknown heap '" + h + "' (valid: " + queue_names_list() + ")");
        }
    }
}

inline std::vector<bench::workload_kind> parse_workloads(std::vector<std::string> const& names) {
    std::vector<bench::workload_kind> out;
    for (auto const& w : names) {
        auto k = bench::parse_workload_kind(w);
        if (!k) throw usage_error("--workload: unknown workload '" + w + "' (valid: " + workload_names() + ")");
        out.push_back(*k);
    }
    return out;
}

inline std::optional<kernel_level> parse_kernel(std::string const& name) {
    if (name.empty()) return std::nullopt;
    auto k = parse_kernel_level(name);
    if (!k) throw usage_error("--kernel: unknown kernel '" + name + "' (valid: scalar, wide-256, wide-512)");
    return k;
}

inline pivot_strategy parse_pivot(std::string const& name) {
    auto p = parse_pivot_strategy(name);
    if (!p) throw usage_error("--pivot: unknown strategy '" + name + "' (valid: random, median3, oracle-median)");
    return *p;
}

inline classify_mode parse_classify(std::string const& name) {
    auto c = parse_classify_mode(name);
    if (!c) throw usage_error("--classify: unknown mode '" + name + "' (valid: linear, binary)");
    return *c;
}

inline void check_key_bits(unsigned bits) {
    if (bits != 32 && bits != 64) throw usage_error("--key-bits: must be 32 or 64");
}

// Writes to the file if a path was given, else to `out`.
inline void emit(std::string const& path, std::string const& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error(errc::io_failure, "cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw error(errc::io_failure, "write to '" + path + "' failed");
}

inline double timer_resolution_ns() {
    using clock = std::chrono::steady_clock;
    return 1e9 * static_cast<double>(clock::period::num) / static_cast<double>(clock::period::den);
}

struct synthetic_flags {
    std::vector<std::string> heaps{queue_names.begin(), queue_names.end()};
    std::vector<std::string> workloads;
    std::vector<std::size_t> n_values;
    unsigned min_log_n = 10;
    unsigned max_log_n = 20;
    unsigned key_bits = 64;
    std::vector<std::uint64_t> seeds{1};
    unsigned repeats = 3;
    std::string kernel;
    std::string pivot = "median3";
    std::string classify = "linear";
    std::string output;
};

inline int bench_synthetic(synthetic_flags const& f, std::ostream& out, std::ostream& err) {
    check_heaps(f.heaps);
    bench::sweep_params p;
    if (f.workloads.empty()) {
        p.kinds.assign(bench::all_workloads.begin(), bench::all_workloads.end());
    } else {
        p.kinds = parse_workloads(f.workloads);
    }
    check_key_bits(f.key_bits);
    p.queue.kernel = parse_kernel(f.kernel);
    p.queue.config.pivot = parse_pivot(f.pivot);
    p.queue.config.classify = parse_classify(f.classify);
    if (f.repeats == 0) throw usage_error("--repeats: must be >= 1");
    for (auto n : f.n_values) {
        if (n < 2) throw usage_error("--n: values must be >= 2");
    }
    if (f.min_log_n < 1 || f.max_log_n > 40) throw usage_error("--min-log-n/--max-log-n: out of range");
    auto const dispatch = detect_capabilities(p.queue.kernel);
    p.queue.kernel = dispatch.selected;
    p.heaps = f.heaps;
    p.n_values = f.n_values.empty() ? bench::powers_of_two(f.min_log_n, f.max_log_n) : f.n_values;
    p.key_bits = f.key_bits;
    p.seeds = f.seeds;
    p.repeats = f.repeats;

    err << "# timer steady_clock, resolution " << timer_resolution_ns() << " ns; kernel "
        << to_string(dispatch.selected) << " (detected " << to_string(dispatch.detected) << ")\n";
    auto const rows = bench::sweep(p, [&](bench::metrics_record const& r) {
        err << r.heap << ' ' << bench::to_string(r.workload.kind) << " n=" << r.workload.n
            << " seed=" << r.workload.seed << ": " << r.nanos_per_fundamental_op << " ns/op, "
            << r.comparisons_per_pair_normalized << " cmp/(pair log n)\n";
    });
    emit(f.output, bench::emit_csv(rows), out);
    return 0;
}

struct graph_flags {
    std::string graph_path;
    graph::vertex_id random_vertices = 0;
    double avg_degree = 8;
    graph::weight_type max_weight = 1000;
    std::uint64_t graph_seed = 1;
    std::string algorithm = "dijkstra";
    std::vector<std::string> heaps{queue_names.begin(), queue_names.end()};
    graph::vertex_id source = 0;
    bool mirror = false;
    unsigned repeats = 3;
    std::string kernel;
    std::string output;
};

inline constexpr std::string_view graph_csv_header =
    "heap,algorithm,graph,vertices,arcs,source,median_nanos,checksum,stale_pops";

inline int bench_graph(graph_flags const& f, std::ostream& out, std::ostream& err) {
    check_heaps(f.heaps);
    if (f.algorithm != "dijkstra" && f.algorithm != "prim") {
        throw usage_error("--algorithm: unknown algorithm '" + f.algorithm + "' (valid: dijkstra, prim)");
    }
    if (f.graph_path.empty() == (f.random_vertices == 0)) {
        throw usage_error("give exactly one of --graph or --random-vertices");
    }
    if (f.repeats == 0) throw usage_error("--repeats: must be >= 1");
    queue_options options;
    options.kernel = parse_kernel(f.kernel);
    options.kernel = detect_capabilities(options.kernel).selected;
    bool const prim = f.algorithm == "prim";
    if (prim && !f.graph_path.empty() && !f.mirror) {
        throw usage_error("--algorithm prim needs an undirected graph; pass --mirror for .gr files");
    }

    graph::graph g;
    std::string label;
    if (!f.graph_path.empty()) {
        g = graph::read_dimacs_file(f.graph_path, f.mirror);
        label = f.graph_path;
    } else {
        g = graph::random_graph(f.random_vertices, f.avg_degree, f.max_weight, f.graph_seed);
        label = "random:" + std::to_string(f.random_vertices) + ":" + std::to_string(f.graph_seed);
    }
    if (f.source >= g.vertex_count()) {
        throw error(errc::source_out_of_range, "--source " + std::to_string(f.source) + " but graph has " +
                                                   std::to_string(g.vertex_count()) + " vertices");
    }

    std::ostringstream csv;
    csv << graph_csv_header << '\n';
    for (auto const& heap : f.heaps) {
        std::vector<std::uint64_t> nanos;
        std::uint64_t checksum = 0;
        std::uint64_t stale = 0;
        for (unsigned r = 0; r <= f.repeats; ++r) {  // first run is warm-up
            with_queue<std::uint64_t>(heap, options, [&](auto& q) {
                auto const start = std::chrono::steady_clock::now();
                if (prim) {
                    auto const res = graph::prim(g, f.source, q);
                    checksum = res.weight;
                    stale = res.stale_pops;
                } else {
                    auto const res = graph::dijkstra(g, f.source, q);
                    checksum = res.checksum();
                    stale = res.stale_pops;
                }
                auto const stop = std::chrono::steady_clock::now();
                if (r > 0) {
                    nanos.push_back(static_cast<std::uint64_t>(
                        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
                }
            });
        }
        std::nth_element(nanos.begin(), nanos.begin() + nanos.size() / 2, nanos.end());
        auto const median = nanos[nanos.size() / 2];
        csv << heap << ',' << f.algorithm << ',' << label << ',' << g.vertex_count() << ','
            << g.arc_count() << ',' << f.source << ',' << median << ',' << checksum << ',' << stale
            << '\n';
        err << heap << ' ' << f.algorithm << ": " << static_cast<double>(median) / 1e6
            << " ms, checksum " << checksum << '\n';
    }
    emit(f.output, csv.str(), out);
    return 0;
}

struct counts_flags {
    std::vector<std::string> heaps{"scalar-quickheap"};
    std::vector<std::string> pivots{"random", "median3", "oracle-median"};
    std::vector<std::string> classifies{"linear", "binary"};
    std::vector<std::size_t> n_values{65536};
    std::string workload = "monotone-constant-size";
    std::vector<std::uint64_t> seeds{1};
    unsigned key_bits = 64;
    std::string kernel;
    std::string output;
};

inline int counts(counts_flags const& f, std::ostream& out, std::ostream& err) {
    check_heaps(f.heaps);
    auto const kind = parse_workloads({f.workload}).front();
    std::vector<pivot_strategy> pivots;
    for (auto const& p : f.pivots) pivots.push_back(parse_pivot(p));
    std::vector<classify_mode> classifies;
    for (auto const& c : f.classifies) classifies.push_back(parse_classify(c));
    check_key_bits(f.key_bits);
    for (auto n : f.n_values) {
        if (n < 2) throw usage_error("--n: values must be >= 2");
    }
    queue_options base;
    base.kernel = detect_capabilities(parse_kernel(f.kernel)).selected;

    std::vector<bench::counts_record> rows;
    for (auto const& heap : f.heaps) {
        bool const quick = heap == "scalar-quickheap" || heap == "simd-quickheap";
        for (auto n : f.n_values) {
            for (auto seed : f.seeds) {
                bench::workload_spec const spec{kind, n, f.key_bits, seed};
                if (!quick) {
                    rows.push_back(bench::count_comparisons(heap, spec, base));
                    continue;
                }
                for (auto c : classifies) {
                    for (auto p : pivots) {
                        queue_options o = base;
                        o.config.pivot = p;
                        o.config.classify = c;
                        rows.push_back(bench::count_comparisons(heap, spec, o));
                    }
                }
            }
        }
    }
    for (auto const& r : rows) {
        err << r.heap << ' ' << to_string(r.pivot) << ' ' << to_string(r.classify)
            << " n=" << r.workload.n << " seed=" << r.workload.seed << ": push "
            << r.push_normalized() << " + pop " << r.pop_normalized() << " = " << r.normalized()
            << " log2 n per pair\n";
    }
    emit(f.output, bench::emit_counts_csv(rows), out);
    return 0;
}

struct verify_flags {
    testing::verify_params params;
    std::string kernel;
};

inline int verify(verify_flags f, std::ostream& out) {
    f.params.options.kernel = detect_capabilities(parse_kernel(f.kernel)).selected;
    bool const ok = testing::verify_suite(f.params, out);
    out << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
    return ok ? 0 : 1;
}

}  // namespace detail

inline int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"QuickHeap priority queues: benchmarks, comparison counts and self-checks", "qheap"};
    app.require_subcommand(1);

    detail::synthetic_flags sf;
    auto* syn = app.add_subcommand("bench-synthetic", "synthetic workload sweep, CSV out");
    syn->add_option("--heap", sf.heaps, "heaps to run")->delimiter(',');
    syn->add_option("--workload", sf.workloads, "workloads (default: all)")->delimiter(',');
    syn->add_option("--n", sf.n_values, "explicit sizes (overrides the log range)")->delimiter(',');
    syn->add_option("--min-log-n", sf.min_log_n, "smallest size 2^k");
    syn->add_option("--max-log-n", sf.max_log_n, "largest size 2^k");
    syn->add_option("--key-bits", sf.key_bits, "32 or 64");
    syn->add_option("--seed", sf.seeds, "workload seeds")->delimiter(',');
    syn->add_option("--repeats", sf.repeats, "timed runs per row (median reported)");
    syn->add_option("--kernel", sf.kernel, "scalar, wide-256 or wide-512");
    syn->add_option("--pivot", sf.pivot, "random, median3 or oracle-median");
    syn->add_option("--classify", sf.classify, "linear or binary");
    syn->add_option("-o,--output", sf.output, "CSV path (default stdout)");

    detail::graph_flags gf;
    auto* gr = app.add_subcommand("bench-graph", "Dijkstra or Prim on a DIMACS or random graph");
    gr->add_option("--graph", gf.graph_path, "DIMACS .gr file");
    gr->add_option("--random-vertices", gf.random_vertices, "generate a random graph instead");
    gr->add_option("--avg-degree", gf.avg_degree, "random graph average degree");
    gr->add_option("--max-weight", gf.max_weight, "random graph max edge weight");
    gr->add_option("--graph-seed", gf.graph_seed, "random graph seed");
    gr->add_option("--algorithm", gf.algorithm, "dijkstra or prim");
    gr->add_option("--heap", gf.heaps, "heaps to run")->delimiter(',');
    gr->add_option("--source", gf.source, "source vertex (0-based)");
    gr->add_flag("--mirror", gf.mirror, "treat file arcs as undirected edges");
    gr->add_option("--repeats", gf.repeats, "timed runs per heap");
    gr->add_option("--kernel", gf.kernel, "scalar, wide-256 or wide-512");
    gr->add_option("-o,--output", gf.output, "CSV path (default stdout)");

    detail::verify_flags vf;
    auto* ver = app.add_subcommand("verify", "oracle and invariant checks over every heap");
    ver->add_option("--ops", vf.params.ops, "longest random op sequence");
    ver->add_option("--sequences", vf.params.sequences, "op sequences per heap");
    ver->add_option("--invariant-ops", vf.params.invariant_ops, "ops per invariant walk");
    ver->add_option("--all-equal", vf.params.all_equal, "copies in the all-equal stress");
    ver->add_option("--graphs", vf.params.graphs, "random graphs per heap");
    ver->add_option("--max-vertices", vf.params.max_vertices, "largest random graph");
    ver->add_option("--seed", vf.params.seed, "base seed");
    ver->add_option("--kernel", vf.kernel, "scalar, wide-256 or wide-512");

    detail::counts_flags cf;
    auto* cnt = app.add_subcommand("counts", "comparison counts per pivot strategy and classify mode");
    cnt->add_option("--heap", cf.heaps, "heaps to count")->delimiter(',');
    cnt->add_option("--pivot", cf.pivots, "pivot strategies")->delimiter(',');
    cnt->add_option("--classify", cf.classifies, "classify modes")->delimiter(',');
    cnt->add_option("--n", cf.n_values, "sizes")->delimiter(',');
    cnt->add_option("--workload", cf.workload, "workload kind");
    cnt->add_option("--seed", cf.seeds, "seeds")->delimiter(',');
    cnt->add_option("--key-bits", cf.key_bits, "32 or 64");
    cnt->add_option("--kernel", cf.kernel, "scalar, wide-256 or wide-512");
    cnt->add_option("-o,--output", cf.output, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*syn) return detail::bench_synthetic(sf, out, err);
        if (*gr) return detail::bench_graph(gf, out, err);
        if (*ver) return detail::verify(vf, out);
        if (*cnt) return detail::counts(cf, out, err);
    } catch (detail::usage_error const& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (error const& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace qheap::cli
