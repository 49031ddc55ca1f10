// Acceptance run: one PASS/FAIL/SKIP line per criterion. Exit status is
// nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qheap/qheap.hpp"
#include "qheap/testing/verify.hpp"

using namespace qheap;
using bench::workload_kind;

namespace {

enum class outcome { pass, fail, skip };

int failures = 0;

void report(int id, char const* title, outcome o, std::string const& detail, double seconds) {
    char const* tag = o == outcome::pass ? "PASS" : o == outcome::fail ? "FAIL" : "SKIP";
    if (o == outcome::fail) ++failures;
    std::printf("%s  %d %-28s %s (%.1fs)\n", tag, id, title, detail.c_str(), seconds);
    std::fflush(stdout);
}

struct stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string fmt(double v, int digits = 3) {
    std::ostringstream s;
    s.precision(digits);
    s << std::fixed << v;
    return s.str();
}

double median3(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// Forwards to a quickheap and folds every popped key into an FNV-1a digest.
template <Key K>
class digest_queue {
   public:
    using value_type = K;

    explicit digest_queue(kernel_level level) : q_(quickheap_config{}, level) {}

    void push(K x) { q_.push(x); }
    std::optional<K> pop() {
        auto v = q_.pop();
        if (v) {
            auto bits = static_cast<std::uint64_t>(*v);
            for (int i = 0; i < 8; ++i) {
                digest_ = (digest_ ^ (bits & 0xff)) * 0x100000001b3ULL;
                bits >>= 8;
            }
            ++pops_;
        }
        return v;
    }
    std::optional<K> top() { return q_.top(); }
    std::size_t size() const { return q_.size(); }
    std::uint64_t comparison_count() const { return q_.comparison_count(); }
    std::uint64_t digest() const { return digest_; }
    std::uint64_t pops() const { return pops_; }

   private:
    quickheap<K> q_;
    std::uint64_t digest_ = 0xcbf29ce484222325ULL;
    std::uint64_t pops_ = 0;
};

void criterion_1() {
    stopwatch t;
    std::size_t sequences = 0;
    for (auto heap : queue_names) {
        for (std::size_t s = 0; s < 100; ++s) {
            auto const mix = testing::sequence_mix(2024, s, 100000);
            auto const ops = testing::random_ops(mix);
            if (auto why = testing::differential<std::uint64_t>(heap, ops)) {
                report(1, "correctness oracle", outcome::fail,
                       std::string(heap) + " sequence " + std::to_string(s) + ": " + *why, t.seconds());
                return;
            }
            ++sequences;
        }
    }
    report(1, "correctness oracle", outcome::pass,
           std::to_string(sequences) + " sequences (100 per queue, <= 1e5 ops) match the multiset oracle",
           t.seconds());
}

double normalized_count(std::string const& heap, workload_kind kind, pivot_strategy p, std::uint64_t seed) {
    queue_options o;
    o.config.pivot = p;
    o.config.classify = classify_mode::linear;
    bench::workload_spec const spec{kind, std::size_t{1} << 16, 64, seed};
    return bench::count_comparisons(heap, spec, o).normalized();
}

void criterion_2() {
    stopwatch t;
    auto medians = [](workload_kind kind) {
        std::vector<double> random, oracle, binary;
        for (std::uint64_t seed : {1, 2, 3}) {
            random.push_back(normalized_count("scalar-quickheap", kind, pivot_strategy::random, seed));
            oracle.push_back(normalized_count("scalar-quickheap", kind, pivot_strategy::exact_median_oracle, seed));
            binary.push_back(normalized_count("binary-heap", kind, pivot_strategy::random, seed));
        }
        return std::array<double, 3>{median3(random), median3(oracle), median3(binary)};
    };
    auto const m = medians(workload_kind::constant_size);
    bool const ok = m[0] >= 1.4 && m[0] <= 2.0 && m[1] >= 1.0 && m[1] <= 1.3 && m[2] <= 1.2;
    report(2, "comparison counts", ok ? outcome::pass : outcome::fail,
           "constant-size n=2^16: random " + fmt(m[0]) + " in [1.4,2.0], oracle " + fmt(m[1]) +
               " in [1.0,1.3], binary-heap " + fmt(m[2]) + " <= 1.2",
           t.seconds());
    stopwatch t2;
    auto const mono = medians(workload_kind::monotone_constant_size);
    bool const mono_ok = mono[0] >= 1.4 && mono[0] <= 2.0 && mono[1] >= 1.0 && mono[1] <= 1.3 && mono[2] <= 1.2;
    std::printf("INFO  2 same bands, monotone        monotone-constant-size n=2^16: random %s, oracle %s, "
                "binary-heap %s (%s) (%.1fs)\n",
                fmt(mono[0]).c_str(), fmt(mono[1]).c_str(), fmt(mono[2]).c_str(),
                mono_ok ? "all inside" : "outside", t2.seconds());
}

void criterion_3() {
    stopwatch t;
    auto const wide = detect_hardware();
    std::string detail = std::string(to_string(wide)) + " vs scalar, constant-size n=2^18:";
    bool ok = true;
    for (std::uint64_t seed : {1, 2, 3}) {
        bench::workload_spec const spec{workload_kind::constant_size, std::size_t{1} << 18, 64, seed};
        digest_queue<std::uint64_t> a(wide);
        digest_queue<std::uint64_t> b(kernel_level::scalar);
        auto const ra = bench::run_workload(spec, a);
        auto const rb = bench::run_workload(spec, b);
        bool const same = a.digest() == b.digest() && a.pops() == b.pops() &&
                          ra.total_comparisons == rb.total_comparisons &&
                          a.comparison_count() == b.comparison_count();
        ok = ok && same;
        detail += " seed " + std::to_string(seed) + (same ? " identical" : " DIFFERENT");
    }
    if (wide == kernel_level::scalar) {
        report(3, "kernel equivalence", outcome::skip, "host has no wide kernels; " + detail, t.seconds());
        return;
    }
    report(3, "kernel equivalence", ok ? outcome::pass : outcome::fail, detail, t.seconds());
}

// Median measured-phase time of `repeats` runs after one warm-up.
std::uint64_t timed(std::string const& heap, bench::workload_spec const& spec, queue_options const& o,
                    unsigned repeats = 3) {
    bench::measure_once(heap, spec, o);
    std::vector<std::uint64_t> nanos;
    for (unsigned r = 0; r < repeats; ++r) nanos.push_back(bench::measure_once(heap, spec, o).total_nanos);
    std::sort(nanos.begin(), nanos.end());
    return nanos[nanos.size() / 2];
}

void criterion_4() {
    stopwatch t;
    auto const wide = detect_hardware();
    if (wide == kernel_level::scalar) {
        report(4, "kernel speedup (soft)", outcome::skip, "host has no wide kernels", t.seconds());
        return;
    }
    bench::workload_spec const spec{workload_kind::constant_size, std::size_t{1} << 20, 64, 1};
    queue_options simd;
    simd.kernel = wide;
    auto const fast = timed("simd-quickheap", spec, simd);
    auto const slow = timed("scalar-quickheap", spec, {});
    double const ratio = static_cast<double>(slow) / static_cast<double>(fast);
    report(4, "kernel speedup (soft)", ratio >= 2.0 ? outcome::pass : outcome::fail,
           std::string(to_string(wide)) + " " + fmt(static_cast<double>(fast) / 1e6, 1) + " ms vs scalar " +
               fmt(static_cast<double>(slow) / 1e6, 1) + " ms, speedup " + fmt(ratio, 2) + "x (need >= 2x)",
           t.seconds());
}

void criterion_5() {
    stopwatch t;
    bench::workload_spec const spec{workload_kind::constant_size, std::size_t{1} << 22, 64, 1};
    auto const simd = timed("simd-quickheap", spec, {});
    auto const bh = timed("binary-heap", spec, {});
    report(5, "relative standing (soft)", simd <= bh ? outcome::pass : outcome::fail,
           "constant-size n=2^22: simd-quickheap " + fmt(static_cast<double>(simd) / 1e6, 1) +
               " ms, binary-heap " + fmt(static_cast<double>(bh) / 1e6, 1) + " ms (" +
               fmt(static_cast<double>(bh) / static_cast<double>(simd), 2) + "x)",
           t.seconds());
}

void criterion_6() {
    stopwatch t;
    auto fail = [&](std::string const& why) { report(6, "graph oracles", outcome::fail, why, t.seconds()); };
    for (std::uint64_t i = 0; i < 100; ++i) {
        rng_type rng(7000 + i);
        auto const v = static_cast<graph::vertex_id>(1 + uniform_below(rng, 500));
        double const degree = 1.0 + static_cast<double>(uniform_below(rng, 12));
        auto const max_w = static_cast<graph::weight_type>(1 + uniform_below(rng, 10000));
        auto const edges = graph::random_edges(v, degree, max_w, rng());
        auto const src = static_cast<graph::vertex_id>(uniform_below(rng, v));
        for (bool undirected : {true, false}) {
            auto const g = graph::graph::from_edges(v, edges, undirected);
            for (auto heap : queue_names) {
                if (auto why = testing::graph_oracles(heap, g, src)) {
                    return fail(std::string(heap) + " graph " + std::to_string(i) + ": " + *why);
                }
            }
        }
    }
    std::size_t files = 0;
    std::string sums;
    std::vector<std::filesystem::path> paths;
    for (auto const& entry : std::filesystem::directory_iterator(QHEAP_TEST_DATA_DIR)) {
        if (entry.path().extension() == ".gr") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    for (auto const& path : paths) {
        auto const g = graph::read_dimacs_file(path.string());
        std::optional<std::uint64_t> first;
        for (auto heap : queue_names) {
            auto const sum = with_queue<std::uint64_t>(heap, {}, [&](auto& q) {
                return graph::dijkstra(g, 0, q).checksum();
            });
            if (first && *first != sum) return fail(path.filename().string() + ": " + std::string(heap) + " checksum differs");
            first = sum;
        }
        ++files;
        sums += " " + path.filename().string() + "=" + std::to_string(*first);
    }
    report(6, "graph oracles", outcome::pass,
           "100 random graphs (directed and undirected) x 4 queues match bellman-ford/kruskal; " +
               std::to_string(files) + " DIMACS files agree:" + sums,
           t.seconds());
}

void criterion_7() {
    stopwatch t;
    std::string detail;
    for (auto heap : {"scalar-quickheap", "simd-quickheap", "original-quickheap"}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            testing::op_mix mix;
            mix.count = 10000;
            mix.seed = seed;
            mix.duplicate_heavy = seed % 2 == 0;
            auto const ops = testing::random_ops(mix);
            if (auto why = testing::differential<std::uint64_t>(heap, ops, {}, true)) {
                report(7, "invariant suite", outcome::fail, std::string(heap) + ": " + *why, t.seconds());
                return;
            }
        }
        auto const eq = testing::all_equal_stress<std::uint64_t>(heap, 100000);
        if (eq.failure) {
            report(7, "invariant suite", outcome::fail, std::string(heap) + " all-equal: " + *eq.failure, t.seconds());
            return;
        }
        detail += std::string(" ") + heap + " " + std::to_string(eq.comparisons);
    }
    report(7, "invariant suite", outcome::pass,
           "invariants hold after every op; all-equal 1e5 comparisons (bound " +
               std::to_string(static_cast<std::uint64_t>(testing::all_equal_bound(100000))) + "):" + detail,
           t.seconds());
}

void criterion_8() {
    stopwatch t;
    std::size_t const n = 1000;
    struct expect {
        workload_kind kind;
        std::size_t warm_push, warm_pop, push, pop, pairs;
    };
    std::vector<expect> const table{
        {workload_kind::heap_sort, 0, 0, n, n, n},
        {workload_kind::wiggle, 0, 0, 3 * n, 3 * n, 3 * n},
        {workload_kind::monotone_wiggle, 0, 0, 3 * n, 3 * n, 3 * n},
        {workload_kind::constant_size, 2 * n, n, 10 * n, 10 * n, 10 * n},
        {workload_kind::monotone_constant_size, 2 * n, n, 10 * n, 10 * n, 10 * n},
    };
    for (auto const& e : table) {
        bench::run_trace trace;
        binary_heap<std::uint64_t> q;
        auto const m = bench::run_workload(bench::workload_spec{e.kind, n, 64, 1}, q, &trace);
        std::size_t c[2][2] = {{0, 0}, {0, 0}};
        for (auto const& o : trace.ops) ++c[o.measured][o.is_push];
        bool const ok = c[0][1] == e.warm_push && c[0][0] == e.warm_pop && c[1][1] == e.push &&
                        c[1][0] == e.pop && m.measured_pairs == e.pairs && q.size() == (e.warm_push - e.warm_pop);
        if (!ok) {
            report(8, "workload definitions", outcome::fail,
                   std::string(bench::to_string(e.kind)) + " op counts differ", t.seconds());
            return;
        }
    }
    report(8, "workload definitions", outcome::pass,
           "n=1000: heap-sort n pairs, wiggle 3n, constant-size 10n after a 2n-push/n-pop warm-up", t.seconds());
}

}  // namespace

int main() {
    auto const d = detect_capabilities();
    std::printf("host kernels: %s\n", std::string(to_string(d.detected)).c_str());
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
