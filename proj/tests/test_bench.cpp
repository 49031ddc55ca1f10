#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "qheap/bench/counts.hpp"
#include "qheap/bench/csv.hpp"
#include "qheap/bench/sweep.hpp"
#include "qheap/bench/workload.hpp"
#include "qheap/testing/oracles.hpp"

using namespace qheap;
using bench::workload_kind;

namespace {

struct phase_counts {
    std::size_t pushes = 0;
    std::size_t pops = 0;
};

struct traced_run {
    bench::metrics_record metrics;
    bench::run_trace trace;
};

traced_run traced(workload_kind kind, std::size_t n, std::string const& heap = "simd-quickheap",
                  std::uint64_t seed = 1) {
    traced_run r;
    bench::workload_spec const spec{kind, n, 64, seed};
    r.metrics = with_queue<std::uint64_t>(heap, {}, [&](auto& q) {
        return bench::run_workload(spec, q, &r.trace);
    });
    return r;
}

phase_counts count(std::vector<bench::op_record> const& ops, bool measured) {
    phase_counts c;
    for (auto const& o : ops) {
        if (o.measured != measured) continue;
        (o.is_push ? c.pushes : c.pops) += 1;
    }
    return c;
}

}  // namespace

TEST(Workload, MeasuredPairs) {
    EXPECT_EQ(bench::measured_pairs(workload_kind::constant_size, 8), 80u);
    EXPECT_EQ(bench::measured_pairs(workload_kind::monotone_constant_size, 8), 80u);
    EXPECT_EQ(bench::measured_pairs(workload_kind::heap_sort, 8), 8u);
    EXPECT_EQ(bench::measured_pairs(workload_kind::wiggle, 8), 24u);
    EXPECT_EQ(bench::measured_pairs(workload_kind::monotone_wiggle, 8), 24u);
    EXPECT_EQ(traced(workload_kind::constant_size, 8).metrics.measured_pairs, 80u);
}

TEST(Workload, HeapSortOpCounts) {
    auto const r = traced(workload_kind::heap_sort, 100);
    auto const m = count(r.trace.ops, true);
    EXPECT_EQ(m.pushes, 100u);
    EXPECT_EQ(m.pops, 100u);
    EXPECT_EQ(count(r.trace.ops, false).pushes + count(r.trace.ops, false).pops, 0u);
    // push^n then pop^n
    for (std::size_t i = 0; i < 100; ++i) EXPECT_TRUE(r.trace.ops[i].is_push);
    for (std::size_t i = 100; i < 200; ++i) EXPECT_FALSE(r.trace.ops[i].is_push);
}

TEST(Workload, HeapSortPopsSortedPushes) {
    auto const r = traced(workload_kind::heap_sort, 4);
    std::vector<std::uint64_t> pushed;
    std::vector<std::uint64_t> popped;
    for (auto const& o : r.trace.ops) (o.is_push ? pushed : popped).push_back(o.value);
    std::sort(pushed.begin(), pushed.end());
    EXPECT_EQ(popped, pushed);
}

TEST(Workload, WiggleOpCounts) {
    for (auto kind : {workload_kind::wiggle, workload_kind::monotone_wiggle}) {
        std::size_t const n = 50;
        auto const r = traced(kind, n);
        ASSERT_EQ(r.trace.ops.size(), 6 * n);
        phase_counts one;
        phase_counts two;
        for (std::size_t i = 0; i < 3 * n; ++i) (r.trace.ops[i].is_push ? one.pushes : one.pops)++;
        for (std::size_t i = 3 * n; i < 6 * n; ++i) (r.trace.ops[i].is_push ? two.pushes : two.pops)++;
        EXPECT_EQ(one.pushes, 2 * n);
        EXPECT_EQ(one.pops, n);
        EXPECT_EQ(two.pushes, n);
        EXPECT_EQ(two.pops, 2 * n);
        // push, pop, push / pop, push, pop
        EXPECT_TRUE(r.trace.ops[0].is_push);
        EXPECT_FALSE(r.trace.ops[1].is_push);
        EXPECT_TRUE(r.trace.ops[2].is_push);
        EXPECT_FALSE(r.trace.ops[3 * n].is_push);
        EXPECT_TRUE(r.trace.ops[3 * n + 1].is_push);
        EXPECT_FALSE(r.trace.ops[3 * n + 2].is_push);
        EXPECT_EQ(r.metrics.measured_pairs, 3 * n);
    }
}

TEST(Workload, ConstantSizeOpCountsAndSize) {
    for (auto kind : {workload_kind::constant_size, workload_kind::monotone_constant_size}) {
        std::size_t const n = 64;
        auto const r = traced(kind, n);
        auto const warm = count(r.trace.ops, false);
        auto const measured = count(r.trace.ops, true);
        EXPECT_EQ(warm.pushes, 2 * n);
        EXPECT_EQ(warm.pops, n);
        EXPECT_EQ(measured.pushes, 10 * n);
        EXPECT_EQ(measured.pops, 10 * n);
        // Size n before every measured pop-push pair.
        std::size_t size = 0;
        bool checked = false;
        for (std::size_t i = 0; i < r.trace.ops.size(); ++i) {
            auto const& o = r.trace.ops[i];
            if (o.measured && !o.is_push) {
                ASSERT_EQ(size, n) << "op " << i;
                ASSERT_TRUE(r.trace.ops[i + 1].is_push);
                checked = true;
            }
            size = o.is_push ? size + 1 : size - 1;
        }
        EXPECT_TRUE(checked);
        EXPECT_EQ(r.metrics.measured_pairs, 10 * n);
    }
}

TEST(Workload, NetZeroSizeAfterNonConstantKinds) {
    for (auto kind : {workload_kind::heap_sort, workload_kind::wiggle, workload_kind::monotone_wiggle}) {
        auto const r = traced(kind, 33);
        std::ptrdiff_t size = 0;
        for (auto const& o : r.trace.ops) size += o.is_push ? 1 : -1;
        EXPECT_EQ(size, 0) << bench::to_string(kind);
    }
}

TEST(Workload, MonotonePushesNeverBelowLastPop) {
    auto const r = traced(workload_kind::monotone_constant_size, 256);
    std::uint64_t last = 0;
    for (auto const& o : r.trace.ops) {
        if (o.is_push) {
            ASSERT_GE(o.value, last);
            ASSERT_LT(o.value - last, 256u);
        } else {
            last = o.value;
        }
    }
}

TEST(Workload, PoppedMultisetMatchesPushedPerPhase) {
    // Every queue, same workload: the multiset of pops equals what an oracle
    // pops from the same pushes.
    for (auto heap : queue_names) {
        auto const r = traced(workload_kind::wiggle, 200, std::string(heap), 4);
        qheap::testing::multiset_queue<std::uint64_t> ref;
        std::vector<std::uint64_t> got;
        std::vector<std::uint64_t> want;
        for (auto const& o : r.trace.ops) {
            if (o.is_push) {
                ref.push(o.value);
            } else {
                got.push_back(o.value);
                want.push_back(*ref.pop());
            }
        }
        EXPECT_EQ(got, want) << heap;
    }
}

TEST(Workload, UsesAllKeyBits) {
    auto const r = traced(workload_kind::heap_sort, 1000);
    std::uint64_t top = 0;
    for (auto const& o : r.trace.ops) top = std::max(top, o.value);
    EXPECT_GT(top, std::uint64_t{1} << 62);
    bench::workload_spec const spec{workload_kind::heap_sort, 1000, 32, 1};
    binary_heap<std::uint32_t> q;
    bench::run_trace t;
    bench::run_workload(spec, q, &t);
    std::uint64_t top32 = 0;
    for (auto const& o : t.ops) top32 = std::max(top32, o.value);
    EXPECT_GT(top32, std::uint64_t{1} << 30);
}

TEST(Workload, Errors) {
    binary_heap<std::uint64_t> q;
    q.push(1);
    bench::workload_spec spec{workload_kind::heap_sort, 16, 64, 1};
    try {
        bench::run_workload(spec, q);
        FAIL();
    } catch (error const& e) {
        EXPECT_EQ(e.code(), errc::queue_not_empty);
    }
    binary_heap<std::uint64_t> empty;
    spec.n = 1;
    EXPECT_THROW(bench::run_workload(spec, empty), error);
    spec.n = 16;
    spec.key_bits = 32;
    EXPECT_THROW(bench::run_workload(spec, empty), error);
}

namespace {

// Pops return keys near the top of the range, so the next monotone push
// cannot fit.
struct ceiling_queue {
    using value_type = std::uint32_t;
    std::size_t n = 0;
    void push(std::uint32_t) { ++n; }
    std::optional<std::uint32_t> pop() {
        if (n == 0) return std::nullopt;
        --n;
        return std::numeric_limits<std::uint32_t>::max() - 1;
    }
    std::optional<std::uint32_t> top() const { return std::nullopt; }
    std::size_t size() const { return n; }
    std::uint64_t comparison_count() const { return 0; }
};

}  // namespace

TEST(Workload, MonotoneOverflowIsReported) {
    bench::workload_spec const spec{workload_kind::monotone_wiggle, 1024, 32, 1};
    ceiling_queue q;
    try {
        bench::run_workload(spec, q);
        FAIL() << "no overflow";
    } catch (error const& e) {
        EXPECT_EQ(e.code(), errc::key_overflow);
    }
}

TEST(Workload, ComparisonsRepeatExactly) {
    bench::workload_spec const spec{workload_kind::constant_size, 2048, 64, 9};
    auto const a = bench::measure_once("scalar-quickheap", spec, {});
    auto const b = bench::measure_once("scalar-quickheap", spec, {});
    EXPECT_EQ(a.total_comparisons, b.total_comparisons);
    EXPECT_EQ(a.comparisons_per_pair_normalized, b.comparisons_per_pair_normalized);
    EXPECT_GT(a.nanos_per_fundamental_op, 0);
    EXPECT_TRUE(std::isfinite(a.nanos_per_fundamental_op));
}

TEST(Metrics, Normalization) {
    bench::metrics_record r;
    r.workload.n = 8;
    r.measured_pairs = 80;
    r.total_nanos = 6400;
    r.total_comparisons = 480;
    bench::normalize(r);
    EXPECT_NEAR(r.nanos_per_fundamental_op, 6400.0 / 240.0, 1e-12);
    EXPECT_NEAR(r.nanos_per_fundamental_op, 26.67, 0.005);
    EXPECT_DOUBLE_EQ(r.comparisons_per_pair_normalized, 2.0);
}

TEST(Sweep, EmptySizesGiveNoRows) {
    bench::sweep_params p;
    p.kinds = {workload_kind::heap_sort};
    p.heaps = {"binary-heap"};
    EXPECT_TRUE(bench::sweep(p).empty());
}

TEST(Sweep, CartesianRowsAndCallback) {
    bench::sweep_params p;
    p.kinds = {workload_kind::heap_sort, workload_kind::constant_size};
    p.heaps = {"binary-heap", "simd-quickheap"};
    p.n_values = {64, 128};
    p.seeds = {1, 2};
    p.repeats = 3;
    std::size_t seen = 0;
    auto const rows = bench::sweep(p, [&](bench::metrics_record const&) { ++seen; });
    EXPECT_EQ(rows.size(), 2u * 2u * 2u * 2u);
    EXPECT_EQ(seen, rows.size());
    EXPECT_EQ(rows[0].workload.seed, 1u);
    EXPECT_EQ(rows[1].workload.seed, 2u);
}

TEST(Sweep, RejectsUnknownHeap) {
    bench::sweep_params p;
    p.kinds = {workload_kind::heap_sort};
    p.heaps = {"nosuch"};
    p.n_values = {64};
    EXPECT_THROW(bench::sweep(p), error);
}

TEST(Sweep, PowersOfTwo) {
    EXPECT_EQ(bench::powers_of_two(10, 12), (std::vector<std::size_t>{1024, 2048, 4096}));
}

TEST(Csv, EmptyIsHeaderOnly) {
    auto const text = bench::emit_csv({});
    EXPECT_EQ(text, std::string(bench::csv_header) + "\n");
    EXPECT_TRUE(bench::parse_csv(text).empty());
}

TEST(Csv, OneRecordTwoLines) {
    bench::metrics_record r;
    r.heap = "binary-heap";
    r.workload = {workload_kind::wiggle, 1024, 32, 3};
    r.measured_pairs = 3072;
    r.total_nanos = 123456;
    r.total_comparisons = 33000;
    bench::normalize(r);
    std::vector<bench::metrics_record> const rows{r};
    auto const text = bench::emit_csv(rows);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(text.find(','), std::string("heap").size());
}

TEST(Csv, RoundTrip) {
    std::mt19937_64 rng(8);
    std::vector<bench::metrics_record> rows;
    for (int i = 0; i < 200; ++i) {
        bench::metrics_record r;
        r.heap = std::string(queue_names[rng() % queue_names.size()]);
        r.workload = {bench::all_workloads[rng() % 5], 2 + rng() % 100000, rng() % 2 ? 32u : 64u, rng()};
        r.measured_pairs = 1 + rng() % 1000000;
        r.total_nanos = rng() % 10000000000ULL;
        r.total_comparisons = rng() % 100000000ULL;
        bench::normalize(r);
        rows.push_back(r);
    }
    EXPECT_EQ(bench::parse_csv(bench::emit_csv(rows)), rows);
}

TEST(Csv, ParseErrorsCarryLineNumbers) {
    std::string text(bench::csv_header);
    text += "\nbinary-heap,heap-sort,8,64,1,8,100,10,1.0,2.0\nbinary-heap,heap-sort,x,64,1,8,100,10,1.0,2.0\n";
    try {
        bench::parse_csv(text);
        FAIL();
    } catch (error const& e) {
        EXPECT_EQ(e.code(), errc::malformed_line);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(bench::parse_csv("nope\n"), error);
}

TEST(Counts, SplitAddsUp) {
    bench::workload_spec const spec{workload_kind::monotone_constant_size, 4096, 64, 1};
    queue_options o;
    o.config.pivot = pivot_strategy::random;
    auto const c = bench::count_comparisons("scalar-quickheap", spec, o);
    auto const m = bench::measure_once("scalar-quickheap", spec, o);
    EXPECT_EQ(c.total_comparisons(), m.total_comparisons);
    EXPECT_GT(c.push_comparisons, 0u);
    EXPECT_GT(c.pop_comparisons, c.push_comparisons);
    EXPECT_NEAR(c.push_normalized() + c.pop_normalized(), c.normalized(), 1e-12);
}

TEST(Counts, CsvMarksNonQuickheapConfig) {
    bench::workload_spec const spec{workload_kind::heap_sort, 64, 64, 1};
    std::vector<bench::counts_record> const rows{bench::count_comparisons("binary-heap", spec, {})};
    auto const text = bench::emit_counts_csv(rows);
    EXPECT_NE(text.find("binary-heap,heap-sort,64,64,1,-,-,64,"), std::string::npos);
}
