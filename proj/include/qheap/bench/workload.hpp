#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qheap/error.hpp"
#include "qheap/key.hpp"
#include "qheap/queue.hpp"

namespace qheap::bench {

enum class workload_kind { heap_sort, wiggle, constant_size, monotone_wiggle, monotone_constant_size };

inline constexpr std::array<workload_kind, 5> all_workloads = {
    workload_kind::heap_sort, workload_kind::wiggle, workload_kind::constant_size,
    workload_kind::monotone_wiggle, workload_kind::monotone_constant_size};

constexpr std::string_view to_string(workload_kind k) noexcept {
    switch (k) {
        case workload_kind::heap_sort: return "heap-sort";
        case workload_kind::wiggle: return "wiggle";
        case workload_kind::constant_size: return "constant-size";
        case workload_kind::monotone_wiggle: return "monotone-wiggle";
        case workload_kind::monotone_constant_size: return "monotone-constant-size";
    }
    return "?";
}

inline std::optional<workload_kind> parse_workload_kind(std::string_view s) {
    for (auto k : all_workloads) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

constexpr bool is_monotone(workload_kind k) noexcept {
    return k == workload_kind::monotone_wiggle || k == workload_kind::monotone_constant_size;
}

struct workload_spec {
    workload_kind kind = workload_kind::constant_size;
    std::size_t n = 1024;
    unsigned key_bits = 64;
    std::uint64_t seed = 1;

    void validate() const {
        if (n < 2) throw error(errc::invalid_config, "workload n must be >= 2");
        if (key_bits != 32 && key_bits != 64) {
            throw error(errc::invalid_config, "key bits must be 32 or 64");
        }
    }

    bool operator==(workload_spec const&) const = default;
};

// pop∘push pairs in the measured phase.
constexpr std::uint64_t measured_pairs(workload_kind kind, std::size_t n) noexcept {
    switch (kind) {
        case workload_kind::heap_sort: return n;
        case workload_kind::wiggle:
        case workload_kind::monotone_wiggle: return 3 * static_cast<std::uint64_t>(n);
        case workload_kind::constant_size:
        case workload_kind::monotone_constant_size: return 10 * static_cast<std::uint64_t>(n);
    }
    return 0;
}

struct metrics_record {
    std::string heap;
    workload_spec workload;
    std::uint64_t measured_pairs = 0;
    std::uint64_t total_nanos = 0;
    std::uint64_t total_comparisons = 0;
    double nanos_per_fundamental_op = 0;
    double comparisons_per_pair_normalized = 0;

    bool operator==(metrics_record const&) const = default;
};

inline double fundamental_ops(std::uint64_t pairs, std::size_t n) {
    return static_cast<double>(pairs) * std::log2(static_cast<double>(n));
}

// Fills the two derived columns from the raw ones.
inline void normalize(metrics_record& r) {
    double const denom = fundamental_ops(r.measured_pairs, r.workload.n);
    r.nanos_per_fundamental_op = static_cast<double>(r.total_nanos) / denom;
    r.comparisons_per_pair_normalized = static_cast<double>(r.total_comparisons) / denom;
}

struct op_record {
    bool is_push;
    bool measured;
    std::uint64_t value;
};

// Optional instrumentation for run_workload. Filling it costs a counter
// read per operation, so timed sweeps leave it off.
struct run_trace {
    bool record_ops = true;
    std::vector<op_record> ops;
    std::uint64_t push_comparisons = 0;  // measured phase only
    std::uint64_t pop_comparisons = 0;
};

namespace detail {

inline void keep(std::uint64_t value) {
    asm volatile("" : : "r"(value) : "memory");
}

template <priority_queue Q, bool Monotone, bool Traced>
class driver {
    using K = typename Q::value_type;

   public:
    driver(Q& q, workload_spec const& spec, run_trace* trace)
        : q_(q), spec_(spec), rng_(spec.seed), trace_(trace) {
        if constexpr (!Monotone) {
            std::size_t pushes = 0;
            switch (spec.kind) {
                case workload_kind::heap_sort: pushes = spec.n; break;
                case workload_kind::wiggle: pushes = 3 * spec.n; break;
                case workload_kind::constant_size: pushes = 12 * spec.n; break;
                default: break;
            }
            values_.resize(pushes);
            for (auto& v : values_) v = draw_uniform();
        }
    }

    void push() {
        K const value = next_value();
        if constexpr (Traced) {
            auto const before = q_.comparison_count();
            q_.push(value);
            if (measured_) trace_->push_comparisons += q_.comparison_count() - before;
            if (trace_->record_ops) {
                trace_->ops.push_back({true, measured_, static_cast<std::uint64_t>(value)});
            }
        } else {
            q_.push(value);
        }
    }

    void pop() {
        std::optional<K> result;
        if constexpr (Traced) {
            auto const before = q_.comparison_count();
            result = q_.pop();
            if (measured_) trace_->pop_comparisons += q_.comparison_count() - before;
        } else {
            result = q_.pop();
        }
        if (!result) {
            throw std::logic_error("queue ran empty inside a workload");
        }
        last_popped_ = *result;
        checksum_ += static_cast<std::uint64_t>(*result);
        if constexpr (Traced) {
            if (trace_->record_ops) {
                trace_->ops.push_back({false, measured_, static_cast<std::uint64_t>(*result)});
            }
        }
    }

    void set_measured(bool m) { measured_ = m; }
    std::uint64_t checksum() const { return checksum_; }

   private:
    K draw_uniform() {
        auto const bits = rng_();
        if constexpr (sizeof(K) == 4) {
            return static_cast<K>(bits >> 32);
        } else {
            return static_cast<K>(bits);
        }
    }

    K next_value() {
        if constexpr (Monotone) {
            auto const step = static_cast<K>(uniform_below(rng_, spec_.n));
            K value;
            if (__builtin_add_overflow(last_popped_, step, &value)) {
                throw error(errc::key_overflow, "monotone key exceeded the key width");
            }
            return value;
        } else {
            return values_[next_++];
        }
    }

    Q& q_;
    workload_spec spec_;
    rng_type rng_;
    run_trace* trace_;
    std::vector<K> values_;
    std::size_t next_ = 0;
    K last_popped_ = 0;
    bool measured_ = false;
    std::uint64_t checksum_ = 0;
};

template <typename D>
void triple_grow(D& d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        d.push();
        d.pop();
        d.push();
    }
}

template <typename D>
void triple_shrink(D& d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        d.pop();
        d.push();
        d.pop();
    }
}

template <priority_queue Q, bool Monotone, bool Traced>
metrics_record run(workload_spec const& spec, Q& q, run_trace* trace) {
    driver<Q, Monotone, Traced> d(q, spec, trace);
    std::size_t const n = spec.n;
    using clock = std::chrono::steady_clock;

    if (spec.kind == workload_kind::constant_size ||
        spec.kind == workload_kind::monotone_constant_size) {
        triple_grow(d, n);
    }
    auto const comparisons_before = q.comparison_count();
    d.set_measured(true);
    auto const start = clock::now();
    switch (spec.kind) {
        case workload_kind::heap_sort:
            for (std::size_t i = 0; i < n; ++i) d.push();
            for (std::size_t i = 0; i < n; ++i) d.pop();
            break;
        case workload_kind::wiggle:
        case workload_kind::monotone_wiggle:
            triple_grow(d, n);
            triple_shrink(d, n);
            break;
        case workload_kind::constant_size:
        case workload_kind::monotone_constant_size:
            for (std::size_t i = 0; i < 10 * n; ++i) {
                d.pop();
                d.push();
            }
            break;
    }
    auto const stop = clock::now();
    keep(d.checksum());

    metrics_record r;
    r.workload = spec;
    r.measured_pairs = measured_pairs(spec.kind, n);
    r.total_nanos = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    r.total_comparisons = q.comparison_count() - comparisons_before;
    normalize(r);
    return r;
}

}  // namespace detail

// Runs one workload on an empty queue. The key width of Q must match
// spec.key_bits. Non-monotone push values are generated before the timed
// region; monotone ones depend on pops and are generated inline.
template <priority_queue Q>
metrics_record run_workload(workload_spec const& spec, Q& queue, run_trace* trace = nullptr) {
    using K = typename Q::value_type;
    spec.validate();
    if (spec.key_bits != 8 * sizeof(K)) {
        throw error(errc::invalid_config, "queue key width does not match workload key bits");
    }
    if (queue.size() != 0) {
        throw error(errc::queue_not_empty, "workloads start from an empty queue");
    }
    bool const monotone = is_monotone(spec.kind);
    if (trace != nullptr) {
        return monotone ? detail::run<Q, true, true>(spec, queue, trace)
                        : detail::run<Q, false, true>(spec, queue, trace);
    }
    return monotone ? detail::run<Q, true, false>(spec, queue, nullptr)
                    : detail::run<Q, false, false>(spec, queue, nullptr);
}

}  // namespace qheap::bench
