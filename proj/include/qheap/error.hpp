#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qheap {

enum class errc {
    invalid_config,
    capability_unavailable,
    unknown_name,
    queue_not_empty,
    key_overflow,
    priority_overflow,
    malformed_line,
    id_out_of_range,
    arc_count_mismatch,
    source_out_of_range,
    invalid_graph,
    io_failure,
};

constexpr std::string_view to_string(errc code) noexcept {
    switch (code) {
        case errc::invalid_config: return "invalid-config";
        case errc::capability_unavailable: return "capability-unavailable";
        case errc::unknown_name: return "unknown-name";
        case errc::queue_not_empty: return "queue-not-empty";
        case errc::key_overflow: return "key-overflow";
        case errc::priority_overflow: return "priority-overflow";
        case errc::malformed_line: return "malformed-line";
        case errc::id_out_of_range: return "id-out-of-range";
        case errc::arc_count_mismatch: return "arc-count-mismatch";
        case errc::source_out_of_range: return "source-out-of-range";
        case errc::invalid_graph: return "invalid-graph";
        case errc::io_failure: return "io-failure";
    }
    return "unknown";
}

// All library failures are reported through this type; code() is stable,
// what() carries the human-readable detail.
class error : public std::runtime_error {
   public:
    error(errc code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail),
          code_(code) {}

    errc code() const noexcept { return code_; }

   private:
    errc code_;
};

}  // namespace qheap
