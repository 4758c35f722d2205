#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pim/cut_search.hpp"
#include "pim/event_log.hpp"
#include "pim/process_tree.hpp"

namespace pim {

struct DiscoveryOptions {
    /// Percentile of combined dfg+ifg edges retained at every recursion level.
    double filter_percent = 99.5;
    /// When set, the log is first projected onto the k most frequent
    /// activities (ties prefer the earlier-interned one).
    std::optional<std::uint32_t> max_activities;
    std::size_t exhaustive_limit = 12;
    /// Guard on the cut-recursion depth; 0 means the default |alphabet|+2.
    /// Tripping it signals a splitting bug, not bad input.
    std::size_t max_recursion_depth = 0;
    /// Record the k best cuts per step in the trace (0 = winners only).
    std::size_t debug_top_k = 0;
};

/// One recursion event, for debugging and golden tests.
struct DiscoveryStep {
    enum class Kind {
        base_leaf,
        base_silent,
        base_loop_leaf,
        skip_wrapper,
        cut,
        projection,  // activities dropped by filtering or the activity bound
    };

    Kind kind = Kind::cut;
    std::size_t depth = 0;
    std::uint64_t traces = 0;       // |L| including empty traces
    std::uint64_t events = 0;       // ||L||
    std::uint64_t alphabet = 0;     // current alphabet size
    std::string detail;             // leaf label or dropped activities
    std::optional<Cut> cut;         // kind == cut
    std::vector<Cut> candidates;    // top-k when requested
    std::uint64_t filtered_events = 0;  // events dropped when splitting by `cut`
};

struct DiscoveryResult {
    ProcessTree tree;
    std::vector<DiscoveryStep> steps;
};

ProcessTree discover(const EventLog& log, const DiscoveryOptions& options = {});
DiscoveryResult discover_with_trace(const EventLog& log, const DiscoveryOptions& options = {});

std::string trace_to_json(const DiscoveryResult& result, const ActivityTable& activities);

}  // namespace pim
