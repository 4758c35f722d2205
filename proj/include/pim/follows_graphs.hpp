#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pim/event_log.hpp"

namespace pim {

using EdgeMap = std::map<std::pair<ActivityId, ActivityId>, std::uint64_t>;
using FreqMap = std::map<ActivityId, std::uint64_t>;

/// Directly-follows and strictly-indirectly-follows graphs with frequencies.
///
/// dfg counts occurrences of b immediately after a. ifg counts occurrences of
/// b with some a strictly earlier in the same trace and at least one event in
/// between; each occurrence of the target b is counted once per pair (a,b).
/// Self edges (a,a) are kept when they occur. Empty traces contribute nothing.
struct FollowsGraphs {
    EdgeMap dfg;
    EdgeMap ifg;
    FreqMap unary;  // |a|, from the log; untouched by filtering
    FreqMap start;  // frequency as first activity
    FreqMap end;    // frequency as last activity
    std::vector<ActivityId> nodes;  // ascending; shrinks under filtering

    std::uint64_t dfg_count(ActivityId a, ActivityId b) const;
    std::uint64_t ifg_count(ActivityId a, ActivityId b) const;
    std::uint64_t unary_count(ActivityId a) const;

    bool has_node(ActivityId a) const;
};

FollowsGraphs build_follows_graphs(const EventLog& log);

/// Uniform percentile filter. The combined dfg+ifg edge list is sorted by
/// frequency descending; the top ceil(f/100 * E) edges are retained plus the
/// whole tie group of the last retained edge. Nodes that had incident edges
/// and lost them all are removed (unless the node set would need them as the
/// only activity); nodes that never had edges stay.
FollowsGraphs filter_graphs(const FollowsGraphs& graphs, double filter_percent);

/// DOT rendering of the directly-follows graph, edge labels = frequencies.
/// When `removed_overlay` is given (the pre-filter graphs), edges missing
/// from `graphs` are drawn dashed in red.
std::string dfg_to_dot(const FollowsGraphs& graphs, const ActivityTable& activities,
                       const FollowsGraphs* removed_overlay = nullptr);

}  // namespace pim
