#pragma once

#include <cstdint>

#include "pim/cut_search.hpp"
#include "pim/event_log.hpp"

namespace pim {

/// Outcome of splitting a log by a cut. Events deviating from the cut are
/// filtered out and counted; both children inherit the parent's empty traces,
/// and projections or segmentations that come up empty add new ones.
struct SplitResult {
    EventLog left;
    EventLog right;
    std::uint64_t filtered_events = 0;
};

SplitResult split(const EventLog& log, const Cut& cut);

/// Base-case decision for one recursion step.
struct BaseCase {
    enum class Kind {
        none,         // no base case; find a cut
        silent,       // no activities: tau
        leaf,         // single activity, few repetitions
        loop_leaf,    // single activity repeating: loop(a, tau)
        skip_wrapper, // majority of traces are empty: xor(tau, recurse on rest)
    };

    Kind kind = Kind::none;
    ActivityId activity = 0;  // leaf and loop_leaf
};

/// Applies, in order: the no-activity case, the empty-trace majority test
/// (empty_count > 0.5 * |L| over all traces), and the single-activity case
/// (leaf when the activity averages at most 1.5 occurrences per non-empty
/// trace, a single-activity loop otherwise).
BaseCase base_case(const EventLog& log);

}  // namespace pim
