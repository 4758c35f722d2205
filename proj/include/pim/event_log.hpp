#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pim {

using ActivityId = std::uint32_t;
using Trace = std::vector<ActivityId>;

/// Bidirectional activity-label table. Ids are dense and assigned in
/// first-appearance order, so they double as indices into per-activity arrays.
class ActivityTable {
public:
    ActivityId intern(std::string_view label);

    /// Id of an already-interned label, or npos.
    ActivityId find(std::string_view label) const;

    const std::string& label(ActivityId id) const;
    std::size_t size() const { return labels_.size(); }

    static constexpr ActivityId npos = static_cast<ActivityId>(-1);

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, ActivityId> ids_;
};

/// Multiset of trace variants with counts, plus a counter for empty traces.
/// Empty traces are never stored as a variant key. Immutable by convention
/// once ingestion finishes; sublogs produced by splitting share the parent's
/// activity table.
class EventLog {
public:
    EventLog();
    explicit EventLog(std::shared_ptr<ActivityTable> activities);

    void add_trace(const Trace& trace, std::uint64_t count = 1);
    void add_trace(const std::vector<std::string>& labels, std::uint64_t count = 1);
    void add_empty(std::uint64_t count = 1) { empty_count_ += count; }

    const std::map<Trace, std::uint64_t>& variants() const { return variants_; }
    std::uint64_t empty_count() const { return empty_count_; }

    ActivityTable& activities() { return *activities_; }
    const ActivityTable& activities() const { return *activities_; }
    std::shared_ptr<ActivityTable> activities_ptr() const { return activities_; }

    /// Activities that occur in at least one stored variant, ascending.
    std::vector<ActivityId> alphabet() const;

    /// |L|: stored traces plus empty traces.
    std::uint64_t total_traces() const { return non_empty_traces_ + empty_count_; }
    std::uint64_t non_empty_traces() const { return non_empty_traces_; }
    /// ||L||: total number of events.
    std::uint64_t total_events() const { return total_events_; }
    std::uint64_t distinct_variants() const { return variants_.size(); }

    bool empty() const { return variants_.empty() && empty_count_ == 0; }

    /// Occurrence count of one activity across all variants.
    std::uint64_t occurrences(ActivityId id) const;

    /// Ingestion diagnostics (e.g. XES events skipped for lacking a name).
    std::uint64_t warning_count() const { return warnings_; }
    void add_warnings(std::uint64_t n) { warnings_ += n; }

    /// Label-based equality: same variant multiset (compared by label
    /// sequences) and same empty-trace count. Id assignment may differ.
    bool operator==(const EventLog& other) const;

    /// Copy with all events of activities outside `keep` removed. Traces that
    /// become empty are added to the empty counter. `dropped_events` reports
    /// how many events were removed.
    EventLog project(const std::set<ActivityId>& keep, std::uint64_t* dropped_events = nullptr) const;

    /// Copy without the empty traces.
    EventLog without_empty_traces() const;

private:
    std::shared_ptr<ActivityTable> activities_;
    std::map<Trace, std::uint64_t> variants_;
    std::uint64_t empty_count_ = 0;
    std::uint64_t non_empty_traces_ = 0;
    std::uint64_t total_events_ = 0;
    std::uint64_t warnings_ = 0;
};

struct LogStats {
    std::uint64_t traces = 0;
    std::uint64_t events = 0;
    std::uint64_t alphabet_size = 0;
    std::uint64_t distinct_variants = 0;
    std::uint64_t empty_traces = 0;

    bool operator==(const LogStats&) const = default;
};

LogStats log_stats(const EventLog& log);

}  // namespace pim
