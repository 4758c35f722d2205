#include "pim/event_log.hpp"

#include <algorithm>

#include "pim/errors.hpp"

namespace pim {

ActivityId ActivityTable::intern(std::string_view label) {
    auto it = ids_.find(std::string(label));
    if (it != ids_.end()) {
        return it->second;
    }
    ActivityId id = static_cast<ActivityId>(labels_.size());
    labels_.emplace_back(label);
    ids_.emplace(labels_.back(), id);
    return id;
}

ActivityId ActivityTable::find(std::string_view label) const {
    auto it = ids_.find(std::string(label));
    return it == ids_.end() ? npos : it->second;
}

const std::string& ActivityTable::label(ActivityId id) const {
    if (id >= labels_.size()) {
        throw ParameterError("unknown activity id " + std::to_string(id));
    }
    return labels_[id];
}

EventLog::EventLog() : activities_(std::make_shared<ActivityTable>()) {}

EventLog::EventLog(std::shared_ptr<ActivityTable> activities)
    : activities_(std::move(activities)) {}

void EventLog::add_trace(const Trace& trace, std::uint64_t count) {
    if (count == 0) {
        return;
    }
    if (trace.empty()) {
        empty_count_ += count;
        return;
    }
    variants_[trace] += count;
    non_empty_traces_ += count;
    total_events_ += trace.size() * count;
}

void EventLog::add_trace(const std::vector<std::string>& labels, std::uint64_t count) {
    Trace trace;
    trace.reserve(labels.size());
    for (const auto& label : labels) {
        trace.push_back(activities_->intern(label));
    }
    add_trace(trace, count);
}

std::vector<ActivityId> EventLog::alphabet() const {
    std::set<ActivityId> seen;
    for (const auto& [trace, count] : variants_) {
        seen.insert(trace.begin(), trace.end());
    }
    return {seen.begin(), seen.end()};
}

std::uint64_t EventLog::occurrences(ActivityId id) const {
    std::uint64_t n = 0;
    for (const auto& [trace, count] : variants_) {
        n += count * static_cast<std::uint64_t>(std::count(trace.begin(), trace.end(), id));
    }
    return n;
}

bool EventLog::operator==(const EventLog& other) const {
    if (empty_count_ != other.empty_count_ || variants_.size() != other.variants_.size()) {
        return false;
    }
    auto labelled = [](const EventLog& log) {
        std::map<std::vector<std::string>, std::uint64_t> out;
        for (const auto& [trace, count] : log.variants_) {
            std::vector<std::string> labels;
            labels.reserve(trace.size());
            for (ActivityId id : trace) {
                labels.push_back(log.activities_->label(id));
            }
            out[std::move(labels)] += count;
        }
        return out;
    };
    return labelled(*this) == labelled(other);
}

EventLog EventLog::project(const std::set<ActivityId>& keep, std::uint64_t* dropped_events) const {
    EventLog result(activities_);
    result.empty_count_ = empty_count_;
    std::uint64_t dropped = 0;
    for (const auto& [trace, count] : variants_) {
        Trace projected;
        projected.reserve(trace.size());
        for (ActivityId id : trace) {
            if (keep.count(id)) {
                projected.push_back(id);
            }
        }
        dropped += (trace.size() - projected.size()) * count;
        result.add_trace(projected, count);
    }
    if (dropped_events != nullptr) {
        *dropped_events = dropped;
    }
    return result;
}

EventLog EventLog::without_empty_traces() const {
    EventLog result = *this;
    result.empty_count_ = 0;
    return result;
}

LogStats log_stats(const EventLog& log) {
    LogStats stats;
    stats.traces = log.total_traces();
    stats.events = log.total_events();
    stats.alphabet_size = log.alphabet().size();
    stats.distinct_variants = log.distinct_variants();
    stats.empty_traces = log.empty_count();
    return stats;
}

}  // namespace pim
