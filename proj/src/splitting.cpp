#include "pim/splitting.hpp"

#include <algorithm>
#include <set>

#include "pim/errors.hpp"

namespace pim {

namespace {

enum class Side { left, right };

std::vector<Side> side_of_activity(const EventLog& log, const Cut& cut) {
    std::set<ActivityId> left(cut.sigma1.begin(), cut.sigma1.end());
    std::set<ActivityId> right(cut.sigma2.begin(), cut.sigma2.end());
    std::vector<Side> side(log.activities().size(), Side::left);
    for (ActivityId id : log.alphabet()) {
        if (left.count(id)) {
            side[id] = Side::left;
        } else if (right.count(id)) {
            side[id] = Side::right;
        } else {
            throw ParameterError("activity \"" + log.activities().label(id) +
                                 "\" is on neither side of the cut");
        }
    }
    return side;
}

void split_xor(const Trace& trace, std::uint64_t count, const std::vector<Side>& side,
               SplitResult& result) {
    std::uint64_t on_left = 0;
    for (ActivityId id : trace) {
        on_left += side[id] == Side::left ? 1 : 0;
    }
    // Majority side wins; ties go left. Events of the other side are
    // deviations and get dropped.
    bool to_left = 2 * on_left >= trace.size();
    Side keep = to_left ? Side::left : Side::right;
    Trace projected;
    projected.reserve(trace.size());
    for (ActivityId id : trace) {
        if (side[id] == keep) {
            projected.push_back(id);
        }
    }
    result.filtered_events += (trace.size() - projected.size()) * count;
    (to_left ? result.left : result.right).add_trace(projected, count);
}

void split_seq(const Trace& trace, std::uint64_t count, const std::vector<Side>& side,
               SplitResult& result) {
    // Choose the split index minimising misplaced events: right-side events
    // before the index plus left-side events at or after it. Ties take the
    // smallest index.
    std::size_t n = trace.size();
    std::size_t total_left = 0;
    for (ActivityId id : trace) {
        total_left += side[id] == Side::left ? 1 : 0;
    }
    std::size_t best_index = 0;
    std::size_t best_cost = total_left;  // cost at index 0: every left event is late
    std::size_t right_before = 0;
    std::size_t left_before = 0;
    for (std::size_t index = 1; index <= n; ++index) {
        if (side[trace[index - 1]] == Side::right) {
            ++right_before;
        } else {
            ++left_before;
        }
        std::size_t cost = right_before + (total_left - left_before);
        if (cost < best_cost) {
            best_cost = cost;
            best_index = index;
        }
    }
    Trace head, tail;
    for (std::size_t i = 0; i < n; ++i) {
        bool is_left = side[trace[i]] == Side::left;
        if (i < best_index && is_left) {
            head.push_back(trace[i]);
        } else if (i >= best_index && !is_left) {
            tail.push_back(trace[i]);
        }
    }
    result.filtered_events += best_cost * count;
    if (head.empty()) {
        result.left.add_empty(count);
    } else {
        result.left.add_trace(head, count);
    }
    if (tail.empty()) {
        result.right.add_empty(count);
    } else {
        result.right.add_trace(tail, count);
    }
}

void split_para(const Trace& trace, std::uint64_t count, const std::vector<Side>& side,
                SplitResult& result) {
    Trace head, tail;
    for (ActivityId id : trace) {
        (side[id] == Side::left ? head : tail).push_back(id);
    }
    if (head.empty()) {
        result.left.add_empty(count);
    } else {
        result.left.add_trace(head, count);
    }
    if (tail.empty()) {
        result.right.add_empty(count);
    } else {
        result.right.add_trace(tail, count);
    }
}

void split_loop(const Trace& trace, std::uint64_t count, const std::vector<Side>& side,
                SplitResult& result) {
    // Maximal runs alternate between body and redo. A trace must start and
    // end in a body run: a leading or trailing redo run leaves a zero-length
    // body segment behind, recorded as an empty trace on the left.
    std::size_t i = 0;
    bool expect_body = true;
    while (i < trace.size()) {
        Side run_side = side[trace[i]];
        std::size_t j = i;
        while (j < trace.size() && side[trace[j]] == run_side) {
            ++j;
        }
        Trace run(trace.begin() + i, trace.begin() + j);
        if (run_side == Side::left) {
            result.left.add_trace(run, count);
        } else {
            if (expect_body) {
                result.left.add_empty(count);  // missing body before this redo run
            }
            result.right.add_trace(run, count);
        }
        expect_body = run_side == Side::right;
        i = j;
    }
    if (expect_body) {
        result.left.add_empty(count);  // trace ended in a redo run
    }
}

}  // namespace

SplitResult split(const EventLog& log, const Cut& cut) {
    SplitResult result{EventLog(log.activities_ptr()), EventLog(log.activities_ptr()), 0};
    std::vector<Side> side = side_of_activity(log, cut);

    for (const auto& [trace, count] : log.variants()) {
        switch (cut.op) {
            case Operator::xor_choice:
                split_xor(trace, count, side, result);
                break;
            case Operator::sequence:
                split_seq(trace, count, side, result);
                break;
            case Operator::parallel:
                split_para(trace, count, side, result);
                break;
            case Operator::loop:
                split_loop(trace, count, side, result);
                break;
        }
    }
    result.left.add_empty(log.empty_count());
    result.right.add_empty(log.empty_count());
    return result;
}

BaseCase base_case(const EventLog& log) {
    std::vector<ActivityId> alphabet = log.alphabet();
    if (alphabet.empty()) {
        return {BaseCase::Kind::silent, 0};
    }
    if (2 * log.empty_count() > log.total_traces()) {
        return {BaseCase::Kind::skip_wrapper, 0};
    }
    if (alphabet.size() == 1) {
        ActivityId activity = alphabet.front();
        double mean_occurrences = static_cast<double>(log.total_events()) /
                                  static_cast<double>(log.non_empty_traces());
        if (mean_occurrences <= 1.5) {
            return {BaseCase::Kind::leaf, activity};
        }
        return {BaseCase::Kind::loop_leaf, activity};
    }
    return {BaseCase::Kind::none, 0};
}

}  // namespace pim
