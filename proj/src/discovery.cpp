#include "pim/discovery.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pim/errors.hpp"
#include "pim/follows_graphs.hpp"
#include "pim/splitting.hpp"

namespace pim {

namespace {

class Discovery {
public:
    Discovery(const DiscoveryOptions& options, const ActivityTable& activities)
        : options_(options), activities_(activities) {
        search_options_.exhaustive_limit = options.exhaustive_limit;
    }

    ProcessTree run(const EventLog& log, std::size_t depth, std::size_t depth_limit) {
        if (depth > depth_limit) {
            throw InternalError(
                "recursion depth guard exceeded; the alphabet failed to shrink while splitting");
        }

        BaseCase bc = base_case(log);
        switch (bc.kind) {
            case BaseCase::Kind::silent:
                record_base(DiscoveryStep::Kind::base_silent, log, depth, "");
                return ProcessTree::make_silent();
            case BaseCase::Kind::leaf:
                record_base(DiscoveryStep::Kind::base_leaf, log, depth,
                            activities_.label(bc.activity));
                return ProcessTree::make_leaf(activities_.label(bc.activity));
            case BaseCase::Kind::loop_leaf: {
                record_base(DiscoveryStep::Kind::base_loop_leaf, log, depth,
                            activities_.label(bc.activity));
                std::vector<ProcessTree> children;
                children.push_back(ProcessTree::make_leaf(activities_.label(bc.activity)));
                children.push_back(ProcessTree::make_silent());
                return ProcessTree::make_op(Operator::loop, std::move(children));
            }
            case BaseCase::Kind::skip_wrapper: {
                // Re-entry on the same level: the empty traces are consumed,
                // so this cannot repeat without an intervening split.
                record_base(DiscoveryStep::Kind::skip_wrapper, log, depth, "");
                std::vector<ProcessTree> children;
                children.push_back(ProcessTree::make_silent());
                children.push_back(run(log.without_empty_traces(), depth, depth_limit));
                return ProcessTree::make_op(Operator::xor_choice, std::move(children));
            }
            case BaseCase::Kind::none:
                break;
        }

        // Filtering may disconnect activities entirely; their events are
        // infrequent behaviour and get projected out of the sublog, which may
        // re-trigger a base case.
        FollowsGraphs graphs = build_follows_graphs(log);
        FollowsGraphs filtered = filter_graphs(graphs, options_.filter_percent);
        if (filtered.nodes.size() < graphs.nodes.size()) {
            // The alphabet strictly shrinks, so re-entry on the same level
            // terminates.
            EventLog projected = project_onto(log, filtered.nodes, depth);
            return run(projected, depth, depth_limit);
        }

        std::size_t k = std::max<std::size_t>(1, options_.debug_top_k);
        std::vector<Cut> candidates = find_top_cuts(filtered, log_shape(log), search_options_, k);
        Cut cut = candidates.front();
        SplitResult parts = split(log, cut);

        DiscoveryStep step;
        step.kind = DiscoveryStep::Kind::cut;
        step.depth = depth;
        step.traces = log.total_traces();
        step.events = log.total_events();
        step.alphabet = log.alphabet().size();
        step.cut = cut;
        if (options_.debug_top_k > 0) {
            step.candidates = std::move(candidates);
        }
        step.filtered_events = parts.filtered_events;
        steps_.push_back(std::move(step));

        std::vector<ProcessTree> children;
        children.push_back(run(parts.left, depth + 1, depth_limit));
        children.push_back(run(parts.right, depth + 1, depth_limit));
        return ProcessTree::make_op(cut.op, std::move(children));
    }

    std::vector<DiscoveryStep> take_steps() { return std::move(steps_); }

private:
    void record_base(DiscoveryStep::Kind kind, const EventLog& log, std::size_t depth,
                     std::string detail) {
        DiscoveryStep step;
        step.kind = kind;
        step.depth = depth;
        step.traces = log.total_traces();
        step.events = log.total_events();
        step.alphabet = log.alphabet().size();
        step.detail = std::move(detail);
        steps_.push_back(std::move(step));
    }

    EventLog project_onto(const EventLog& log, const std::vector<ActivityId>& keep,
                          std::size_t depth) {
        std::set<ActivityId> kept(keep.begin(), keep.end());
        std::string dropped;
        for (ActivityId id : log.alphabet()) {
            if (!kept.count(id)) {
                if (!dropped.empty()) {
                    dropped += ",";
                }
                dropped += activities_.label(id);
            }
        }
        DiscoveryStep step;
        step.kind = DiscoveryStep::Kind::projection;
        step.depth = depth;
        step.traces = log.total_traces();
        step.events = log.total_events();
        step.alphabet = log.alphabet().size();
        step.detail = std::move(dropped);
        steps_.push_back(std::move(step));
        return log.project(kept);
    }

    DiscoveryOptions options_;
    CutSearchOptions search_options_;
    const ActivityTable& activities_;
    std::vector<DiscoveryStep> steps_;
};

// The k most frequent activities by occurrence count, ties broken towards
// the smaller id.
std::set<ActivityId> top_activities(const EventLog& log, std::uint32_t k) {
    std::vector<std::pair<std::uint64_t, ActivityId>> ranked;
    for (ActivityId id : log.alphabet()) {
        ranked.emplace_back(log.occurrences(id), id);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return a.second < b.second;
    });
    std::set<ActivityId> keep;
    for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
        keep.insert(ranked[i].second);
    }
    return keep;
}

}  // namespace

DiscoveryResult discover_with_trace(const EventLog& log, const DiscoveryOptions& options) {
    if (!(options.filter_percent >= 0.0 && options.filter_percent <= 100.0)) {
        throw ParameterError("filter percentage must lie in [0,100]");
    }
    if (options.max_activities.has_value() && *options.max_activities < 1) {
        throw ParameterError("the activity bound must be at least 1");
    }

    EventLog working = log;
    if (options.max_activities.has_value()) {
        working = log.project(top_activities(log, *options.max_activities));
    }

    std::size_t depth_limit = options.max_recursion_depth;
    if (depth_limit == 0) {
        // Every split strictly shrinks the alphabet on both sides, so the
        // cut-recursion depth cannot exceed the alphabet size.
        depth_limit = working.alphabet().size() + 2;
    }

    Discovery discovery(options, working.activities());
    DiscoveryResult result;
    result.tree = discovery.run(working, 0, depth_limit);
    result.steps = discovery.take_steps();
    return result;
}

ProcessTree discover(const EventLog& log, const DiscoveryOptions& options) {
    return discover_with_trace(log, options).tree;
}

std::string trace_to_json(const DiscoveryResult& result, const ActivityTable& activities) {
    std::ostringstream out;
    auto escape = [](const std::string& s) {
        std::string quoted;
        for (char c : s) {
            if (c == '"' || c == '\\') {
                quoted.push_back('\\');
            }
            quoted.push_back(c);
        }
        return quoted;
    };
    auto write_cut = [&](const Cut& cut) {
        out << "{\"op\": \"" << operator_name(cut.op) << "\", \"score\": " << cut.score
            << ", \"sigma1\": [";
        for (std::size_t i = 0; i < cut.sigma1.size(); ++i) {
            out << (i ? ", " : "") << '"' << escape(activities.label(cut.sigma1[i])) << '"';
        }
        out << "], \"sigma2\": [";
        for (std::size_t i = 0; i < cut.sigma2.size(); ++i) {
            out << (i ? ", " : "") << '"' << escape(activities.label(cut.sigma2[i])) << '"';
        }
        out << "]";
        if (cut.op == Operator::loop) {
            out << ", \"redo_starts\": [";
            for (std::size_t i = 0; i < cut.redo_starts.size(); ++i) {
                out << (i ? ", " : "") << '"' << escape(activities.label(cut.redo_starts[i])) << '"';
            }
            out << "], \"redo_ends\": [";
            for (std::size_t i = 0; i < cut.redo_ends.size(); ++i) {
                out << (i ? ", " : "") << '"' << escape(activities.label(cut.redo_ends[i])) << '"';
            }
            out << "]";
        }
        out << "}";
    };

    out << "[";
    for (std::size_t s = 0; s < result.steps.size(); ++s) {
        const DiscoveryStep& step = result.steps[s];
        if (s > 0) {
            out << ", ";
        }
        const char* kind = "";
        switch (step.kind) {
            case DiscoveryStep::Kind::base_leaf:
                kind = "leaf";
                break;
            case DiscoveryStep::Kind::base_silent:
                kind = "tau";
                break;
            case DiscoveryStep::Kind::base_loop_leaf:
                kind = "loop_leaf";
                break;
            case DiscoveryStep::Kind::skip_wrapper:
                kind = "skip";
                break;
            case DiscoveryStep::Kind::cut:
                kind = "cut";
                break;
            case DiscoveryStep::Kind::projection:
                kind = "projection";
                break;
        }
        out << "{\"kind\": \"" << kind << "\", \"depth\": " << step.depth
            << ", \"traces\": " << step.traces << ", \"events\": " << step.events
            << ", \"alphabet\": " << step.alphabet;
        if (!step.detail.empty()) {
            out << ", \"detail\": \"" << escape(step.detail) << "\"";
        }
        if (step.cut.has_value()) {
            out << ", \"cut\": ";
            write_cut(*step.cut);
            out << ", \"filtered_events\": " << step.filtered_events;
        }
        if (!step.candidates.empty()) {
            out << ", \"candidates\": [";
            for (std::size_t i = 0; i < step.candidates.size(); ++i) {
                if (i > 0) {
                    out << ", ";
                }
                write_cut(step.candidates[i]);
            }
            out << "]";
        }
        out << "}";
    }
    out << "]";
    return out.str();
}

}  // namespace pim
