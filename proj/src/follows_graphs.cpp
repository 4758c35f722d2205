#include "pim/follows_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pim/errors.hpp"

namespace pim {

std::uint64_t FollowsGraphs::dfg_count(ActivityId a, ActivityId b) const {
    auto it = dfg.find({a, b});
    return it == dfg.end() ? 0 : it->second;
}

std::uint64_t FollowsGraphs::ifg_count(ActivityId a, ActivityId b) const {
    auto it = ifg.find({a, b});
    return it == ifg.end() ? 0 : it->second;
}

std::uint64_t FollowsGraphs::unary_count(ActivityId a) const {
    auto it = unary.find(a);
    return it == unary.end() ? 0 : it->second;
}

bool FollowsGraphs::has_node(ActivityId a) const {
    return std::binary_search(nodes.begin(), nodes.end(), a);
}

FollowsGraphs build_follows_graphs(const EventLog& log) {
    FollowsGraphs g;
    for (const auto& [trace, count] : log.variants()) {
        g.start[trace.front()] += count;
        g.end[trace.back()] += count;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            g.unary[trace[i]] += count;
            if (i > 0) {
                g.dfg[{trace[i - 1], trace[i]}] += count;
            }
        }
        // Indirect follows: the target at position j pairs once with every
        // activity whose first occurrence is at position <= j-2. Activities in
        // first-occurrence order make the qualifying set a growing prefix.
        std::vector<ActivityId> by_first;
        std::vector<std::size_t> first_pos;
        std::set<ActivityId> seen;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            if (seen.insert(trace[i]).second) {
                by_first.push_back(trace[i]);
                first_pos.push_back(i);
            }
        }
        std::size_t qualified = 0;
        for (std::size_t j = 2; j < trace.size(); ++j) {
            while (qualified < by_first.size() && first_pos[qualified] + 2 <= j) {
                ++qualified;
            }
            for (std::size_t k = 0; k < qualified; ++k) {
                g.ifg[{by_first[k], trace[j]}] += count;
            }
        }
    }
    std::set<ActivityId> nodes;
    for (const auto& [id, n] : g.unary) {
        nodes.insert(id);
    }
    g.nodes.assign(nodes.begin(), nodes.end());
    return g;
}

FollowsGraphs filter_graphs(const FollowsGraphs& graphs, double filter_percent) {
    if (!(filter_percent >= 0.0 && filter_percent <= 100.0)) {
        throw ParameterError("filter percentage must lie in [0,100], got " +
                             std::to_string(filter_percent));
    }

    std::vector<std::uint64_t> freqs;
    freqs.reserve(graphs.dfg.size() + graphs.ifg.size());
    for (const auto& [edge, f] : graphs.dfg) {
        freqs.push_back(f);
    }
    for (const auto& [edge, f] : graphs.ifg) {
        freqs.push_back(f);
    }

    FollowsGraphs result;
    result.unary = graphs.unary;
    result.start = graphs.start;
    result.end = graphs.end;

    std::uint64_t threshold = 0;  // retain every edge with frequency >= threshold
    if (!freqs.empty()) {
        std::sort(freqs.begin(), freqs.end(), std::greater<>());
        auto keep = static_cast<std::size_t>(
            std::ceil(filter_percent / 100.0 * static_cast<double>(freqs.size())));
        if (keep == 0) {
            threshold = freqs.front() + 1;  // retain nothing
        } else {
            keep = std::min(keep, freqs.size());
            threshold = freqs[keep - 1];  // whole tie group of the last retained edge
        }
    }

    for (const auto& [edge, f] : graphs.dfg) {
        if (f >= threshold) {
            result.dfg.emplace(edge, f);
        }
    }
    for (const auto& [edge, f] : graphs.ifg) {
        if (f >= threshold) {
            result.ifg.emplace(edge, f);
        }
    }

    std::set<ActivityId> had_edge;
    for (const auto& [edge, f] : graphs.dfg) {
        had_edge.insert(edge.first);
        had_edge.insert(edge.second);
    }
    for (const auto& [edge, f] : graphs.ifg) {
        had_edge.insert(edge.first);
        had_edge.insert(edge.second);
    }
    std::set<ActivityId> has_edge;
    for (const auto& [edge, f] : result.dfg) {
        has_edge.insert(edge.first);
        has_edge.insert(edge.second);
    }
    for (const auto& [edge, f] : result.ifg) {
        has_edge.insert(edge.first);
        has_edge.insert(edge.second);
    }

    for (ActivityId node : graphs.nodes) {
        bool disconnected = had_edge.count(node) != 0 && has_edge.count(node) == 0;
        if (disconnected && graphs.nodes.size() > 1) {
            result.unary.erase(node);
            result.start.erase(node);
            result.end.erase(node);
            continue;
        }
        result.nodes.push_back(node);
    }
    return result;
}

std::string dfg_to_dot(const FollowsGraphs& graphs, const ActivityTable& activities,
                       const FollowsGraphs* removed_overlay) {
    std::ostringstream out;
    out << "digraph dfg {\n";
    out << "  rankdir=TB;\n";
    out << "  node [shape=box];\n";

    const FollowsGraphs& node_source = removed_overlay != nullptr ? *removed_overlay : graphs;
    for (ActivityId node : node_source.nodes) {
        out << "  n" << node << " [label=\"" << activities.label(node);
        auto it = node_source.unary.find(node);
        if (it != node_source.unary.end()) {
            out << " (" << it->second << ")";
        }
        out << "\"];\n";
    }
    for (const auto& [edge, f] : graphs.dfg) {
        out << "  n" << edge.first << " -> n" << edge.second << " [label=\"" << f << "\"];\n";
    }
    if (removed_overlay != nullptr) {
        for (const auto& [edge, f] : removed_overlay->dfg) {
            if (graphs.dfg.count(edge) == 0) {
                out << "  n" << edge.first << " -> n" << edge.second << " [label=\"" << f
                    << "\", style=dashed, color=red];\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace pim
