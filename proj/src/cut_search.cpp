#include "pim/cut_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "pim/errors.hpp"

namespace pim {

namespace {

ScoreKind score_kind_for(Operator op) {
    switch (op) {
        case Operator::xor_choice:
            return ScoreKind::xor_choice;
        case Operator::sequence:
            return ScoreKind::sequence;
        case Operator::parallel:
            return ScoreKind::parallel;
        case Operator::loop:
            break;
    }
    throw InternalError("loop cuts are aggregated separately");
}

std::vector<std::size_t> table_indices(const std::vector<ActivityId>& ids, const ScoreTable& table) {
    std::vector<std::size_t> indices;
    indices.reserve(ids.size());
    for (ActivityId id : ids) {
        std::size_t index = table.index_of(id);
        if (index == ScoreTable::npos) {
            throw ParameterError("activity id " + std::to_string(id) + " is not in the score table");
        }
        indices.push_back(index);
    }
    return indices;
}

void require_partition(const std::vector<ActivityId>& sigma1, const std::vector<ActivityId>& sigma2) {
    if (sigma1.empty() || sigma2.empty()) {
        throw ParameterError("cut sides must be non-empty");
    }
}

double mean(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_stddev(const std::vector<double>& values, double mu) {
    double sum = 0.0;
    for (double v : values) {
        sum += (v - mu) * (v - mu);
    }
    return std::sqrt(sum / static_cast<double>(values.size()));
}

}  // namespace

const char* operator_name(Operator op) {
    switch (op) {
        case Operator::xor_choice:
            return "xor";
        case Operator::sequence:
            return "seq";
        case Operator::parallel:
            return "and";
        case Operator::loop:
            return "loop";
    }
    return "?";
}

const char* operator_glyph(Operator op) {
    switch (op) {
        case Operator::xor_choice:
            return "\xc3\x97";  // ×
        case Operator::sequence:
            return "\xe2\x86\x92";  // →
        case Operator::parallel:
            return "\xe2\x88\xa7";  // ∧
        case Operator::loop:
            return "\xe2\x86\xba";  // ↺
    }
    return "?";
}

std::string cut_to_string(const Cut& cut, const ActivityTable& activities) {
    std::ostringstream out;
    auto write_set = [&](const std::vector<ActivityId>& ids) {
        out << "{";
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i > 0) {
                out << ",";
            }
            out << activities.label(ids[i]);
        }
        out << "}";
    };
    out << "(" << operator_name(cut.op) << ", ";
    write_set(cut.sigma1);
    out << ", ";
    write_set(cut.sigma2);
    if (cut.op == Operator::loop) {
        out << ", ";
        write_set(cut.redo_starts);
        out << ", ";
        write_set(cut.redo_ends);
    }
    out << ")";
    return out.str();
}

LogShape log_shape(const EventLog& log) {
    LogShape shape;
    shape.trace_count = log.non_empty_traces();
    shape.event_count = log.total_events();
    shape.alphabet_size = log.alphabet().size();
    return shape;
}

double repetition_factor(const LogShape& shape) {
    if (shape.event_count == 0) {
        throw ParameterError("repetition factor needs a log with events");
    }
    return static_cast<double>(shape.trace_count) /
           (static_cast<double>(shape.event_count) / static_cast<double>(shape.alphabet_size));
}

double aggregate_xor_seq(Operator op, const std::vector<ActivityId>& sigma1,
                         const std::vector<ActivityId>& sigma2, const ScoreTable& table) {
    if (op != Operator::xor_choice && op != Operator::sequence) {
        throw ParameterError("aggregate_xor_seq handles xor and sequence cuts only");
    }
    require_partition(sigma1, sigma2);
    ScoreKind kind = score_kind_for(op);
    std::vector<std::size_t> left = table_indices(sigma1, table);
    std::vector<std::size_t> right = table_indices(sigma2, table);
    std::vector<double> scores;
    scores.reserve(left.size() * right.size());
    for (std::size_t a : left) {
        for (std::size_t b : right) {
            scores.push_back(table.at(kind, a, b));
        }
    }
    double mu = mean(scores);
    return mu - population_stddev(scores, mu);
}

double aggregate_para(const std::vector<ActivityId>& sigma1, const std::vector<ActivityId>& sigma2,
                      const ScoreTable& table, const LogShape& shape) {
    require_partition(sigma1, sigma2);
    std::vector<std::size_t> left = table_indices(sigma1, table);
    std::vector<std::size_t> right = table_indices(sigma2, table);
    double sum = 0.0;
    for (std::size_t a : left) {
        for (std::size_t b : right) {
            sum += table.at(ScoreKind::parallel, a, b);
        }
    }
    double mu = sum / static_cast<double>(left.size() * right.size());
    return mu * std::min(repetition_factor(shape), 1.0);
}

double aggregate_loop(const std::vector<ActivityId>& sigma1, const std::vector<ActivityId>& sigma2,
                      const std::vector<ActivityId>& redo_starts,
                      const std::vector<ActivityId>& redo_ends, const ScoreTable& table,
                      const FollowsGraphs& graphs, const LogShape& shape) {
    require_partition(sigma1, sigma2);
    if (redo_starts.empty() || redo_ends.empty()) {
        throw ParameterError("loop cuts need non-empty redo entry and exit sets");
    }

    using IndexPair = std::pair<std::size_t, std::size_t>;
    std::set<IndexPair> single;  // enter and exit pairs, scored with loop_single

    std::vector<std::size_t> end_indices;
    for (const auto& [id, f] : graphs.end) {
        std::size_t index = table.index_of(id);
        if (index != ScoreTable::npos) {
            end_indices.push_back(index);
        }
    }
    std::vector<std::size_t> start_indices;
    for (const auto& [id, f] : graphs.start) {
        std::size_t index = table.index_of(id);
        if (index != ScoreTable::npos) {
            start_indices.push_back(index);
        }
    }
    for (std::size_t end : end_indices) {
        for (std::size_t s2 : table_indices(redo_starts, table)) {
            single.insert({end, s2});
        }
    }
    for (std::size_t e2 : table_indices(redo_ends, table)) {
        for (std::size_t start : start_indices) {
            single.insert({e2, start});
        }
    }

    std::vector<double> scores;
    for (const auto& [a, b] : single) {
        scores.push_back(table.at(ScoreKind::loop_single, a, b));
    }
    for (std::size_t a : table_indices(sigma1, table)) {
        for (std::size_t b : table_indices(sigma2, table)) {
            if (single.count({a, b}) == 0) {
                scores.push_back(table.at(ScoreKind::loop_indirect, a, b));
            }
        }
    }

    double mu = mean(scores);
    return mu + mu * (1.0 - std::min(repetition_factor(shape), 1.0));
}

bool cut_preferred(const Cut& a, const Cut& b) {
    if (a.score != b.score) {
        return a.score > b.score;
    }
    if (a.op != b.op) {
        return static_cast<int>(a.op) < static_cast<int>(b.op);
    }
    if (a.sigma1 != b.sigma1) {
        return a.sigma1 < b.sigma1;
    }
    if (a.sigma2 != b.sigma2) {
        return a.sigma2 < b.sigma2;
    }
    if (a.redo_starts != b.redo_starts) {
        return a.redo_starts < b.redo_starts;
    }
    return a.redo_ends < b.redo_ends;
}

namespace {

// Shared state for one cut search: the score table, the loop entry/exit
// derivation, and candidate bookkeeping.
class CutSearch {
public:
    CutSearch(const FollowsGraphs& graphs, const LogShape& shape)
        : graphs_(graphs), shape_(shape), table_(graphs), nodes_(graphs.nodes) {}

    std::size_t node_count() const { return nodes_.size(); }

    // side[i] == true puts nodes_[i] into sigma1.
    Cut evaluate(Operator op, const std::vector<bool>& side) const {
        Cut cut;
        cut.op = op;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            (side[i] ? cut.sigma1 : cut.sigma2).push_back(nodes_[i]);
        }
        require_partition(cut.sigma1, cut.sigma2);
        switch (op) {
            case Operator::xor_choice:
            case Operator::sequence:
                cut.score = aggregate_xor_seq(op, cut.sigma1, cut.sigma2, table_);
                break;
            case Operator::parallel:
                cut.score = aggregate_para(cut.sigma1, cut.sigma2, table_, shape_);
                break;
            case Operator::loop: {
                derive_redo_sets(cut);
                cut.score = aggregate_loop(cut.sigma1, cut.sigma2, cut.redo_starts, cut.redo_ends,
                                           table_, graphs_, shape_);
                break;
            }
        }
        return cut;
    }

    void offer(std::vector<Cut>& best, std::size_t k, Cut cut) const {
        auto pos = std::lower_bound(best.begin(), best.end(), cut, cut_preferred);
        if (pos == best.end() && best.size() >= k) {
            return;
        }
        // Equal cuts sort adjacently, so converging climbs dedupe here.
        if (pos != best.end() && pos->score == cut.score && pos->op == cut.op &&
            pos->sigma1 == cut.sigma1) {
            return;
        }
        best.insert(pos, std::move(cut));
        if (best.size() > k) {
            best.pop_back();
        }
    }

    // Redo entries are the sigma2 activities reached by a directly-follows
    // edge from sigma1; redo exits feed such an edge back. Falls back to all
    // of sigma2 when the border is empty.
    void derive_redo_sets(Cut& cut) const {
        std::set<ActivityId> in_sigma1(cut.sigma1.begin(), cut.sigma1.end());
        std::set<ActivityId> in_sigma2(cut.sigma2.begin(), cut.sigma2.end());
        std::set<ActivityId> starts;
        std::set<ActivityId> ends;
        for (const auto& [edge, f] : graphs_.dfg) {
            if (in_sigma1.count(edge.first) && in_sigma2.count(edge.second)) {
                starts.insert(edge.second);
            }
            if (in_sigma2.count(edge.first) && in_sigma1.count(edge.second)) {
                ends.insert(edge.first);
            }
        }
        cut.redo_starts.assign(starts.begin(), starts.end());
        cut.redo_ends.assign(ends.begin(), ends.end());
        if (cut.redo_starts.empty()) {
            cut.redo_starts = cut.sigma2;
        }
        if (cut.redo_ends.empty()) {
            cut.redo_ends = cut.sigma2;
        }
    }

    const FollowsGraphs& graphs() const { return graphs_; }
    const std::vector<ActivityId>& nodes() const { return nodes_; }

private:
    const FollowsGraphs& graphs_;
    LogShape shape_;
    ScoreTable table_;
    std::vector<ActivityId> nodes_;
};

constexpr Operator kAllOperators[] = {Operator::xor_choice, Operator::sequence,
                                      Operator::parallel, Operator::loop};

void exhaustive_search(const CutSearch& search, std::size_t k, std::vector<Cut>& best) {
    std::size_t n = search.node_count();
    std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<bool> side(n);
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
            side[i] = (mask >> i) & 1;
        }
        // Symmetric operators are evaluated once, with the canonical
        // orientation putting the smallest activity into sigma1.
        bool canonical = (mask & 1) != 0;
        for (Operator op : kAllOperators) {
            if ((op == Operator::xor_choice || op == Operator::parallel) && !canonical) {
                continue;
            }
            search.offer(best, k, search.evaluate(op, side));
        }
    }
}

// Union-find over node indices, for the weakly-connected-component seeds.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

std::vector<std::vector<bool>> seed_partitions(const CutSearch& search) {
    const std::vector<ActivityId>& nodes = search.nodes();
    std::size_t n = nodes.size();
    auto index_of = [&](ActivityId id) {
        return static_cast<std::size_t>(
            std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };

    std::vector<std::vector<bool>> seeds;
    auto add_seed = [&](const std::vector<bool>& side) {
        bool any = false;
        bool all = true;
        for (bool s : side) {
            any = any || s;
            all = all && s;
        }
        if (any && !all) {
            seeds.push_back(side);
        }
    };

    // (i) Weakly connected components of the filtered dfg: each component
    // against the rest suggests an exclusive-choice shape.
    DisjointSets components(n);
    for (const auto& [edge, f] : search.graphs().dfg) {
        components.unite(index_of(edge.first), index_of(edge.second));
    }
    std::map<std::size_t, std::vector<std::size_t>> component_members;
    for (std::size_t i = 0; i < n; ++i) {
        component_members[components.find(i)].push_back(i);
    }
    if (component_members.size() > 1) {
        for (const auto& [root, members] : component_members) {
            std::vector<bool> side(n, false);
            for (std::size_t m : members) {
                side[m] = true;
            }
            add_seed(side);
        }
    }

    // (ii) Prefix splits of the SCC condensation in topological order,
    // suggesting sequence shapes. Kosaraju on the small dfg.
    {
        std::vector<std::vector<std::size_t>> fwd(n), rev(n);
        for (const auto& [edge, f] : search.graphs().dfg) {
            std::size_t a = index_of(edge.first);
            std::size_t b = index_of(edge.second);
            fwd[a].push_back(b);
            rev[b].push_back(a);
        }
        std::vector<bool> visited(n, false);
        std::vector<std::size_t> order;
        auto dfs1 = [&](auto&& self, std::size_t v) -> void {
            visited[v] = true;
            for (std::size_t w : fwd[v]) {
                if (!visited[w]) {
                    self(self, w);
                }
            }
            order.push_back(v);
        };
        for (std::size_t v = 0; v < n; ++v) {
            if (!visited[v]) {
                dfs1(dfs1, v);
            }
        }
        std::vector<std::size_t> scc(n, static_cast<std::size_t>(-1));
        std::size_t scc_count = 0;
        auto dfs2 = [&](auto&& self, std::size_t v, std::size_t label) -> void {
            scc[v] = label;
            for (std::size_t w : rev[v]) {
                if (scc[w] == static_cast<std::size_t>(-1)) {
                    self(self, w, label);
                }
            }
        };
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            if (scc[*it] == static_cast<std::size_t>(-1)) {
                dfs2(dfs2, *it, scc_count++);
            }
        }
        // Reverse finish order of dfs1 is a topological order of the
        // condensation, which is how the labels were assigned.
        std::vector<bool> side(n, false);
        for (std::size_t prefix = 0; prefix + 1 < scc_count; ++prefix) {
            for (std::size_t v = 0; v < n; ++v) {
                if (scc[v] == prefix) {
                    side[v] = true;
                }
            }
            add_seed(side);
        }
    }

    // (iii) Peel off the most and least connected activities one at a time.
    std::vector<std::pair<std::uint64_t, std::size_t>> degree(n);
    for (std::size_t i = 0; i < n; ++i) {
        degree[i] = {0, i};
    }
    for (const auto& [edge, f] : search.graphs().dfg) {
        degree[index_of(edge.first)].first += f;
        degree[index_of(edge.second)].first += f;
    }
    std::sort(degree.begin(), degree.end());
    std::size_t peel = std::min<std::size_t>(4, n);
    for (std::size_t i = 0; i < peel; ++i) {
        std::vector<bool> low(n, false);
        low[degree[i].second] = true;
        add_seed(low);
        std::vector<bool> high(n, false);
        high[degree[n - 1 - i].second] = true;
        add_seed(high);
    }

    if (seeds.empty()) {
        std::vector<bool> side(n, false);
        side[0] = true;
        add_seed(side);
    }
    return seeds;
}

void hill_climb(const CutSearch& search, Operator op, std::vector<bool> side, std::size_t k,
                std::vector<Cut>& best) {
    std::size_t n = search.node_count();
    Cut current = search.evaluate(op, side);
    // Single-activity moves, steepest ascent, strict improvement only.
    for (std::size_t round = 0; round < 2 * n + 4; ++round) {
        bool improved = false;
        std::size_t best_move = n;
        Cut best_cut = current;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t on_side = 0;
            for (std::size_t j = 0; j < n; ++j) {
                on_side += side[j] == side[i] ? 1 : 0;
            }
            if (on_side <= 1) {
                continue;  // move would empty one side
            }
            side[i] = !side[i];
            Cut moved = search.evaluate(op, side);
            side[i] = !side[i];
            if (moved.score > best_cut.score) {
                best_cut = std::move(moved);
                best_move = i;
            }
        }
        if (best_move != n) {
            side[best_move] = !side[best_move];
            current = std::move(best_cut);
            improved = true;
        }
        if (!improved) {
            break;
        }
    }
    search.offer(best, k, std::move(current));
}

void heuristic_search(const CutSearch& search, std::size_t k, std::vector<Cut>& best) {
    std::vector<std::vector<bool>> seeds = seed_partitions(search);
    for (const auto& seed : seeds) {
        for (Operator op : kAllOperators) {
            hill_climb(search, op, seed, k, best);
        }
    }
}

}  // namespace

std::vector<Cut> find_top_cuts(const FollowsGraphs& graphs, const LogShape& shape,
                               const CutSearchOptions& options, std::size_t k) {
    if (graphs.nodes.size() < 2) {
        throw ParameterError("cut search needs at least two activities; handle base cases first");
    }
    if (k == 0) {
        return {};
    }
    CutSearch search(graphs, shape);
    std::vector<Cut> best;
    // Bitmask enumeration caps at 63 activities regardless of the limit.
    if (graphs.nodes.size() <= options.exhaustive_limit && graphs.nodes.size() < 64) {
        exhaustive_search(search, k, best);
    } else {
        heuristic_search(search, k, best);
    }
    return best;
}

Cut find_cut(const FollowsGraphs& graphs, const LogShape& shape, const CutSearchOptions& options) {
    return find_top_cuts(graphs, shape, options, 1).front();
}

}  // namespace pim
