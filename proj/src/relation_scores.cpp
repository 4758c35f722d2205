#include "pim/relation_scores.hpp"

#include <algorithm>

#include "pim/errors.hpp"

namespace pim {

namespace {

struct PairCounts {
    double ab_direct;
    double ba_direct;
    double ab_indirect;
    double ba_indirect;
};

PairCounts pair_counts(ActivityId a, ActivityId b, const FollowsGraphs& g) {
    return {
        static_cast<double>(g.dfg_count(a, b)),
        static_cast<double>(g.dfg_count(b, a)),
        static_cast<double>(g.ifg_count(a, b)),
        static_cast<double>(g.ifg_count(b, a)),
    };
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double xor_score(const PairCounts& c, double freq_a, double freq_b) {
    double together = c.ab_direct + c.ba_direct + c.ab_indirect + c.ba_indirect;
    return clamp01(((freq_a - together) / freq_a + (freq_b - together) / freq_b) / 2.0);
}

double seq_raw(const PairCounts& c) {
    double forward = c.ab_direct + c.ab_indirect;
    double backward = c.ba_direct + c.ba_indirect;
    return (forward - backward) / (forward + backward + 1.0);
}

double balance(double x, double y) { return std::min(x / (y + 1.0), y / (x + 1.0)); }

double score_from_counts(ScoreKind kind, const PairCounts& c, double freq_a, double freq_b) {
    switch (kind) {
        case ScoreKind::xor_choice:
            return xor_score(c, freq_a, freq_b);
        case ScoreKind::sequence:
            return std::max(0.0, seq_raw(c));
        case ScoreKind::parallel:
            return balance(c.ab_direct, c.ba_direct);
        case ScoreKind::loop_single:
            return balance(c.ab_direct, c.ba_indirect);
        case ScoreKind::loop_indirect:
            return balance(c.ab_indirect, c.ba_indirect);
    }
    throw InternalError("unhandled score kind");
}

void require_known(ActivityId id, const FollowsGraphs& g) {
    if (g.unary_count(id) == 0) {
        throw ParameterError("activity id " + std::to_string(id) +
                             " has no occurrences in these graphs");
    }
}

}  // namespace

const char* score_kind_name(ScoreKind kind) {
    switch (kind) {
        case ScoreKind::xor_choice:
            return "xor";
        case ScoreKind::sequence:
            return "seq";
        case ScoreKind::parallel:
            return "para";
        case ScoreKind::loop_single:
            return "loop_single";
        case ScoreKind::loop_indirect:
            return "loop_indirect";
    }
    return "?";
}

double relation_score(ScoreKind kind, ActivityId a, ActivityId b, const FollowsGraphs& graphs) {
    if (a == b) {
        throw ParameterError("self relations are never scored");
    }
    require_known(a, graphs);
    require_known(b, graphs);
    return score_from_counts(kind, pair_counts(a, b, graphs),
                             static_cast<double>(graphs.unary_count(a)),
                             static_cast<double>(graphs.unary_count(b)));
}

double sequence_raw(ActivityId a, ActivityId b, const FollowsGraphs& graphs) {
    if (a == b) {
        throw ParameterError("self relations are never scored");
    }
    require_known(a, graphs);
    require_known(b, graphs);
    return seq_raw(pair_counts(a, b, graphs));
}

ScoreTable::ScoreTable(const FollowsGraphs& graphs) : nodes_(graphs.nodes) {
    std::size_t n = nodes_.size();
    for (auto& matrix : table_) {
        matrix.assign(n * n, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        double freq_a = static_cast<double>(graphs.unary_count(nodes_[i]));
        for (std::size_t j = 0; j < n; ++j) {
            double freq_b = static_cast<double>(graphs.unary_count(nodes_[j]));
            PairCounts c = pair_counts(nodes_[i], nodes_[j], graphs);
            for (ScoreKind kind : kAllScoreKinds) {
                table_[static_cast<std::size_t>(kind)][i * n + j] =
                    score_from_counts(kind, c, freq_a, freq_b);
            }
        }
    }
}

std::size_t ScoreTable::index_of(ActivityId id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id) {
        return npos;
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

}  // namespace pim
