#pragma once

#include <cstdint>
#include <vector>

#include "pim/follows_graphs.hpp"

namespace pim {

/// The five pairwise activity relation kinds. loop_single covers entering and
/// exiting the redo part of a loop directly; loop_indirect covers pairs that
/// follow each other indirectly through the loop.
enum class ScoreKind {
    xor_choice,
    sequence,
    parallel,
    loop_single,
    loop_indirect,
};

inline constexpr ScoreKind kAllScoreKinds[] = {
    ScoreKind::xor_choice, ScoreKind::sequence, ScoreKind::parallel,
    ScoreKind::loop_single, ScoreKind::loop_indirect,
};

const char* score_kind_name(ScoreKind kind);

/// Pairwise relation score in [0,1]. Missing edges read as frequency zero;
/// the sequence quotient is clamped below at zero; the choice score likewise.
/// Self relations are rejected, as are activities absent from the graphs'
/// unary frequencies.
double relation_score(ScoreKind kind, ActivityId a, ActivityId b, const FollowsGraphs& graphs);

/// The antisymmetric sequence quotient before clamping:
/// raw(a,b) == -raw(b,a).
double sequence_raw(ActivityId a, ActivityId b, const FollowsGraphs& graphs);

/// Dense all-pairs score table over a graph's node set. The diagonal is
/// evaluated with the same formulas; it is used only by the loop aggregation,
/// where enter/exit products may pair an activity with itself.
class ScoreTable {
public:
    explicit ScoreTable(const FollowsGraphs& graphs);

    const std::vector<ActivityId>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }

    /// Index of an activity in nodes(), or npos if absent.
    std::size_t index_of(ActivityId id) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    double at(ScoreKind kind, std::size_t a_index, std::size_t b_index) const {
        return table_[static_cast<std::size_t>(kind)][a_index * nodes_.size() + b_index];
    }

private:
    std::vector<ActivityId> nodes_;
    std::vector<double> table_[5];
};

}  // namespace pim
