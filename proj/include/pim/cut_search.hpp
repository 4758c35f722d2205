#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pim/event_log.hpp"
#include "pim/follows_graphs.hpp"
#include "pim/relation_scores.hpp"

namespace pim {

enum class Operator {
    xor_choice,
    sequence,
    parallel,
    loop,
};

const char* operator_name(Operator op);
const char* operator_glyph(Operator op);  // UTF-8 glyph for rendering

/// A binary cut: an operator plus a bipartition of the current alphabet.
/// Loop cuts additionally carry the redo-entry set S2 and redo-exit set E2
/// (both subsets of sigma2). sigma1/sigma2/S2/E2 are ascending id vectors.
struct Cut {
    Operator op = Operator::xor_choice;
    std::vector<ActivityId> sigma1;
    std::vector<ActivityId> sigma2;
    std::vector<ActivityId> redo_starts;  // loop only
    std::vector<ActivityId> redo_ends;    // loop only
    double score = 0.0;

    bool same_partition(const Cut& other) const {
        return op == other.op && sigma1 == other.sigma1 && sigma2 == other.sigma2;
    }
};

std::string cut_to_string(const Cut& cut, const ActivityTable& activities);

/// Trace/event/alphabet counts of the current sublog, with empty traces
/// excluded. Input to the repetition factor.
struct LogShape {
    std::uint64_t trace_count = 0;
    std::uint64_t event_count = 0;
    std::uint64_t alphabet_size = 0;
};

LogShape log_shape(const EventLog& log);

/// r(L) = |L| / (||L|| / |Sigma|). Values below 1 signal looping behaviour.
double repetition_factor(const LogShape& shape);

/// Mean minus population standard deviation over the pair scores
/// sigma1 x sigma2. `op` selects the xor or sequence score kind.
double aggregate_xor_seq(Operator op, const std::vector<ActivityId>& sigma1,
                         const std::vector<ActivityId>& sigma2, const ScoreTable& table);

/// Mean of the parallel pair scores times min(r(L), 1).
double aggregate_para(const std::vector<ActivityId>& sigma1, const std::vector<ActivityId>& sigma2,
                      const ScoreTable& table, const LogShape& shape);

/// Loop aggregation: enter = End(L) x S2 and exit = E2 x Start(L) pairs are
/// scored with the single-step loop kind, the remaining sigma1 x sigma2 pairs
/// with the indirect kind; the mean is boosted by mu * (1 - min(r(L), 1)).
double aggregate_loop(const std::vector<ActivityId>& sigma1, const std::vector<ActivityId>& sigma2,
                      const std::vector<ActivityId>& redo_starts,
                      const std::vector<ActivityId>& redo_ends, const ScoreTable& table,
                      const FollowsGraphs& graphs, const LogShape& shape);

struct CutSearchOptions {
    /// Alphabets up to this size are searched exhaustively over all
    /// bipartitions and operators; larger ones use seeded hill climbing.
    std::size_t exhaustive_limit = 12;
};

/// Maximum-score cut over the evaluated candidates. Always returns a cut
/// (possibly with a low score). Ties break by operator order
/// xor > seq > para > loop, then by lexicographically smallest sigma1.
Cut find_cut(const FollowsGraphs& graphs, const LogShape& shape, const CutSearchOptions& options = {});

/// The k best cuts in tie-break order, for debugging output.
std::vector<Cut> find_top_cuts(const FollowsGraphs& graphs, const LogShape& shape,
                               const CutSearchOptions& options, std::size_t k);

/// True when `a` is preferred over `b` in the deterministic total order
/// (higher score first, then operator order, then smaller sigma1).
bool cut_preferred(const Cut& a, const Cut& b);

}  // namespace pim
