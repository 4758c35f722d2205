#pragma once

#include <cstdint>
#include <string>

#include "pim/block_graph.hpp"
#include "pim/event_log.hpp"
#include "pim/process_tree.hpp"

namespace pim {

struct QualityOptions {
    std::size_t loop_bound = 3;        // loop unrolling for the model language
    std::size_t trace_limit = 200000;  // explosion guard on the model language
};

struct QualityReport {
    double fitness = 0.0;
    double precision = 0.0;
    double f_score = 0.0;
    std::uint64_t size = 0;
    std::uint64_t cfc = 0;
};

/// Edit-distance alignment of the log against the bounded model language.
/// Insertions and deletions cost one; a substitution costs two. Per trace,
/// fitness is 1 - cost / (trace length + shortest model trace length); the
/// log value is the count-weighted mean. Throws ResourceError when the model
/// language exceeds the guard.
double fitness(const ProcessTree& tree, const EventLog& log, const QualityOptions& options = {});

/// Escaping-edges precision over the prefix automaton of the bounded model
/// language, weighted by the log's prefix visit counts.
double precision(const ProcessTree& tree, const EventLog& log, const QualityOptions& options = {});

struct Simplicity {
    std::uint64_t size = 0;
    std::uint64_t cfc = 0;
};

Simplicity simplicity(const BlockGraph& graph);

QualityReport evaluate(const ProcessTree& tree, const EventLog& log, const QualityOptions& options = {});

std::string report_to_json(const QualityReport& report);
std::string report_to_table(const QualityReport& report);

}  // namespace pim
