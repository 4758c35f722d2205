#include "pim/pim.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "pim/discovery.hpp"
#include "pim/errors.hpp"
#include "pim/event_log.hpp"
#include "pim/follows_graphs.hpp"
#include "pim/log_io.hpp"
#include "pim/process_tree.hpp"
#include "pim/quality.hpp"
#include "pim/relation_scores.hpp"

struct pim_log {
    pim::EventLog log;
};

struct pim_tree {
    pim::ProcessTree tree;
};

namespace {

thread_local std::string last_error = "no error";

pim_status set_error(pim::ErrorKind kind, const std::string& message) {
    last_error = message;
    switch (kind) {
        case pim::ErrorKind::parameter:
            return PIM_ERR_PARAMETER;
        case pim::ErrorKind::parse:
            return PIM_ERR_PARSE;
        case pim::ErrorKind::resource:
            return PIM_ERR_RESOURCE;
        case pim::ErrorKind::internal:
            return PIM_ERR_INTERNAL;
    }
    return PIM_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes and the thread-local
// error message.
template <typename Fn>
pim_status guarded(Fn&& fn) {
    try {
        fn();
        return PIM_OK;
    } catch (const pim::Error& e) {
        return set_error(e.kind(), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(pim::ErrorKind::resource, "out of memory");
    } catch (const std::exception& e) {
        return set_error(pim::ErrorKind::internal, e.what());
    }
}

pim_status require(bool condition, const char* message) {
    if (condition) {
        return PIM_OK;
    }
    last_error = message;
    return PIM_ERR_PARAMETER;
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

pim::CsvOptions convert(const pim_csv_options* options) {
    pim::CsvOptions converted;
    if (options == nullptr) {
        return converted;
    }
    if (options->case_column != nullptr) {
        converted.case_column = options->case_column;
    }
    if (options->activity_column != nullptr) {
        converted.activity_column = options->activity_column;
    }
    if (options->time_column != nullptr) {
        converted.time_column = options->time_column;
    }
    if (options->delimiter != 0) {
        converted.delimiter = options->delimiter;
    }
    converted.has_header = options->has_header != 0;
    return converted;
}

pim::DiscoveryOptions convert(const pim_discover_options* options) {
    pim::DiscoveryOptions converted;
    if (options == nullptr) {
        return converted;
    }
    converted.filter_percent = options->filter_percent;
    if (options->max_activities > 0) {
        converted.max_activities = static_cast<std::uint32_t>(options->max_activities);
    }
    if (options->exhaustive_limit > 0) {
        converted.exhaustive_limit = static_cast<std::size_t>(options->exhaustive_limit);
    }
    if (options->debug_top_k > 0) {
        converted.debug_top_k = static_cast<std::size_t>(options->debug_top_k);
    }
    return converted;
}

}  // namespace

extern "C" {

const char* pim_last_error(void) { return last_error.c_str(); }

void pim_string_free(char* s) { delete[] s; }

pim_status pim_log_from_csv(const char* data, size_t length, const pim_csv_options* options,
                            pim_log** out) {
    if (pim_status s = require(data != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        *out = new pim_log{pim::parse_csv(std::string_view(data, length), convert(options))};
    });
}

pim_status pim_log_from_xes(const char* data, size_t length, pim_log** out) {
    if (pim_status s = require(data != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = new pim_log{pim::parse_xes(std::string_view(data, length))}; });
}

pim_status pim_log_from_variants(const char* data, size_t length, pim_log** out) {
    if (pim_status s = require(data != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = new pim_log{pim::parse_variants(std::string_view(data, length))}; });
}

pim_status pim_log_from_file(const char* path, pim_log_format format,
                             const pim_csv_options* csv_options, pim_log** out) {
    if (pim_status s = require(path != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw pim::ParseError(std::string("cannot open file: ") + path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        std::string data = buffer.str();
        switch (format) {
            case PIM_FORMAT_CSV:
                *out = new pim_log{pim::parse_csv(data, convert(csv_options))};
                return;
            case PIM_FORMAT_XES:
                *out = new pim_log{pim::parse_xes(data)};
                return;
            case PIM_FORMAT_VARIANTS:
                *out = new pim_log{pim::parse_variants(data)};
                return;
        }
        throw pim::ParameterError("unknown log format");
    });
}

void pim_log_free(pim_log* log) { delete log; }

pim_status pim_log_get_stats(const pim_log* log, pim_log_stats* out) {
    if (pim_status s = require(log != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        pim::LogStats stats = pim::log_stats(log->log);
        out->traces = stats.traces;
        out->events = stats.events;
        out->alphabet_size = stats.alphabet_size;
        out->distinct_variants = stats.distinct_variants;
        out->empty_traces = stats.empty_traces;
        out->warnings = log->log.warning_count();
    });
}

pim_status pim_log_to_variants(const pim_log* log, char** out) {
    if (pim_status s = require(log != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = copy_string(pim::write_variants(log->log)); });
}

void pim_discover_options_init(pim_discover_options* options) {
    if (options == nullptr) {
        return;
    }
    options->filter_percent = 99.5;
    options->max_activities = 0;
    options->exhaustive_limit = 12;
    options->debug_top_k = 0;
}

pim_status pim_discover(const pim_log* log, const pim_discover_options* options, pim_tree** out) {
    if (pim_status s = require(log != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = new pim_tree{pim::discover(log->log, convert(options))}; });
}

pim_status pim_discover_traced(const pim_log* log, const pim_discover_options* options,
                               pim_tree** out, char** trace_json) {
    if (pim_status s = require(log != nullptr && out != nullptr && trace_json != nullptr,
                               "null argument");
        s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        pim::DiscoveryResult result = pim::discover_with_trace(log->log, convert(options));
        *trace_json = copy_string(pim::trace_to_json(result, log->log.activities()));
        *out = new pim_tree{std::move(result.tree)};
    });
}

pim_status pim_tree_parse(const char* text, pim_tree** out) {
    if (pim_status s = require(text != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = new pim_tree{pim::parse_tree_text(text)}; });
}

pim_status pim_tree_to_text(const pim_tree* tree, char** out) {
    if (pim_status s = require(tree != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = copy_string(pim::tree_to_text(tree->tree)); });
}

pim_status pim_tree_normalize(const pim_tree* tree, pim_tree** out) {
    if (pim_status s = require(tree != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = new pim_tree{pim::normalize(tree->tree)}; });
}

pim_status pim_tree_to_json(const pim_tree* tree, char** out) {
    if (pim_status s = require(tree != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = copy_string(pim::tree_to_json(tree->tree)); });
}

pim_status pim_tree_to_dot(const pim_tree* tree, char** out) {
    if (pim_status s = require(tree != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] { *out = copy_string(pim::tree_to_dot(tree->tree)); });
}

pim_status pim_tree_to_model_dot(const pim_tree* tree, char** out) {
    if (pim_status s = require(tree != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        *out = copy_string(pim::block_graph_to_dot(pim::to_block_graph(tree->tree)));
    });
}

pim_status pim_tree_to_model_json(const pim_tree* tree, char** out) {
    if (pim_status s = require(tree != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        *out = copy_string(pim::block_graph_to_json(pim::to_block_graph(tree->tree)));
    });
}

void pim_tree_free(pim_tree* tree) { delete tree; }

pim_status pim_graph_dot(const pim_log* log, double filter_percent, int overlay_removed,
                         char** out) {
    if (pim_status s = require(log != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        pim::FollowsGraphs graphs = pim::build_follows_graphs(log->log);
        pim::FollowsGraphs filtered = pim::filter_graphs(graphs, filter_percent);
        *out = copy_string(pim::dfg_to_dot(filtered, log->log.activities(),
                                           overlay_removed != 0 ? &graphs : nullptr));
    });
}

pim_status pim_score_table_csv(const pim_log* log, double filter_percent, char** out) {
    if (pim_status s = require(log != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        pim::FollowsGraphs filtered =
            pim::filter_graphs(pim::build_follows_graphs(log->log), filter_percent);
        pim::ScoreTable table(filtered);
        std::ostringstream csv;
        csv << "a,b,xor,seq,para,loop_single,loop_indirect\n";
        auto quote = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) {
                return s;
            }
            std::string quoted = "\"";
            for (char c : s) {
                if (c == '"') {
                    quoted += "\"\"";
                } else {
                    quoted.push_back(c);
                }
            }
            quoted.push_back('"');
            return quoted;
        };
        for (std::size_t i = 0; i < table.size(); ++i) {
            for (std::size_t j = 0; j < table.size(); ++j) {
                if (i == j) {
                    continue;
                }
                csv << quote(log->log.activities().label(table.nodes()[i])) << ','
                    << quote(log->log.activities().label(table.nodes()[j]));
                for (pim::ScoreKind kind : pim::kAllScoreKinds) {
                    csv << ',' << table.at(kind, i, j);
                }
                csv << '\n';
            }
        }
        *out = copy_string(csv.str());
    });
}

pim_status pim_evaluate(const pim_tree* tree, const pim_log* log, int32_t loop_bound,
                        uint64_t trace_limit, pim_quality* out) {
    if (pim_status s = require(tree != nullptr && log != nullptr && out != nullptr, "null argument");
        s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        pim::QualityOptions options;
        if (loop_bound > 0) {
            options.loop_bound = static_cast<std::size_t>(loop_bound);
        }
        if (trace_limit > 0) {
            options.trace_limit = static_cast<std::size_t>(trace_limit);
        }
        pim::QualityReport report = pim::evaluate(tree->tree, log->log, options);
        out->fitness = report.fitness;
        out->precision = report.precision;
        out->f_score = report.f_score;
        out->size = report.size;
        out->cfc = report.cfc;
    });
}

pim_status pim_quality_to_json(const pim_quality* quality, char** out) {
    if (pim_status s = require(quality != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        pim::QualityReport report{quality->fitness, quality->precision, quality->f_score,
                                  quality->size, quality->cfc};
        *out = copy_string(pim::report_to_json(report));
    });
}

pim_status pim_quality_to_table(const pim_quality* quality, char** out) {
    if (pim_status s = require(quality != nullptr && out != nullptr, "null argument"); s != PIM_OK) {
        return s;
    }
    return guarded([&] {
        pim::QualityReport report{quality->fitness, quality->precision, quality->f_score,
                                  quality->size, quality->cfc};
        *out = copy_string(pim::report_to_table(report));
    });
}

}  // extern "C"
