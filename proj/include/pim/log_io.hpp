#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "pim/event_log.hpp"

namespace pim {

/// Column mapping for CSV ingestion. With a header row, columns are named;
/// without one, names are parsed as zero-based indices.
struct CsvOptions {
    std::string case_column = "case";
    std::string activity_column = "activity";
    std::optional<std::string> time_column;  // unset: keep input order
    char delimiter = ',';
    bool has_header = true;
};

/// RFC-4180-style CSV with one event per row. Events are grouped by case id;
/// within a case they are ordered by timestamp when mapped (ties keep input
/// order), otherwise by input order. A row with an empty activity field
/// declares its case without adding an event, so an all-empty case counts as
/// an empty trace.
EventLog parse_csv(std::string_view text, const CsvOptions& options = {});

/// Canonical CSV dump (case,activity columns, cases in deterministic order).
/// parse_csv of the result reproduces the log.
std::string write_csv(const EventLog& log, char delimiter = ',');

/// Minimal XES dialect: <trace> elements containing <event> elements that
/// carry a <string key="concept:name" value="..."/> child. Anything else is
/// ignored. Events without a concept:name are skipped and counted in the
/// log's warning counter.
EventLog parse_xes(std::string_view text);

/// Variant dump format: header line "empty=N", then one line per variant,
/// "count<TAB>a,b,c". Labels must not contain tabs, commas, or newlines.
EventLog parse_variants(std::string_view text);
std::string write_variants(const EventLog& log);

}  // namespace pim
