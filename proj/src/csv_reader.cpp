#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pim/errors.hpp"
#include "pim/log_io.hpp"

namespace pim {

namespace {

struct CsvRow {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

// RFC-4180-style field splitting: quoted fields may contain the delimiter,
// newlines, and doubled quotes.
std::vector<CsvRow> split_rows(std::string_view text, char delimiter) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool in_quotes = false;
    bool row_has_data = false;
    std::size_t line = 1;
    row.line = line;

    auto end_field = [&] {
        row.fields.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row = CsvRow{};
        row.line = line;
        row_has_data = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n') {
            ++line;
        }
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            row_has_data = true;
        } else if (c == delimiter) {
            end_field();
            row_has_data = true;
        } else if (c == '\r') {
            // swallowed; handled with the following '\n' or ignored
        } else if (c == '\n') {
            if (row_has_data || !field.empty() || !row.fields.empty()) {
                end_row();
            } else {
                row.line = line;
            }
        } else {
            field.push_back(c);
            row_has_data = true;
        }
    }
    if (in_quotes) {
        throw ParseError("unterminated quoted field at end of input", text.size());
    }
    if (row_has_data || !field.empty() || !row.fields.empty()) {
        end_row();
    }
    return rows;
}

std::size_t resolve_column(const std::vector<std::string>& header, const std::string& name,
                           bool has_header, const char* role) {
    if (has_header) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it != header.end()) {
            return static_cast<std::size_t>(it - header.begin());
        }
    }
    // Allow plain indices, which is the only addressing mode without a header.
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
    if (ec == std::errc() && ptr == name.data() + name.size()) {
        return index;
    }
    throw ParameterError(std::string("missing ") + role + " column \"" + name + "\"");
}

// Timestamps may be numeric (epoch-style) or ISO-8601-like
// "YYYY-MM-DD[ T]HH:MM:SS[.fff][Z]". Both map onto a sortable key.
double parse_timestamp(const std::string& text, std::size_t line) {
    std::string s = text;
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) {
        s.pop_back();
    }
    if (s.empty()) {
        throw ParseError("empty timestamp on line " + std::to_string(line), line);
    }
    bool iso = s.size() >= 10 && s[4] == '-' && s[7] == '-';
    if (iso) {
        int year = 0, month = 0, day = 0, hour = 0, minute = 0;
        double second = 0.0;
        char sep = 0;
        std::istringstream in(s);
        in >> year;
        in.ignore(1);
        in >> month;
        in.ignore(1);
        in >> day;
        if (in.fail() || month < 1 || month > 12 || day < 1 || day > 31) {
            throw ParseError("unparsable timestamp \"" + text + "\" on line " + std::to_string(line), line);
        }
        if (in.get(sep) && (sep == 'T' || sep == ' ')) {
            in >> hour;
            in.ignore(1);
            in >> minute;
            in.ignore(1);
            in >> second;
            if (in.fail() || hour > 23 || minute > 59 || second >= 61.0) {
                throw ParseError("unparsable timestamp \"" + text + "\" on line " + std::to_string(line), line);
            }
        }
        // Only the ordering matters, not calendar accuracy. The year factor
        // must exceed the largest month*31+day value (403).
        double days = year * 500.0 + month * 31.0 + day;
        return days * 86400.0 + hour * 3600.0 + minute * 60.0 + second;
    }
    try {
        std::size_t used = 0;
        double value = std::stod(s, &used);
        if (used == s.size()) {
            return value;
        }
    } catch (const std::exception&) {
    }
    throw ParseError("unparsable timestamp \"" + text + "\" on line " + std::to_string(line), line);
}

struct PendingEvent {
    std::string activity;
    double time = 0.0;
    std::uint64_t order = 0;
};

}  // namespace

EventLog parse_csv(std::string_view text, const CsvOptions& options) {
    EventLog log;
    std::vector<CsvRow> rows = split_rows(text, options.delimiter);
    if (rows.empty()) {
        return log;
    }

    std::vector<std::string> header;
    std::size_t first_data = 0;
    if (options.has_header) {
        header = rows[0].fields;
        first_data = 1;
    }
    std::size_t case_col = resolve_column(header, options.case_column, options.has_header, "case");
    std::size_t act_col = resolve_column(header, options.activity_column, options.has_header, "activity");
    std::size_t time_col = 0;
    bool has_time = options.time_column.has_value();
    if (has_time) {
        time_col = resolve_column(header, *options.time_column, options.has_header, "timestamp");
    }

    // Cases keep their first-appearance order so activity interning stays
    // deterministic under identical input.
    std::vector<std::string> case_order;
    std::map<std::string, std::vector<PendingEvent>> cases;
    std::uint64_t order = 0;
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const CsvRow& row = rows[r];
        std::size_t needed = std::max(case_col, act_col);
        if (has_time) {
            needed = std::max(needed, time_col);
        }
        if (needed >= row.fields.size()) {
            throw ParseError("line " + std::to_string(row.line) + ": expected at least " +
                                 std::to_string(needed + 1) + " columns, got " +
                                 std::to_string(row.fields.size()),
                             row.line);
        }
        const std::string& case_id = row.fields[case_col];
        auto [it, inserted] = cases.try_emplace(case_id);
        if (inserted) {
            case_order.push_back(case_id);
        }
        const std::string& activity = row.fields[act_col];
        if (activity.empty()) {
            continue;  // declares the case without adding an event
        }
        PendingEvent event;
        event.activity = activity;
        event.order = order++;
        if (has_time) {
            event.time = parse_timestamp(row.fields[time_col], row.line);
        }
        it->second.push_back(std::move(event));
    }

    for (const std::string& case_id : case_order) {
        auto& events = cases[case_id];
        if (has_time) {
            std::stable_sort(events.begin(), events.end(),
                             [](const PendingEvent& a, const PendingEvent& b) { return a.time < b.time; });
        }
        std::vector<std::string> labels;
        labels.reserve(events.size());
        for (const auto& event : events) {
            labels.push_back(event.activity);
        }
        log.add_trace(labels);
    }
    return log;
}

std::string write_csv(const EventLog& log, char delimiter) {
    auto quote = [delimiter](const std::string& s) {
        bool needs = s.find_first_of("\"\r\n") != std::string::npos || s.find(delimiter) != std::string::npos;
        if (!needs) {
            return s;
        }
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') {
                out += "\"\"";
            } else {
                out.push_back(c);
            }
        }
        out.push_back('"');
        return out;
    };

    std::string out = "case";
    out.push_back(delimiter);
    out += "activity\n";
    std::uint64_t case_id = 0;
    for (const auto& [trace, count] : log.variants()) {
        for (std::uint64_t i = 0; i < count; ++i) {
            std::string name = "c" + std::to_string(case_id++);
            for (ActivityId id : trace) {
                out += name;
                out.push_back(delimiter);
                out += quote(log.activities().label(id));
                out.push_back('\n');
            }
        }
    }
    for (std::uint64_t i = 0; i < log.empty_count(); ++i) {
        out += "c" + std::to_string(case_id++);
        out.push_back(delimiter);
        out.push_back('\n');
    }
    return out;
}

}  // namespace pim
