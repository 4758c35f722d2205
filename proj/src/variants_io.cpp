#include <algorithm>
#include <charconv>
#include <string>
#include <vector>

#include "pim/errors.hpp"
#include "pim/log_io.hpp"

namespace pim {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            return parts;
        }
        parts.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
}

}  // namespace

EventLog parse_variants(std::string_view text) {
    EventLog log;
    std::size_t line_no = 0;
    for (const std::string& raw_line : split(text, '\n')) {
        ++line_no;
        std::string line = raw_line;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.rfind("empty=", 0) == 0) {
            std::uint64_t n = 0;
            const char* begin = line.data() + 6;
            const char* end = line.data() + line.size();
            auto [ptr, ec] = std::from_chars(begin, end, n);
            if (ec != std::errc() || ptr != end) {
                throw ParseError("line " + std::to_string(line_no) + ": bad empty-trace count", line_no);
            }
            log.add_empty(n);
            continue;
        }
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected \"count<TAB>activities\"",
                             line_no);
        }
        std::uint64_t count = 0;
        auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, count);
        if (ec != std::errc() || ptr != line.data() + tab || count == 0) {
            throw ParseError("line " + std::to_string(line_no) + ": bad variant count", line_no);
        }
        std::string_view rest(line.data() + tab + 1, line.size() - tab - 1);
        if (rest.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty variant; use the empty= header",
                             line_no);
        }
        std::vector<std::string> labels = split(rest, ',');
        for (const std::string& label : labels) {
            if (label.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": empty activity label", line_no);
            }
        }
        log.add_trace(labels, count);
    }
    return log;
}

std::string write_variants(const EventLog& log) {
    std::string out = "empty=" + std::to_string(log.empty_count()) + "\n";

    struct Row {
        std::uint64_t count;
        std::vector<std::string> labels;
    };
    std::vector<Row> rows;
    rows.reserve(log.distinct_variants());
    for (const auto& [trace, count] : log.variants()) {
        Row row;
        row.count = count;
        row.labels.reserve(trace.size());
        for (ActivityId id : trace) {
            const std::string& label = log.activities().label(id);
            if (label.find_first_of(",\t\n") != std::string::npos) {
                throw ParameterError("activity label \"" + label +
                                     "\" cannot be written in the variants format");
            }
            row.labels.push_back(label);
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.count != b.count) {
            return a.count > b.count;
        }
        return a.labels < b.labels;
    });
    for (const Row& row : rows) {
        out += std::to_string(row.count);
        out.push_back('\t');
        for (std::size_t i = 0; i < row.labels.size(); ++i) {
            if (i > 0) {
                out.push_back(',');
            }
            out += row.labels[i];
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace pim
