#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "pim/errors.hpp"
#include "pim/log_io.hpp"

namespace pim {

namespace {

// Tokenizing XML subset: start/end/empty-element tags with double-quoted
// attributes, comments, processing instructions, CDATA, and text. Enough for
// the XES dialect; anything structurally broken raises a ParseError with the
// byte offset.
struct XmlTag {
    std::string name;
    std::map<std::string, std::string> attributes;
    bool closing = false;       // </name>
    bool self_closing = false;  // <name/>
    std::size_t offset = 0;
};

class XmlScanner {
public:
    explicit XmlScanner(std::string_view text) : text_(text) {}

    // Advances to the next tag, skipping text, comments, PIs, CDATA, and the
    // doctype. Returns false at end of input.
    bool next(XmlTag& tag) {
        while (pos_ < text_.size()) {
            if (text_[pos_] != '<') {
                ++pos_;
                continue;
            }
            if (starts_with("<!--")) {
                skip_until("-->", "unterminated comment");
                continue;
            }
            if (starts_with("<![CDATA[")) {
                skip_until("]]>", "unterminated CDATA section");
                continue;
            }
            if (starts_with("<?")) {
                skip_until("?>", "unterminated processing instruction");
                continue;
            }
            if (starts_with("<!")) {
                skip_until(">", "unterminated declaration");
                continue;
            }
            parse_tag(tag);
            return true;
        }
        return false;
    }

private:
    bool starts_with(std::string_view prefix) const {
        return text_.substr(pos_, prefix.size()) == prefix;
    }

    void skip_until(std::string_view terminator, const char* message) {
        std::size_t end = text_.find(terminator, pos_);
        if (end == std::string_view::npos) {
            throw ParseError(std::string(message) + " at byte " + std::to_string(pos_), pos_);
        }
        pos_ = end + terminator.size();
    }

    void parse_tag(XmlTag& tag) {
        tag = XmlTag{};
        tag.offset = pos_;
        std::size_t i = pos_ + 1;
        if (i < text_.size() && text_[i] == '/') {
            tag.closing = true;
            ++i;
        }
        std::size_t name_start = i;
        while (i < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i])) &&
               text_[i] != '>' && text_[i] != '/') {
            ++i;
        }
        tag.name = std::string(text_.substr(name_start, i - name_start));
        if (tag.name.empty()) {
            throw ParseError("empty tag name at byte " + std::to_string(pos_), pos_);
        }
        while (true) {
            while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) {
                ++i;
            }
            if (i >= text_.size()) {
                throw ParseError("unterminated tag at byte " + std::to_string(tag.offset), tag.offset);
            }
            if (text_[i] == '>') {
                ++i;
                break;
            }
            if (text_[i] == '/') {
                if (i + 1 >= text_.size() || text_[i + 1] != '>') {
                    throw ParseError("malformed tag end at byte " + std::to_string(i), i);
                }
                tag.self_closing = true;
                i += 2;
                break;
            }
            std::size_t key_start = i;
            while (i < text_.size() && text_[i] != '=' &&
                   !std::isspace(static_cast<unsigned char>(text_[i])) && text_[i] != '>') {
                ++i;
            }
            std::string key(text_.substr(key_start, i - key_start));
            while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) {
                ++i;
            }
            if (i >= text_.size() || text_[i] != '=') {
                throw ParseError("attribute \"" + key + "\" lacks a value at byte " + std::to_string(i), i);
            }
            ++i;
            while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) {
                ++i;
            }
            if (i >= text_.size() || (text_[i] != '"' && text_[i] != '\'')) {
                throw ParseError("attribute value must be quoted at byte " + std::to_string(i), i);
            }
            char quote = text_[i++];
            std::size_t value_start = i;
            while (i < text_.size() && text_[i] != quote) {
                ++i;
            }
            if (i >= text_.size()) {
                throw ParseError("unterminated attribute value at byte " + std::to_string(value_start),
                                 value_start);
            }
            tag.attributes[key] = unescape(text_.substr(value_start, i - value_start));
            ++i;
        }
        pos_ = i;
    }

    std::string unescape(std::string_view raw) const {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out.push_back(raw[i]);
                continue;
            }
            std::size_t end = raw.find(';', i);
            std::string_view entity = end == std::string_view::npos ? raw.substr(i + 1)
                                                                    : raw.substr(i + 1, end - i - 1);
            if (entity == "amp") {
                out.push_back('&');
            } else if (entity == "lt") {
                out.push_back('<');
            } else if (entity == "gt") {
                out.push_back('>');
            } else if (entity == "quot") {
                out.push_back('"');
            } else if (entity == "apos") {
                out.push_back('\'');
            } else {
                out.push_back('&');  // unknown entity kept verbatim
                continue;
            }
            i = end == std::string_view::npos ? raw.size() : end;
        }
        return out;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

EventLog parse_xes(std::string_view text) {
    EventLog log;
    XmlScanner scanner(text);
    XmlTag tag;

    std::vector<std::string> open;  // element stack, for mismatch detection
    bool in_trace = false;
    bool in_event = false;
    std::vector<std::string> trace_labels;
    bool event_has_name = false;
    std::string event_name;
    std::uint64_t skipped_events = 0;

    while (scanner.next(tag)) {
        if (tag.closing) {
            if (open.empty() || open.back() != tag.name) {
                std::string context = open.empty() ? "no element is open"
                                                   : "open element is <" + open.back() + ">";
                throw ParseError("mismatched closing tag </" + tag.name + "> at byte " +
                                     std::to_string(tag.offset) + " (" + context + ")",
                                 tag.offset);
            }
            open.pop_back();
            if (tag.name == "event" && in_event) {
                in_event = false;
                if (event_has_name) {
                    trace_labels.push_back(event_name);
                } else {
                    ++skipped_events;
                }
            } else if (tag.name == "trace" && in_trace) {
                in_trace = false;
                if (trace_labels.empty()) {
                    log.add_empty();
                } else {
                    log.add_trace(trace_labels);
                }
                trace_labels.clear();
            }
            continue;
        }

        bool opens_scope = !tag.self_closing;
        if (tag.name == "trace" && !in_trace) {
            in_trace = true;
            trace_labels.clear();
            if (tag.self_closing) {
                in_trace = false;
                log.add_empty();
            }
        } else if (tag.name == "event" && in_trace && !in_event) {
            in_event = true;
            event_has_name = false;
            event_name.clear();
            if (tag.self_closing) {
                in_event = false;
                ++skipped_events;
            }
        } else if (tag.name == "string" && in_event) {
            auto key = tag.attributes.find("key");
            auto value = tag.attributes.find("value");
            if (key != tag.attributes.end() && key->second == "concept:name" &&
                value != tag.attributes.end()) {
                event_has_name = true;
                event_name = value->second;
            }
        }
        if (opens_scope) {
            open.push_back(tag.name);
        }
    }
    if (!open.empty()) {
        throw ParseError("unclosed element <" + open.back() + "> at end of input", text.size());
    }
    log.add_warnings(skipped_events);
    return log;
}

}  // namespace pim
