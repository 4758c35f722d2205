#include "pim/process_tree.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "pim/errors.hpp"

namespace pim {

ProcessTree ProcessTree::make_leaf(std::string label) {
    ProcessTree t;
    t.kind = Kind::leaf;
    t.label = std::move(label);
    return t;
}

ProcessTree ProcessTree::make_silent() {
    ProcessTree t;
    t.kind = Kind::silent;
    return t;
}

ProcessTree ProcessTree::make_op(Operator op, std::vector<ProcessTree> children) {
    if (children.size() < 2) {
        throw ParameterError(std::string("operator ") + operator_name(op) +
                             " needs at least two children");
    }
    ProcessTree t;
    t.kind = Kind::op;
    t.op = op;
    t.children = std::move(children);
    return t;
}

std::size_t ProcessTree::node_count() const {
    std::size_t n = 1;
    for (const ProcessTree& child : children) {
        n += child.node_count();
    }
    return n;
}

std::set<std::string> ProcessTree::leaf_labels() const {
    std::set<std::string> labels;
    if (is_leaf()) {
        labels.insert(label);
    }
    for (const ProcessTree& child : children) {
        auto sub = child.leaf_labels();
        labels.insert(sub.begin(), sub.end());
    }
    return labels;
}

namespace {

const char* op_token(Operator op) {
    switch (op) {
        case Operator::xor_choice:
            return "x";
        case Operator::sequence:
            return "->";
        case Operator::parallel:
            return "/\\";
        case Operator::loop:
            return "loop";
    }
    return "?";
}

bool needs_quoting(const std::string& label) {
    if (label.empty() || label == "tau" || label == "x" || label == "loop") {
        return true;
    }
    for (char c : label) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' ||
            c == '"' || c == '\\' || c == '-' || c == '>' || c == '/') {
            return true;
        }
    }
    return false;
}

void write_label(std::ostringstream& out, const std::string& label) {
    if (!needs_quoting(label)) {
        out << label;
        return;
    }
    out << '"';
    for (char c : label) {
        if (c == '"' || c == '\\') {
            out << '\\';
        }
        out << c;
    }
    out << '"';
}

void write_tree(std::ostringstream& out, const ProcessTree& tree) {
    switch (tree.kind) {
        case ProcessTree::Kind::leaf:
            write_label(out, tree.label);
            return;
        case ProcessTree::Kind::silent:
            out << "tau";
            return;
        case ProcessTree::Kind::op:
            out << op_token(tree.op) << '(';
            for (std::size_t i = 0; i < tree.children.size(); ++i) {
                if (i > 0) {
                    out << ", ";
                }
                write_tree(out, tree.children[i]);
            }
            out << ')';
            return;
    }
}

class TreeParser {
public:
    explicit TreeParser(std::string_view text) : text_(text) {}

    ProcessTree parse() {
        ProcessTree tree = parse_node();
        skip_space();
        if (pos_ != text_.size()) {
            fail("trailing input after tree");
        }
        return tree;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("tree text, position " + std::to_string(pos_) + ": " + message, pos_);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool try_consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    ProcessTree parse_node() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("expected a tree node");
        }
        if (text_[pos_] == '"') {
            return ProcessTree::make_leaf(parse_quoted());
        }
        // Operator tokens only count when followed by '('.
        for (Operator op : {Operator::sequence, Operator::parallel, Operator::loop,
                            Operator::xor_choice}) {
            std::string_view token = op_token(op);
            if (text_.substr(pos_, token.size()) == token) {
                std::size_t after = pos_ + token.size();
                while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) {
                    ++after;
                }
                if (after < text_.size() && text_[after] == '(') {
                    pos_ = after;
                    return parse_operator(op);
                }
            }
        }
        std::string word = parse_word();
        if (word == "tau") {
            return ProcessTree::make_silent();
        }
        return ProcessTree::make_leaf(std::move(word));
    }

    ProcessTree parse_operator(Operator op) {
        if (!try_consume("(")) {
            fail("expected '('");
        }
        std::vector<ProcessTree> children;
        while (true) {
            children.push_back(parse_node());
            skip_space();
            if (try_consume(",")) {
                continue;
            }
            if (try_consume(")")) {
                break;
            }
            fail("expected ',' or ')'");
        }
        if (children.size() < 2) {
            fail(std::string("operator ") + operator_name(op) + " needs at least two children");
        }
        return ProcessTree::make_op(op, std::move(children));
    }

    std::string parse_quoted() {
        ++pos_;  // opening quote
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') {
                ++pos_;
                if (pos_ >= text_.size()) {
                    fail("dangling escape in quoted label");
                }
            }
            out.push_back(text_[pos_++]);
        }
        if (pos_ >= text_.size()) {
            fail("unterminated quoted label");
        }
        ++pos_;  // closing quote
        return out;
    }

    std::string parse_word() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' ||
                c == '"') {
                break;
            }
            ++pos_;
        }
        if (pos_ == start) {
            fail("expected a label");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void json_escape(std::ostringstream& out, const std::string& s) {
    out << '"';
    for (char c : s) {
        switch (c) {
            case '"':
                out << "\\\"";
                break;
            case '\\':
                out << "\\\\";
                break;
            case '\n':
                out << "\\n";
                break;
            case '\t':
                out << "\\t";
                break;
            case '\r':
                out << "\\r";
                break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out << buf;
                } else {
                    out << c;
                }
        }
    }
    out << '"';
}

void write_json(std::ostringstream& out, const ProcessTree& tree) {
    switch (tree.kind) {
        case ProcessTree::Kind::leaf:
            out << "{\"label\": ";
            json_escape(out, tree.label);
            out << "}";
            return;
        case ProcessTree::Kind::silent:
            out << "{\"op\": \"tau\"}";
            return;
        case ProcessTree::Kind::op:
            out << "{\"op\": \"" << operator_name(tree.op) << "\", \"children\": [";
            for (std::size_t i = 0; i < tree.children.size(); ++i) {
                if (i > 0) {
                    out << ", ";
                }
                write_json(out, tree.children[i]);
            }
            out << "]}";
            return;
    }
}

}  // namespace

std::string tree_to_text(const ProcessTree& tree) {
    std::ostringstream out;
    write_tree(out, tree);
    return out.str();
}

ProcessTree parse_tree_text(std::string_view text) {
    return TreeParser(text).parse();
}

ProcessTree normalize(const ProcessTree& tree) {
    if (!tree.is_op()) {
        return tree;
    }
    std::vector<ProcessTree> children;
    for (const ProcessTree& child : tree.children) {
        ProcessTree flat = normalize(child);
        bool mergeable = tree.op != Operator::loop && flat.is_op() && flat.op == tree.op;
        if (mergeable) {
            for (ProcessTree& grandchild : flat.children) {
                children.push_back(std::move(grandchild));
            }
        } else {
            children.push_back(std::move(flat));
        }
    }
    return ProcessTree::make_op(tree.op, std::move(children));
}

std::string tree_to_json(const ProcessTree& tree) {
    std::ostringstream out;
    write_json(out, tree);
    return out.str();
}

std::string tree_to_dot(const ProcessTree& tree) {
    std::ostringstream out;
    out << "digraph tree {\n  node [shape=plaintext];\n";
    std::size_t counter = 0;
    auto emit = [&](auto&& self, const ProcessTree& node) -> std::size_t {
        std::size_t id = counter++;
        out << "  n" << id << " [label=\"";
        if (node.is_leaf()) {
            for (char c : node.label) {
                if (c == '"' || c == '\\') {
                    out << '\\';
                }
                out << c;
            }
        } else if (node.is_silent()) {
            out << "\xcf\x84";  // τ
        } else {
            out << operator_glyph(node.op);
        }
        out << "\"];\n";
        for (const ProcessTree& child : node.children) {
            std::size_t child_id = self(self, child);
            out << "  n" << id << " -> n" << child_id << ";\n";
        }
        return id;
    };
    emit(emit, tree);
    out << "}\n";
    return out.str();
}

namespace {

using TraceSet = std::set<std::vector<std::string>>;

void check_limit(std::size_t size, std::size_t limit) {
    if (size > limit) {
        throw ResourceError("model language exceeds the trace limit of " + std::to_string(limit) +
                            "; not computable at this scale");
    }
}

TraceSet concat(const TraceSet& left, const TraceSet& right, std::size_t limit) {
    TraceSet out;
    for (const auto& a : left) {
        for (const auto& b : right) {
            std::vector<std::string> joined = a;
            joined.insert(joined.end(), b.begin(), b.end());
            out.insert(std::move(joined));
            check_limit(out.size(), limit);
        }
    }
    return out;
}

void interleave(const std::vector<std::string>& a, std::size_t i, const std::vector<std::string>& b,
                std::size_t j, std::vector<std::string>& prefix, TraceSet& out, std::size_t limit) {
    if (i == a.size() && j == b.size()) {
        out.insert(prefix);
        check_limit(out.size(), limit);
        return;
    }
    if (i < a.size()) {
        prefix.push_back(a[i]);
        interleave(a, i + 1, b, j, prefix, out, limit);
        prefix.pop_back();
    }
    if (j < b.size()) {
        prefix.push_back(b[j]);
        interleave(a, i, b, j + 1, prefix, out, limit);
        prefix.pop_back();
    }
}

TraceSet shuffle(const TraceSet& left, const TraceSet& right, std::size_t limit) {
    TraceSet out;
    for (const auto& a : left) {
        for (const auto& b : right) {
            std::vector<std::string> prefix;
            interleave(a, 0, b, 0, prefix, out, limit);
        }
    }
    return out;
}

TraceSet language_of(const ProcessTree& tree, std::size_t loop_bound, std::size_t limit) {
    switch (tree.kind) {
        case ProcessTree::Kind::leaf:
            return {{tree.label}};
        case ProcessTree::Kind::silent:
            return {{}};
        case ProcessTree::Kind::op:
            break;
    }
    switch (tree.op) {
        case Operator::xor_choice: {
            TraceSet out;
            for (const ProcessTree& child : tree.children) {
                TraceSet sub = language_of(child, loop_bound, limit);
                out.insert(sub.begin(), sub.end());
                check_limit(out.size(), limit);
            }
            return out;
        }
        case Operator::sequence: {
            TraceSet out = language_of(tree.children.front(), loop_bound, limit);
            for (std::size_t i = 1; i < tree.children.size(); ++i) {
                out = concat(out, language_of(tree.children[i], loop_bound, limit), limit);
            }
            return out;
        }
        case Operator::parallel: {
            TraceSet out = language_of(tree.children.front(), loop_bound, limit);
            for (std::size_t i = 1; i < tree.children.size(); ++i) {
                out = shuffle(out, language_of(tree.children[i], loop_bound, limit), limit);
            }
            return out;
        }
        case Operator::loop: {
            TraceSet body = language_of(tree.children.front(), loop_bound, limit);
            TraceSet redo;
            for (std::size_t i = 1; i < tree.children.size(); ++i) {
                TraceSet sub = language_of(tree.children[i], loop_bound, limit);
                redo.insert(sub.begin(), sub.end());
                check_limit(redo.size(), limit);
            }
            TraceSet out = body;
            TraceSet current = body;
            for (std::size_t round = 0; round < loop_bound; ++round) {
                current = concat(concat(current, redo, limit), body, limit);
                std::size_t before = out.size();
                out.insert(current.begin(), current.end());
                check_limit(out.size(), limit);
                if (out.size() == before) {
                    break;  // fixed point (e.g. silent redo and body)
                }
            }
            return out;
        }
    }
    throw InternalError("unhandled operator in language computation");
}

}  // namespace

std::set<std::vector<std::string>> language(const ProcessTree& tree, std::size_t max_loop_iterations,
                                            std::size_t trace_limit) {
    return language_of(tree, max_loop_iterations, trace_limit);
}

}  // namespace pim
