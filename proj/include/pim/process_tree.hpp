#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pim/cut_search.hpp"

namespace pim {

/// Recursive block-structured model. A node is an activity leaf, the silent
/// activity tau, or an operator over at least two children. The first child
/// of a loop is the body; the remaining children are redo alternatives.
struct ProcessTree {
    enum class Kind { leaf, silent, op };

    Kind kind = Kind::silent;
    std::string label;     // leaf only
    Operator op = Operator::xor_choice;
    std::vector<ProcessTree> children;

    static ProcessTree make_leaf(std::string label);
    static ProcessTree make_silent();
    static ProcessTree make_op(Operator op, std::vector<ProcessTree> children);

    bool operator==(const ProcessTree&) const = default;

    bool is_leaf() const { return kind == Kind::leaf; }
    bool is_silent() const { return kind == Kind::silent; }
    bool is_op() const { return kind == Kind::op; }

    std::size_t node_count() const;
    std::set<std::string> leaf_labels() const;
};

/// ASCII text form: "x(...)", "->(...)", "/\(...)", "loop(body, redo...)",
/// leaves by label, tau for the silent activity. Labels that collide with
/// the syntax are double-quoted with backslash escapes.
std::string tree_to_text(const ProcessTree& tree);

/// Inverse of tree_to_text. Raises ParseError with a character position on
/// malformed input, including operator arity violations.
ProcessTree parse_tree_text(std::string_view text);

/// Flattens nested same-operator children of xor, sequence, and parallel
/// nodes. Loops are left alone. Never changes the tree's language.
ProcessTree normalize(const ProcessTree& tree);

/// JSON dump: operator nodes as {"op": ..., "children": [...]}, leaves as
/// {"label": ...}, silent as {"op": "tau"}.
std::string tree_to_json(const ProcessTree& tree);

/// DOT rendering of the tree itself (operator glyphs as node labels).
std::string tree_to_dot(const ProcessTree& tree);

/// Bounded language: the set of label sequences the tree can produce with at
/// most `max_loop_iterations` redo rounds per loop. Throws ResourceError when
/// the result would exceed `trace_limit` traces.
std::set<std::vector<std::string>> language(const ProcessTree& tree, std::size_t max_loop_iterations,
                                            std::size_t trace_limit = 200000);

}  // namespace pim
