#include "pim/block_graph.hpp"

#include <map>
#include <sstream>

#include "pim/errors.hpp"

namespace pim {

std::size_t BlockGraph::out_degree(std::uint32_t node) const {
    std::size_t n = 0;
    for (const auto& [from, to] : edges) {
        if (from == node) {
            ++n;
        }
    }
    return n;
}

std::uint64_t BlockGraph::cfc() const {
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].type == NodeType::xor_split) {
            total += out_degree(i);
        } else if (nodes[i].type == NodeType::and_split) {
            total += 1;
        }
    }
    return total;
}

namespace {

// Each subtree materialises to an (entry, exit) node pair, or to nothing at
// all for silent segments, which collapse into a direct edge at the caller.
class Builder {
public:
    BlockGraph build(const ProcessTree& tree) {
        std::uint32_t start = add_node(BlockGraph::NodeType::start, "");
        std::uint32_t end = add_node(BlockGraph::NodeType::end, "");
        Segment segment = render(tree);
        connect(start, segment, end);
        return std::move(graph_);
    }

private:
    struct Segment {
        bool transparent = true;  // no nodes; behaves like a plain edge
        std::uint32_t entry = 0;
        std::uint32_t exit = 0;
    };

    std::uint32_t add_node(BlockGraph::NodeType type, std::string label) {
        graph_.nodes.push_back({type, std::move(label)});
        return static_cast<std::uint32_t>(graph_.nodes.size() - 1);
    }

    void add_edge(std::uint32_t from, std::uint32_t to) { graph_.edges.emplace_back(from, to); }

    void connect(std::uint32_t pred, const Segment& segment, std::uint32_t succ) {
        if (segment.transparent) {
            add_edge(pred, succ);
        } else {
            add_edge(pred, segment.entry);
            add_edge(segment.exit, succ);
        }
    }

    Segment render(const ProcessTree& tree) {
        switch (tree.kind) {
            case ProcessTree::Kind::leaf: {
                std::uint32_t task = add_node(BlockGraph::NodeType::task, tree.label);
                return {false, task, task};
            }
            case ProcessTree::Kind::silent:
                return {};
            case ProcessTree::Kind::op:
                break;
        }
        switch (tree.op) {
            case Operator::xor_choice:
            case Operator::parallel: {
                bool is_xor = tree.op == Operator::xor_choice;
                std::uint32_t split = add_node(
                    is_xor ? BlockGraph::NodeType::xor_split : BlockGraph::NodeType::and_split, "");
                std::uint32_t join = add_node(
                    is_xor ? BlockGraph::NodeType::xor_join : BlockGraph::NodeType::and_join, "");
                for (const ProcessTree& child : tree.children) {
                    connect(split, render(child), join);
                }
                return {false, split, join};
            }
            case Operator::sequence: {
                Segment chain;
                for (const ProcessTree& child : tree.children) {
                    Segment part = render(child);
                    if (part.transparent) {
                        continue;
                    }
                    if (chain.transparent) {
                        chain = part;
                    } else {
                        add_edge(chain.exit, part.entry);
                        chain.exit = part.exit;
                    }
                }
                return chain;
            }
            case Operator::loop: {
                std::uint32_t entry = add_node(BlockGraph::NodeType::xor_join, "");
                std::uint32_t exit = add_node(BlockGraph::NodeType::xor_split, "");
                connect(entry, render(tree.children.front()), exit);
                for (std::size_t i = 1; i < tree.children.size(); ++i) {
                    connect(exit, render(tree.children[i]), entry);  // back path
                }
                return {false, entry, exit};
            }
        }
        throw InternalError("unhandled node in block-graph construction");
    }

    BlockGraph graph_;
};

}  // namespace

BlockGraph to_block_graph(const ProcessTree& tree) {
    Builder builder;
    return builder.build(tree);
}

std::string check_block_structure(const BlockGraph& graph) {
    std::size_t n = graph.nodes.size();
    std::vector<std::size_t> in_degree(n, 0), out_degree(n, 0);
    std::vector<std::vector<std::uint32_t>> fwd(n), rev(n);
    for (const auto& [from, to] : graph.edges) {
        if (from >= n || to >= n) {
            return "edge references a missing node";
        }
        ++out_degree[from];
        ++in_degree[to];
        fwd[from].push_back(to);
        rev[to].push_back(from);
    }

    std::size_t starts = 0, ends = 0;
    std::uint32_t start = 0, end = 0;
    std::map<BlockGraph::NodeType, std::size_t> type_counts;
    for (std::uint32_t i = 0; i < n; ++i) {
        ++type_counts[graph.nodes[i].type];
        if (graph.nodes[i].type == BlockGraph::NodeType::start) {
            ++starts;
            start = i;
            if (in_degree[i] != 0) {
                return "start node has incoming edges";
            }
        }
        if (graph.nodes[i].type == BlockGraph::NodeType::end) {
            ++ends;
            end = i;
            if (out_degree[i] != 0) {
                return "end node has outgoing edges";
            }
        }
    }
    if (starts != 1 || ends != 1) {
        return "expected exactly one start and one end node";
    }
    if (type_counts[BlockGraph::NodeType::xor_split] != type_counts[BlockGraph::NodeType::xor_join]) {
        return "unmatched XOR gateway pair";
    }
    if (type_counts[BlockGraph::NodeType::and_split] != type_counts[BlockGraph::NodeType::and_join]) {
        return "unmatched AND gateway pair";
    }

    auto reach = [n](std::uint32_t from, const std::vector<std::vector<std::uint32_t>>& adj) {
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> stack{from};
        seen[from] = true;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    };
    std::vector<bool> from_start = reach(start, fwd);
    std::vector<bool> to_end = reach(end, rev);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!from_start[i]) {
            return "node " + std::to_string(i) + " unreachable from start";
        }
        if (!to_end[i]) {
            return "node " + std::to_string(i) + " cannot reach end";
        }
    }
    return "";
}

namespace {

const char* node_type_name(BlockGraph::NodeType type) {
    switch (type) {
        case BlockGraph::NodeType::start:
            return "start";
        case BlockGraph::NodeType::end:
            return "end";
        case BlockGraph::NodeType::task:
            return "task";
        case BlockGraph::NodeType::xor_split:
            return "xor_split";
        case BlockGraph::NodeType::xor_join:
            return "xor_join";
        case BlockGraph::NodeType::and_split:
            return "and_split";
        case BlockGraph::NodeType::and_join:
            return "and_join";
    }
    return "?";
}

}  // namespace

std::string block_graph_to_dot(const BlockGraph& graph) {
    std::ostringstream out;
    out << "digraph model {\n  rankdir=LR;\n";
    for (std::uint32_t i = 0; i < graph.nodes.size(); ++i) {
        const auto& node = graph.nodes[i];
        out << "  n" << i << " [";
        switch (node.type) {
            case BlockGraph::NodeType::start:
                out << "shape=circle, label=\"\", width=0.3";
                break;
            case BlockGraph::NodeType::end:
                out << "shape=doublecircle, label=\"\", width=0.25";
                break;
            case BlockGraph::NodeType::task: {
                out << "shape=box, label=\"";
                for (char c : node.label) {
                    if (c == '"' || c == '\\') {
                        out << '\\';
                    }
                    out << c;
                }
                out << "\"";
                break;
            }
            case BlockGraph::NodeType::xor_split:
            case BlockGraph::NodeType::xor_join:
                out << "shape=diamond, label=\"\xc3\x97\"";
                break;
            case BlockGraph::NodeType::and_split:
            case BlockGraph::NodeType::and_join:
                out << "shape=diamond, label=\"+\"";
                break;
        }
        out << "];\n";
    }
    for (const auto& [from, to] : graph.edges) {
        out << "  n" << from << " -> n" << to << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string block_graph_to_json(const BlockGraph& graph) {
    std::ostringstream out;
    out << "{\"nodes\": [";
    for (std::uint32_t i = 0; i < graph.nodes.size(); ++i) {
        if (i > 0) {
            out << ", ";
        }
        out << "{\"id\": " << i << ", \"type\": \"" << node_type_name(graph.nodes[i].type) << "\"";
        if (graph.nodes[i].type == BlockGraph::NodeType::task) {
            out << ", \"label\": \"";
            for (char c : graph.nodes[i].label) {
                if (c == '"' || c == '\\') {
                    out << '\\';
                }
                out << c;
            }
            out << "\"";
        }
        out << "}";
    }
    out << "], \"edges\": [";
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        if (i > 0) {
            out << ", ";
        }
        out << "{\"from\": " << graph.edges[i].first << ", \"to\": " << graph.edges[i].second << "}";
    }
    out << "]}";
    return out.str();
}

}  // namespace pim
