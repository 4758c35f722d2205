#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pim/process_tree.hpp"

namespace pim {

/// Block-structured BPMN-like graph with only XOR and AND gateways. Produced
/// from a process tree, so split/join pairs match by construction; the
/// soundness check re-validates that structurally.
struct BlockGraph {
    enum class NodeType {
        start,
        end,
        task,
        xor_split,
        xor_join,
        and_split,
        and_join,
    };

    struct Node {
        NodeType type;
        std::string label;  // task name; empty for gateways
    };

    std::vector<Node> nodes;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

    std::size_t size() const { return nodes.size(); }
    std::size_t out_degree(std::uint32_t node) const;

    /// Control-flow complexity: XOR splits add their out-degree, AND splits
    /// add one.
    std::uint64_t cfc() const;

    static bool is_gateway(NodeType type) {
        return type == NodeType::xor_split || type == NodeType::xor_join ||
               type == NodeType::and_split || type == NodeType::and_join;
    }
};

BlockGraph to_block_graph(const ProcessTree& tree);

/// Structural soundness: unique start and end, every node forward-reachable
/// from start and backward-reachable from end, and per-type split/join counts
/// matching. Returns a diagnostic message, empty when sound.
std::string check_block_structure(const BlockGraph& graph);

std::string block_graph_to_dot(const BlockGraph& graph);
std::string block_graph_to_json(const BlockGraph& graph);

}  // namespace pim
