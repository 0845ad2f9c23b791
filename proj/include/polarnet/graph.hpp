#pragma once

#include "polarnet/corpus.hpp"
#include "polarnet/errors.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace polarnet {

using EdgeKey = std::pair<AccountId, AccountId>;

// A weighted graph over account ids. Ordered maps keep iteration (and thus
// every export and metric) deterministic regardless of insertion order.
// Undirected edges are stored once under the sorted endpoint pair.
// Self-loops are rejected: no network in this library carries them.
struct Graph {
    bool directed = true;
    std::optional<InteractionKind> kind;
    std::map<AccountId, GroupLabel> nodes;
    std::map<EdgeKey, std::int64_t> edges;

    EdgeKey edge_key(const AccountId& u, const AccountId& v) const {
        if (!directed && v < u) return {v, u};
        return {u, v};
    }

    void ensure_node(const AccountId& id, GroupLabel label = GroupLabel::Other) {
        nodes.emplace(id, label);
    }

    void add_edge(const AccountId& u, const AccountId& v, std::int64_t w = 1) {
        if (u == v) throw InvariantError("self edge on node " + u);
        ensure_node(u);
        ensure_node(v);
        edges[edge_key(u, v)] += w;
    }

    std::int64_t edge_weight(const AccountId& u, const AccountId& v) const {
        const auto it = edges.find(edge_key(u, v));
        return it == edges.end() ? 0 : it->second;
    }

    GroupLabel label(const AccountId& id) const {
        const auto it = nodes.find(id);
        return it == nodes.end() ? GroupLabel::Other : it->second;
    }

    // Overwrites every node's label from the map (absent accounts -> Other).
    void apply_labels(const LabelMap& labels) {
        for (auto& [id, label] : nodes) label = label_of(labels, id);
    }

    std::int64_t total_weight() const {
        std::int64_t sum = 0;
        for (const auto& [key, w] : edges) sum += w;
        return sum;
    }

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }
};

} // namespace polarnet
