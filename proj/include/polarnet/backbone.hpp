#pragma once

#include "polarnet/graph.hpp"

#include <cstdint>
#include <map>

namespace polarnet {

// All backbone computations run on the simple undirected reduction of the
// graph: directions dropped, antiparallel edges merged, weights ignored.
// Keys below are always the sorted endpoint pair.

// Number of distinct 4-cycles through each edge of the reduced graph
// (entries exist for every edge, zeros included).
std::map<EdgeKey, std::int64_t> quadrangle_count(const Graph& g);

enum class BackboneNormalization {
    Raw,      // strength = quadrangle count
    Jaccard,  // overlap of the two endpoints' quadrangle-completing neighbours
};

struct BackboneWeights {
    BackboneNormalization normalization = BackboneNormalization::Raw;
    std::map<EdgeKey, double> strength;
    std::map<AccountId, double> embeddedness;  // per node: sum of incident strengths
};

BackboneWeights backbone_strength(const Graph& g, BackboneNormalization normalization);

// Recomputes the per-node sums from a strength map (nodes without any
// incident strength are absent; treat as 0).
std::map<AccountId, double> node_embeddedness(const std::map<EdgeKey, double>& strength);

struct SparsifyRule {
    enum class Kind { TopFractionPerNode, GlobalThreshold } kind = Kind::TopFractionPerNode;
    double fraction = 1.0;   // TopFractionPerNode: f in (0,1]
    double threshold = 0.0;  // GlobalThreshold: minimum strength kept
};

// Keeps the strong edges: GlobalThreshold keeps strength >= t;
// TopFractionPerNode keeps, for each node, its ceil(f * degree) strongest
// incident edges (degree over distinct neighbours), and an edge survives when
// either endpoint keeps it. Ties break toward the lexicographically smaller
// edge. Every node stays, with its label, even if all its edges go.
Graph sparsify(const Graph& g, const BackboneWeights& weights, const SparsifyRule& rule);

} // namespace polarnet
