#pragma once

#include "polarnet/backbone.hpp"
#include "polarnet/graph.hpp"

#include <string>

namespace polarnet {

// Edge CSV: header `source,target,weight,kind`, one row per stored edge in
// deterministic (map) order; a `backbone_strength` column is appended when
// strengths are supplied. kind_label names the network (e.g. "retweet",
// "hashtags").
std::string edge_csv(const Graph& g, const std::string& kind_label,
                     const BackboneWeights* backbone = nullptr);

// GraphML with node attribute `label` and edge attribute `weight`; with
// strengths supplied, adds edge `backbone_strength` and node `embeddedness`.
std::string graphml(const Graph& g, const BackboneWeights* backbone = nullptr);

void write_edge_csv(const std::string& path, const Graph& g, const std::string& kind_label,
                    const BackboneWeights* backbone = nullptr);
void write_graphml(const std::string& path, const Graph& g,
                   const BackboneWeights* backbone = nullptr);

} // namespace polarnet
