#include "polarnet/export.hpp"
#include "polarnet/textio.hpp"

#include <sstream>

namespace polarnet {

namespace {

double backbone_strength_of(const BackboneWeights& backbone, const EdgeKey& key) {
    EdgeKey sorted = key.second < key.first ? EdgeKey{key.second, key.first} : key;
    const auto it = backbone.strength.find(sorted);
    return it == backbone.strength.end() ? 0.0 : it->second;
}

} // namespace

std::string edge_csv(const Graph& g, const std::string& kind_label,
                     const BackboneWeights* backbone) {
    std::ostringstream out;
    out << "source,target,weight,kind";
    if (backbone) out << ",backbone_strength";
    out << '\n';
    for (const auto& [key, w] : g.edges) {
        out << csv_field(key.first) << ',' << csv_field(key.second) << ',' << w << ','
            << csv_field(kind_label);
        if (backbone) out << ',' << format_fixed(backbone_strength_of(*backbone, key), 6);
        out << '\n';
    }
    return out.str();
}

std::string graphml(const Graph& g, const BackboneWeights* backbone) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
    if (backbone) {
        out << "  <key id=\"embeddedness\" for=\"node\" attr.name=\"embeddedness\""
            << " attr.type=\"double\"/>\n"
            << "  <key id=\"backbone_strength\" for=\"edge\" attr.name=\"backbone_strength\""
            << " attr.type=\"double\"/>\n";
    }
    out << "  <graph edgedefault=\"" << (g.directed ? "directed" : "undirected") << "\">\n";
    for (const auto& [id, label] : g.nodes) {
        out << "    <node id=\"" << xml_escape(id) << "\">\n"
            << "      <data key=\"label\">" << label_name(label) << "</data>\n";
        if (backbone) {
            const auto it = backbone->embeddedness.find(id);
            const double e = it == backbone->embeddedness.end() ? 0.0 : it->second;
            out << "      <data key=\"embeddedness\">" << format_fixed(e, 6) << "</data>\n";
        }
        out << "    </node>\n";
    }
    for (const auto& [key, w] : g.edges) {
        out << "    <edge source=\"" << xml_escape(key.first) << "\" target=\""
            << xml_escape(key.second) << "\">\n"
            << "      <data key=\"weight\">" << w << "</data>\n";
        if (backbone)
            out << "      <data key=\"backbone_strength\">"
                << format_fixed(backbone_strength_of(*backbone, key), 6) << "</data>\n";
        out << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

void write_edge_csv(const std::string& path, const Graph& g, const std::string& kind_label,
                    const BackboneWeights* backbone) {
    atomic_write_file(path, edge_csv(g, kind_label, backbone));
}

void write_graphml(const std::string& path, const Graph& g, const BackboneWeights* backbone) {
    atomic_write_file(path, graphml(g, backbone));
}

} // namespace polarnet
