#include "polarnet/backbone.hpp"
#include "polarnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace polarnet {

namespace {

EdgeKey sorted_key(const EdgeKey& key) {
    return key.second < key.first ? EdgeKey{key.second, key.first} : key;
}

std::set<EdgeKey> reduced_edges(const Graph& g) {
    std::set<EdgeKey> reduced;
    for (const auto& [key, w] : g.edges) reduced.insert(sorted_key(key));
    return reduced;
}

std::map<AccountId, std::vector<AccountId>> adjacency(const std::set<EdgeKey>& edges) {
    std::map<AccountId, std::vector<AccountId>> adj;
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& [id, neighbours] : adj) std::sort(neighbours.begin(), neighbours.end());
    return adj;
}

std::int64_t intersection_size(const std::vector<AccountId>& a,
                               const std::vector<AccountId>& b) {
    std::int64_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else { ++n; ++i; ++j; }
    }
    return n;
}

// 4-cycles through {u,v}: choose x adjacent to u, then any common neighbour
// y of x and v closes the cycle u-v-y-x. u itself always sits in that
// intersection (it neighbours both x and v), hence the -1.
std::int64_t quadrangles_through(const AccountId& u, const AccountId& v,
                                 const std::map<AccountId, std::vector<AccountId>>& adj) {
    const auto& nu = adj.at(u);
    const auto& nv = adj.at(v);
    // Iterating the sparser endpoint keeps the work near deg(u)*deg(v).
    const auto& outer = nu.size() <= nv.size() ? nu : nv;
    const auto& fixed = nu.size() <= nv.size() ? nv : nu;
    const AccountId& skip = nu.size() <= nv.size() ? v : u;
    std::int64_t count = 0;
    for (const auto& x : outer) {
        if (x == skip) continue;
        count += intersection_size(adj.at(x), fixed) - 1;
    }
    return count;
}

} // namespace

std::map<EdgeKey, std::int64_t> quadrangle_count(const Graph& g) {
    const std::set<EdgeKey> edges = reduced_edges(g);
    const auto adj = adjacency(edges);
    std::map<EdgeKey, std::int64_t> counts;
    for (const auto& e : edges) counts[e] = quadrangles_through(e.first, e.second, adj);
    return counts;
}

BackboneWeights backbone_strength(const Graph& g, BackboneNormalization normalization) {
    BackboneWeights weights;
    weights.normalization = normalization;

    if (normalization == BackboneNormalization::Raw) {
        for (const auto& [e, count] : quadrangle_count(g))
            weights.strength[e] = static_cast<double>(count);
        weights.embeddedness = node_embeddedness(weights.strength);
        return weights;
    }

    const std::set<EdgeKey> edges = reduced_edges(g);
    const auto adj = adjacency(edges);
    // Q(side) = neighbours of one endpoint that complete at least one
    // quadrangle with the edge; the strength is the Jaccard overlap of the
    // two endpoints' sets.
    auto completers = [&](const AccountId& from, const AccountId& other) {
        std::vector<AccountId> q;
        for (const auto& x : adj.at(from)) {
            if (x == other) continue;
            if (intersection_size(adj.at(x), adj.at(other)) - 1 >= 1) q.push_back(x);
        }
        return q;  // sorted: adj lists are sorted
    };
    for (const auto& e : edges) {
        const std::vector<AccountId> qu = completers(e.first, e.second);
        const std::vector<AccountId> qv = completers(e.second, e.first);
        const std::int64_t shared = intersection_size(qu, qv);
        const std::int64_t united =
            static_cast<std::int64_t>(qu.size() + qv.size()) - shared;
        weights.strength[e] =
            united == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(united);
    }
    weights.embeddedness = node_embeddedness(weights.strength);
    return weights;
}

std::map<AccountId, double> node_embeddedness(const std::map<EdgeKey, double>& strength) {
    std::map<AccountId, double> sums;
    for (const auto& [e, s] : strength) {
        sums[e.first] += s;
        sums[e.second] += s;
    }
    return sums;
}

Graph sparsify(const Graph& g, const BackboneWeights& weights, const SparsifyRule& rule) {
    auto strength_of = [&](const EdgeKey& e) {
        const auto it = weights.strength.find(e);
        return it == weights.strength.end() ? 0.0 : it->second;
    };

    const std::set<EdgeKey> edges = reduced_edges(g);
    std::set<EdgeKey> kept;
    if (rule.kind == SparsifyRule::Kind::GlobalThreshold) {
        if (rule.threshold < 0) throw InputError("sparsify threshold must be >= 0");
        for (const auto& e : edges)
            if (strength_of(e) >= rule.threshold) kept.insert(e);
    } else {
        if (!(rule.fraction > 0.0 && rule.fraction <= 1.0))
            throw InputError("sparsify fraction must lie in (0,1]");
        std::map<AccountId, std::vector<EdgeKey>> incident;
        for (const auto& e : edges) {
            incident[e.first].push_back(e);
            incident[e.second].push_back(e);
        }
        for (auto& [id, list] : incident) {
            std::sort(list.begin(), list.end(), [&](const EdgeKey& a, const EdgeKey& b) {
                const double sa = strength_of(a), sb = strength_of(b);
                if (sa != sb) return sa > sb;
                return a < b;
            });
            const auto keep = static_cast<std::size_t>(
                std::ceil(rule.fraction * static_cast<double>(list.size())));
            for (std::size_t i = 0; i < keep && i < list.size(); ++i) kept.insert(list[i]);
        }
    }

    Graph out;
    out.directed = g.directed;
    out.kind = g.kind;
    out.nodes = g.nodes;
    for (const auto& [key, w] : g.edges)
        if (kept.count(sorted_key(key))) out.edges.emplace(key, w);
    return out;
}

} // namespace polarnet
