#include "polarnet/metrics.hpp"
#include "polarnet/errors.hpp"

#include <array>
#include <cmath>

namespace polarnet {

TallyMatrix group_tally(const Graph& g, GroupLabel group_1, GroupLabel group_2) {
    if (group_1 == group_2) throw InputError("tally needs two distinct groups");
    TallyMatrix t;
    t.directed = g.directed;
    t.group_1 = group_1;
    t.group_2 = group_2;
    auto row_of = [&](GroupLabel l) { return l == group_1 ? 0 : l == group_2 ? 1 : -1; };
    for (const auto& [key, w] : g.edges) {
        const int s = row_of(g.label(key.first));
        const int d = row_of(g.label(key.second));
        if (s < 0 || d < 0) continue;
        if (g.directed || s == d) {
            t.cells[s][d] += w;
        } else {
            t.cells[s][d] += w;  // undirected cross weight shows up in both
            t.cells[d][s] += w;  // cells; total() counts it once
        }
    }
    return t;
}

std::set<AccountId> nodes_with_label(const Graph& g, GroupLabel label) {
    std::set<AccountId> members;
    for (const auto& [id, l] : g.nodes)
        if (l == label) members.insert(id);
    return members;
}

namespace {

EiScore finish_ei(std::int64_t internal_weight, std::int64_t external_weight) {
    EiScore s;
    s.internal_weight = internal_weight;
    s.external_weight = external_weight;
    const std::int64_t denom = internal_weight + external_weight;
    if (denom > 0)
        s.ei = static_cast<double>(external_weight - internal_weight) /
               static_cast<double>(denom);
    return s;
}

} // namespace

EiScore ei_index_pair(const Graph& g, const std::set<AccountId>& members_1,
                      const std::set<AccountId>& members_2) {
    std::int64_t internal_weight = 0, external_weight = 0;
    auto side = [&](const AccountId& id) {
        return members_1.count(id) ? 1 : members_2.count(id) ? 2 : 0;
    };
    for (const auto& [key, w] : g.edges) {
        const int u = side(key.first);
        const int v = side(key.second);
        if (u == 0 || v == 0) continue;
        (u == v ? internal_weight : external_weight) += w;
    }
    return finish_ei(internal_weight, external_weight);
}

EiScore ei_index_pair(const Graph& g, GroupLabel group_1, GroupLabel group_2) {
    if (group_1 == group_2) throw InputError("pair E-I needs two distinct groups");
    std::int64_t internal_weight = 0, external_weight = 0;
    auto side = [&](const AccountId& id) {
        const GroupLabel l = g.label(id);
        return l == group_1 ? 1 : l == group_2 ? 2 : 0;
    };
    for (const auto& [key, w] : g.edges) {
        const int u = side(key.first);
        const int v = side(key.second);
        if (u == 0 || v == 0) continue;
        (u == v ? internal_weight : external_weight) += w;
    }
    return finish_ei(internal_weight, external_weight);
}

EiScore ei_index_broader(const Graph& g, const std::set<AccountId>& members) {
    std::int64_t internal_weight = 0, external_weight = 0;
    for (const auto& [key, w] : g.edges) {
        const int inside = (members.count(key.first) ? 1 : 0) +
                           (members.count(key.second) ? 1 : 0);
        if (inside == 2) internal_weight += w;
        else if (inside == 1) external_weight += w;
    }
    return finish_ei(internal_weight, external_weight);
}

EiScore ei_index_broader(const Graph& g) {
    std::int64_t internal_weight = 0, external_weight = 0;
    for (const auto& [key, w] : g.edges) {
        const int inside = (g.label(key.first) != GroupLabel::Other ? 1 : 0) +
                           (g.label(key.second) != GroupLabel::Other ? 1 : 0);
        if (inside == 2) internal_weight += w;
        else if (inside == 1) external_weight += w;
    }
    return finish_ei(internal_weight, external_weight);
}

namespace {

// Newman's categorical assortativity over oriented (source category, target
// category) pairs; undirected callers pass each edge in both orientations.
AssortativityScore newman_assortativity(const std::vector<std::pair<int, int>>& oriented,
                                        int n_categories) {
    AssortativityScore score;
    if (oriented.empty()) {
        score.degenerate = true;
        return score;
    }
    std::vector<std::int64_t> tallies(static_cast<std::size_t>(n_categories) *
                                          static_cast<std::size_t>(n_categories),
                                      0);
    for (const auto& [s, t] : oriented)
        tallies[static_cast<std::size_t>(s) * static_cast<std::size_t>(n_categories) +
                static_cast<std::size_t>(t)] += 1;
    // One division per cell keeps clean ratios exact (20/40 stays 0.5).
    std::vector<double> mixing(tallies.size());
    for (std::size_t i = 0; i < tallies.size(); ++i)
        mixing[i] = static_cast<double>(tallies[i]) / static_cast<double>(oriented.size());

    double trace = 0.0, chance = 0.0;
    for (int i = 0; i < n_categories; ++i) {
        trace += mixing[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_categories) +
                        static_cast<std::size_t>(i)];
        double row = 0.0, col = 0.0;
        for (int j = 0; j < n_categories; ++j) {
            row += mixing[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_categories) +
                          static_cast<std::size_t>(j)];
            col += mixing[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_categories) +
                          static_cast<std::size_t>(i)];
        }
        chance += row * col;
    }
    const double denom = 1.0 - chance;
    if (std::fabs(denom) < 1e-12) {
        score.degenerate = true;
        return score;
    }
    score.r = (trace - chance) / denom;
    return score;
}

} // namespace

AssortativityScore assortativity_pair(const Graph& g, GroupLabel group_1,
                                      GroupLabel group_2) {
    if (group_1 == group_2) throw InputError("assortativity needs two distinct groups");
    std::vector<std::pair<int, int>> oriented;
    auto cat = [&](const AccountId& id) {
        const GroupLabel l = g.label(id);
        return l == group_1 ? 0 : l == group_2 ? 1 : -1;
    };
    for (const auto& [key, w] : g.edges) {
        const int s = cat(key.first);
        const int t = cat(key.second);
        if (s < 0 || t < 0) continue;
        oriented.emplace_back(s, t);
        if (!g.directed) oriented.emplace_back(t, s);
    }
    return newman_assortativity(oriented, 2);
}

AssortativityScore assortativity_all_labels(const Graph& g) {
    std::vector<std::pair<int, int>> oriented;
    for (const auto& [key, w] : g.edges) {
        const int s = static_cast<int>(g.label(key.first));
        const int t = static_cast<int>(g.label(key.second));
        oriented.emplace_back(s, t);
        if (!g.directed) oriented.emplace_back(t, s);
    }
    return newman_assortativity(oriented, 4);
}

SignificanceResult binomial_homophily_test(const TallyMatrix& tally, GroupLabel source,
                                           double null_p) {
    if (!(null_p > 0.0 && null_p < 1.0))
        throw InputError("binomial null probability must lie strictly between 0 and 1");
    int row;
    if (source == tally.group_1) row = 0;
    else if (source == tally.group_2) row = 1;
    else throw InputError("source group is not part of this tally");

    const std::int64_t homophilic = tally.homophilic(row);
    const std::int64_t heterophilic = tally.heterophilic(row);
    const std::int64_t n = homophilic + heterophilic;
    SignificanceResult result;
    if (n == 0) return result;

    result.applicable = true;
    if (static_cast<double>(homophilic) >= null_p * static_cast<double>(n)) {
        result.direction = Direction::Homophilic;
        result.p_value = binomial_upper_tail(n, homophilic, null_p);
    } else {
        result.direction = Direction::Heterophilic;
        result.p_value = binomial_upper_tail(n, heterophilic, 1.0 - null_p);
    }
    result.star = significance_star(result.p_value);
    return result;
}

SignificanceResult alignment_test(const std::set<AccountId>& members_a,
                                  const std::set<AccountId>& members_b,
                                  const std::set<AccountId>& universe) {
    if (universe.empty()) throw InputError("alignment test needs a non-empty universe");
    std::int64_t overlap = 0;
    for (const auto& id : members_a) {
        if (!universe.count(id))
            throw InputError("alignment test: first member set leaves the universe");
        if (members_b.count(id)) ++overlap;
    }
    for (const auto& id : members_b)
        if (!universe.count(id))
            throw InputError("alignment test: second member set leaves the universe");

    SignificanceResult result;
    result.applicable = true;
    result.direction = Direction::Homophilic;
    result.p_value = hypergeometric_upper_tail(
        static_cast<std::int64_t>(universe.size()),
        static_cast<std::int64_t>(members_a.size()),
        static_cast<std::int64_t>(members_b.size()), overlap);
    result.star = significance_star(result.p_value);
    return result;
}

HomophilyReport homophily_report(const std::string& dataset,
                                 const std::vector<SchemeNetworks>& schemes,
                                 NullMode null_mode) {
    HomophilyReport report;
    for (const auto& scheme : schemes) {
        for (const auto& [network_name, g] : scheme.networks) {
            ReportRow row;
            row.group_pair = scheme.scheme_name;
            row.dataset = dataset;
            row.network = network_name;
            for (const auto& [id, label] : g.nodes) {
                if (label == GroupLabel::Category1) ++row.n_cat1;
                else if (label == GroupLabel::Category2) ++row.n_cat2;
            }

            const TallyMatrix tally =
                group_tally(g, GroupLabel::Category1, GroupLabel::Category2);
            const EiScore pair =
                ei_index_pair(g, GroupLabel::Category1, GroupLabel::Category2);
            if (tally.total() != pair.internal_weight + pair.external_weight)
                throw InvariantError("tally total and pair-scope E+I disagree on network " +
                                     network_name);
            row.internal_weight = pair.internal_weight;
            row.external_weight = pair.external_weight;
            row.weight_sum = pair.internal_weight + pair.external_weight;
            if (row.weight_sum > 0) {
                row.homophilic_pct = 100.0 * static_cast<double>(pair.internal_weight) /
                                     static_cast<double>(row.weight_sum);
                row.heterophilic_pct = 100.0 * static_cast<double>(pair.external_weight) /
                                       static_cast<double>(row.weight_sum);
            }
            row.ei = pair.ei;

            const AssortativityScore assort =
                assortativity_pair(g, GroupLabel::Category1, GroupLabel::Category2);
            row.assortativity = assort.r;
            row.assortativity_degenerate = assort.degenerate;

            const EiScore broader = ei_index_broader(g);
            row.broader_nodes = static_cast<std::int64_t>(g.node_count());
            row.broader_internal_weight = broader.internal_weight;
            row.broader_external_weight = broader.external_weight;
            row.broader_weight = broader.internal_weight + broader.external_weight;
            row.broader_ei = broader.ei;
            report.rows.push_back(std::move(row));

            const std::int64_t n_focal = report.rows.back().n_cat1 + report.rows.back().n_cat2;
            const std::array<std::pair<GroupLabel, int>, 2> sources = {
                {{GroupLabel::Category1, 0}, {GroupLabel::Category2, 1}}};
            for (const auto& [source, r] : sources) {
                TallyRow tr;
                tr.group_pair = scheme.scheme_name;
                tr.dataset = dataset;
                tr.network = network_name;
                tr.source = source;
                tr.to_category1 = tally.cells[r][0];
                tr.to_category2 = tally.cells[r][1];
                double null_p = 0.5;
                bool degenerate_null = false;
                if (null_mode == NullMode::SizeWeighted) {
                    const std::int64_t own = r == 0 ? report.rows.back().n_cat1
                                                    : report.rows.back().n_cat2;
                    if (own <= 0 || own >= n_focal) degenerate_null = true;
                    else null_p = static_cast<double>(own) / static_cast<double>(n_focal);
                }
                // A degenerate null (a focal group absent from the graph)
                // leaves nothing to test against; rendered "--".
                if (!degenerate_null)
                    tr.significance = binomial_homophily_test(tally, source, null_p);
                report.tallies.push_back(std::move(tr));
            }
        }
    }
    return report;
}

namespace {

void verify_ei_cell(const std::optional<double>& ei, std::int64_t internal_weight,
                    std::int64_t external_weight, const std::string& where) {
    const std::int64_t denom = internal_weight + external_weight;
    if (!ei) {
        if (denom != 0)
            throw InvariantError("E-I missing despite nonzero weight in " + where);
        return;
    }
    if (denom == 0) throw InvariantError("E-I present with zero weight in " + where);
    const double recomputed = static_cast<double>(external_weight - internal_weight) /
                              static_cast<double>(denom);
    if (std::fabs(recomputed - *ei) > 1e-9)
        throw InvariantError("E-I does not match its weight fields in " + where);
}

} // namespace

void verify_report(const HomophilyReport& report) {
    for (const auto& row : report.rows) {
        const std::string where = row.group_pair + "/" + row.network;
        verify_ei_cell(row.ei, row.internal_weight, row.external_weight, where);
        verify_ei_cell(row.broader_ei, row.broader_internal_weight,
                       row.broader_external_weight, where + " (broader)");
        if (row.weight_sum != row.internal_weight + row.external_weight)
            throw InvariantError("weight sum does not match its parts in " + where);
        if (row.broader_weight != row.broader_internal_weight + row.broader_external_weight)
            throw InvariantError("broader weight sum does not match its parts in " + where);
        if (row.homophilic_pct.has_value() != row.heterophilic_pct.has_value())
            throw InvariantError("percentage pair half-defined in " + where);
        if (row.homophilic_pct &&
            std::fabs(*row.homophilic_pct + *row.heterophilic_pct - 100.0) > 0.1)
            throw InvariantError("percentages do not sum to 100 in " + where);
    }
}

} // namespace polarnet
