#pragma once

#include "polarnet/graph.hpp"
#include "polarnet/stats.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace polarnet {

// Focal-pair weight sums: cells[s][t] holds the total edge weight from
// group s to group t (row/column 0 = group_1, 1 = group_2); edges touching
// any other label are outside this scope. Undirected graphs produce a
// symmetric matrix whose cross weight sits in both off-diagonal cells but
// is counted once by total().
struct TallyMatrix {
    bool directed = true;
    GroupLabel group_1 = GroupLabel::Category1;
    GroupLabel group_2 = GroupLabel::Category2;
    std::int64_t cells[2][2] = {{0, 0}, {0, 0}};

    std::int64_t homophilic(int row) const { return cells[row][row]; }
    std::int64_t heterophilic(int row) const { return cells[row][1 - row]; }
    std::int64_t total() const {
        return cells[0][0] + cells[1][1] + cells[0][1] + (directed ? cells[1][0] : 0);
    }
};

TallyMatrix group_tally(const Graph& g, GroupLabel group_1, GroupLabel group_2);

std::set<AccountId> nodes_with_label(const Graph& g, GroupLabel label);

struct EiScore {
    std::int64_t internal_weight = 0;
    std::int64_t external_weight = 0;
    // (external - internal) / (external + internal); nullopt when no edges
    // fall in scope. -1 is pure homophily, +1 pure heterophily.
    std::optional<double> ei;
};

// Pair scope: only edges with both endpoints inside members_1 or members_2
// count; internal = same set, external = across the two sets. Edge direction
// is ignored; each edge contributes its weight once.
EiScore ei_index_pair(const Graph& g, const std::set<AccountId>& members_1,
                      const std::set<AccountId>& members_2);
EiScore ei_index_pair(const Graph& g, GroupLabel group_1, GroupLabel group_2);

// Broader scope: internal = both endpoints in members, external = exactly one
// endpoint in members; edges fully outside are ignored.
EiScore ei_index_broader(const Graph& g, const std::set<AccountId>& members);
// members = everyone labelled Category1, Category2 or Both.
EiScore ei_index_broader(const Graph& g);

struct AssortativityScore {
    double r = 0.0;
    // No in-scope edges, or every edge inside a single label: the formula's
    // denominator vanishes and r is reported as 0 with this flag set.
    bool degenerate = false;
};

// Newman categorical assortativity over the unweighted edge set (multiple
// interactions between the same pair count once). The pair form restricts to
// edges whose endpoints both carry a focal label; the all-labels form mixes
// over all four labels on the whole graph.
AssortativityScore assortativity_pair(const Graph& g, GroupLabel group_1,
                                      GroupLabel group_2);
AssortativityScore assortativity_all_labels(const Graph& g);

enum class Direction { Homophilic, Heterophilic };

struct SignificanceResult {
    bool applicable = false;  // false = no trials at all; rendered as "--"
    double p_value = 1.0;
    std::string star = "--";
    Direction direction = Direction::Homophilic;
};

// Exact one-sided binomial test for one tally row. Null: each unit of weight
// from `source` lands homophilically with probability null_p. The test picks
// the side lying above its null expectation and reports the exact tail
// probability of a result at least that extreme.
SignificanceResult binomial_homophily_test(const TallyMatrix& tally, GroupLabel source,
                                           double null_p = 0.5);

// Exact one-sided over-representation test of the overlap |A n B| against
// independent membership within the universe. direction is always
// Homophilic: the test only looks toward larger-than-chance overlap.
SignificanceResult alignment_test(const std::set<AccountId>& members_a,
                                  const std::set<AccountId>& members_b,
                                  const std::set<AccountId>& universe);

enum class NullMode {
    Even,          // null_p = 0.5 for every row
    SizeWeighted,  // null_p = own group's share of the focal nodes in the graph
};

struct ReportRow {
    std::string group_pair;  // labelling scheme name
    std::string dataset;
    std::string network;
    std::int64_t n_cat1 = 0;
    std::int64_t n_cat2 = 0;
    std::optional<double> homophilic_pct;
    std::optional<double> heterophilic_pct;
    std::int64_t weight_sum = 0;  // pair-scope internal + external
    std::int64_t internal_weight = 0;
    std::int64_t external_weight = 0;
    std::optional<double> ei;
    double assortativity = 0.0;
    bool assortativity_degenerate = false;
    std::int64_t broader_nodes = 0;
    std::int64_t broader_weight = 0;  // broader-scope internal + external
    std::int64_t broader_internal_weight = 0;
    std::int64_t broader_external_weight = 0;
    std::optional<double> broader_ei;
};

struct TallyRow {
    std::string group_pair;
    std::string dataset;
    std::string network;
    GroupLabel source = GroupLabel::Category1;
    std::int64_t to_category1 = 0;
    std::int64_t to_category2 = 0;
    SignificanceResult significance;
};

struct HomophilyReport {
    std::vector<ReportRow> rows;
    std::vector<TallyRow> tallies;
};

struct SchemeNetworks {
    std::string scheme_name;
    // (network name, graph) in display order; node labels must already
    // follow this scheme.
    std::vector<std::pair<std::string, Graph>> networks;
};

// One row per (scheme, network) plus two tally rows each (one per focal
// group). Every cell is the corresponding single-operation result above.
HomophilyReport homophily_report(const std::string& dataset,
                                 const std::vector<SchemeNetworks>& schemes,
                                 NullMode null_mode = NullMode::Even);

// Cross-checks every row against itself (E-I recomputable from its weight
// fields to 1e-9, percentage pairs summing to 100 +- 0.1) and throws
// InvariantError on any mismatch.
void verify_report(const HomophilyReport& report);

} // namespace polarnet
