#pragma once

#include "polarnet/corpus.hpp"
#include "polarnet/graph.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace polarnet {

// Directed graph with one edge per (source, target) pair that interacted via
// `kind`; the weight counts how often. Self-interactions are dropped and no
// isolated nodes are added. kind must not be Follow (follower edges come
// from a file, not from tweets).
Graph build_interaction_network(const LabeledCorpus& corpus, InteractionKind kind);

struct FollowerEdges {
    std::vector<std::pair<AccountId, AccountId>> edges;
    std::vector<RejectedLine> rejects;
};

// Header-less CSV follower_id,followed_id. Malformed lines are collected as
// rejects; more than 50% rejected throws InputError.
FollowerEdges load_follower_edges_text(const std::string& text, const std::string& origin);

// Directed follow graph, every edge weight 1 (duplicate rows collapse).
// Self-follows are dropped. With restrict_to_labelled, edges survive only
// when both endpoints carry a label other than Other.
Graph follower_graph_from_edges(const std::vector<std::pair<AccountId, AccountId>>& edges,
                                const LabelMap& labels, bool restrict_to_labelled);

// Reads the edge file and builds the graph; writes a rejects sidecar next to
// the input exactly like ingest_tweets.
Graph build_follower_network(const std::string& path, const LabelMap& labels,
                             bool restrict_to_labelled);

struct HashtagFrequencyTable {
    std::map<std::string, std::int64_t> counts;
    // Tags by descending count, ties broken by tag text.
    std::vector<std::string> ranked() const;
};

HashtagFrequencyTable hashtag_frequencies(const std::vector<TweetRecord>& tweets);

// Everything except the k most frequent tags.
std::set<std::string> remove_top_k(const HashtagFrequencyTable& table, int k = 10);

struct PartisanHashtagSet {
    std::set<std::string> tags;
    std::string provenance;  // "manual" or "top_unique_per_group(n)"
};

// Normalizes and dedupes an explicit tag list.
PartisanHashtagSet manual_partisan_set(const std::vector<std::string>& raw_tags);

// For each focal group (Category1, Category2 — Both and Other excluded),
// ranks the tags its members used that the other group never used, and takes
// the top n per group (fewer when a group has fewer unique tags).
PartisanHashtagSet top_unique_per_group(const LabeledCorpus& corpus, int n = 10);

// Tweets containing at least one tag from the set, keeping all their
// hashtags. Throws InputError on an empty set: filtering by nothing is
// always a configuration mistake.
LabeledCorpus filter_tweets_by_hashtags(const LabeledCorpus& corpus,
                                        const PartisanHashtagSet& tags);

enum class CoMentionWeighting { Product, Min };

// Undirected account graph: two accounts are linked when they share at least
// one admitted tag, weighted by the per-tag sum of count products (or of
// count minima). A tag used by enough accounts to induce more than
// pair_budget account pairs aborts the build (InputError): cull harder.
Graph build_comention_network(const LabeledCorpus& corpus,
                              const std::set<std::string>& admitted,
                              CoMentionWeighting weighting = CoMentionWeighting::Product,
                              std::int64_t pair_budget = 100000000);

struct CoMentionConfig {
    int top_k_cull = 10;
    CoMentionWeighting weighting = CoMentionWeighting::Product;
    std::int64_t pair_budget = 100000000;
    std::vector<std::string> manual_tags;  // non-empty: use instead of top-unique selection
    int top_n_per_group = 10;
    bool cull_before_filter = false;  // rank the culled top-k on the full corpus
};

struct CoMentionBuild {
    PartisanHashtagSet partisan;
    HashtagFrequencyTable frequencies;  // over the culling universe
    std::vector<std::string> culled;    // the removed tags, rank order
    Graph graph;
};

// Full pipeline: select partisan tags, keep the tweets that use them, cull
// the top-k most frequent tags (ranked on the kept tweets by default, on the
// full corpus with cull_before_filter), then build the co-mention graph from
// the kept tweets over the surviving tags.
CoMentionBuild run_comention_pipeline(const LabeledCorpus& corpus, const CoMentionConfig& cfg);

// Induced subgraph on the largest weakly-connected node set; ties go to the
// component containing the lexicographically smallest node id.
Graph largest_component(const Graph& g);

} // namespace polarnet
