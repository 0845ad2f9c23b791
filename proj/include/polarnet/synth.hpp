#pragma once

#include "polarnet/corpus.hpp"
#include "polarnet/graph.hpp"

#include <cstdint>
#include <string>

namespace polarnet {

struct PlantedPartitionSpec {
    std::int64_t n1 = 100;
    std::int64_t n2 = 100;
    double p_in = 0.1;   // edge probability for same-block ordered pairs
    double p_out = 0.1;  // edge probability for cross-block ordered pairs
    std::int64_t weight_max = 1;  // weights drawn uniformly from [1, weight_max]
    std::uint64_t seed = 0;
};

// Directed two-block random graph with Category1/Category2 labels by block.
// Generation is a fixed walk over ordered node pairs, so a spec always
// produces the same graph on every platform.
Graph generate_planted_graph(const PlantedPartitionSpec& spec);

// Closed-form expectation of the pair-scope E-I index under the spec:
// internal mass scales with p_in * (n1(n1-1) + n2(n2-1)), external with
// p_out * 2*n1*n2 (the uniform weight factor cancels). Throws when both
// expected masses are zero.
double expected_ei(const PlantedPartitionSpec& spec);

struct SyntheticCorpusSpec {
    std::int64_t accounts_1 = 50;
    std::int64_t accounts_2 = 50;
    std::int64_t accounts_both = 0;
    std::int64_t tweets_per_account = 4;
    std::string marker_1 = "marker1";
    std::string marker_2 = "marker2";
    double marker_rate_1 = 1.0;  // P(a group-1 tweet carries marker_1)
    double marker_rate_2 = 1.0;  // P(a group-2 tweet carries marker_2)
    std::int64_t pool_size = 20;      // hashtag pool size per group
    double pool_overlap = 0.0;        // fraction of each pool shared between groups
    std::int64_t tags_per_tweet = 2;  // pool draws per tweet (besides markers)
    double homophily_q = 1.0;  // P(an interaction targets the author's own group)
    std::uint64_t seed = 0;
};

struct SyntheticCorpus {
    std::string corpus_jsonl;    // standard ingestible tweet lines
    std::string manifest_json;   // spec echo + planted labels
    LabelMap planted_labels;
};

// Corpus whose marker usage realizes the planted Category1/Category2/Both
// labels and whose interactions hit the author's own group with probability
// homophily_q. Deterministic for a given spec.
SyntheticCorpus generate_synthetic_corpus(const SyntheticCorpusSpec& spec);

// Writes corpus_jsonl and manifest_json to the two paths (atomically).
void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::string& corpus_path,
                            const std::string& manifest_path);

} // namespace polarnet
