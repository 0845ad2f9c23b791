#pragma once

#include "polarnet/backbone.hpp"
#include "polarnet/corpus.hpp"
#include "polarnet/metrics.hpp"
#include "polarnet/networks.hpp"
#include "polarnet/synth.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polarnet {

struct SchemeConfig {
    std::string name;
    std::optional<std::pair<std::string, std::string>> markers;
    std::optional<std::string> label_file;
};

// One run description, loaded from a key = value file with [scheme.NAME] and
// [sim] sections. Full-line # comments only (hashtag values are common).
struct RunConfig {
    std::string dataset = "dataset";
    std::string corpus;
    std::string format = "jsonl";
    std::optional<std::string> follower_edges;
    std::vector<InteractionKind> kinds = {InteractionKind::Retweet, InteractionKind::Mention,
                                          InteractionKind::Reply, InteractionKind::Quote};
    bool hashtags = true;  // build the co-mention network
    NullMode null_mode = NullMode::Even;
    CoMentionConfig comention;
    BackboneNormalization backbone = BackboneNormalization::Raw;
    std::optional<SparsifyRule> sparsify_rule;
    std::string out = "out";
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::vector<SchemeConfig> schemes;  // file order
    std::optional<SyntheticCorpusSpec> sim;
};

RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

} // namespace polarnet
