#include "polarnet/synth.hpp"
#include "polarnet/errors.hpp"
#include "polarnet/rng.hpp"
#include "polarnet/textio.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace polarnet {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw InputError(std::string(name) + " must lie in [0,1]");
}

std::string numbered_id(const char* prefix, std::int64_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%04lld", prefix, static_cast<long long>(i));
    return buf;
}

} // namespace

Graph generate_planted_graph(const PlantedPartitionSpec& spec) {
    if (spec.n1 < 0 || spec.n2 < 0) throw InputError("block sizes must be >= 0");
    check_probability(spec.p_in, "p_in");
    check_probability(spec.p_out, "p_out");
    if (spec.weight_max < 1) throw InputError("weight_max must be >= 1");

    std::vector<AccountId> ids;
    ids.reserve(static_cast<std::size_t>(spec.n1 + spec.n2));
    Graph g;
    g.directed = true;
    for (std::int64_t i = 0; i < spec.n1; ++i) {
        ids.push_back(numbered_id("c1_", i));
        g.ensure_node(ids.back(), GroupLabel::Category1);
    }
    for (std::int64_t i = 0; i < spec.n2; ++i) {
        ids.push_back(numbered_id("c2_", i));
        g.ensure_node(ids.back(), GroupLabel::Category2);
    }

    Xoshiro256pp rng(spec.seed);
    const auto n = static_cast<std::int64_t>(ids.size());
    for (std::int64_t u = 0; u < n; ++u) {
        const bool u_in_1 = u < spec.n1;
        for (std::int64_t v = 0; v < n; ++v) {
            if (u == v) continue;
            const bool same_block = u_in_1 == (v < spec.n1);
            const double p = same_block ? spec.p_in : spec.p_out;
            if (rng.uniform01() < p)
                g.add_edge(ids[static_cast<std::size_t>(u)], ids[static_cast<std::size_t>(v)],
                           rng.uniform_int(1, spec.weight_max));
        }
    }
    return g;
}

double expected_ei(const PlantedPartitionSpec& spec) {
    if (spec.n1 < 0 || spec.n2 < 0) throw InputError("block sizes must be >= 0");
    check_probability(spec.p_in, "p_in");
    check_probability(spec.p_out, "p_out");
    const double internal_pairs = static_cast<double>(spec.n1) * static_cast<double>(spec.n1 - 1) +
                                  static_cast<double>(spec.n2) * static_cast<double>(spec.n2 - 1);
    const double external_pairs = 2.0 * static_cast<double>(spec.n1) * static_cast<double>(spec.n2);
    const double internal_mass = spec.p_in * internal_pairs;
    const double external_mass = spec.p_out * external_pairs;
    if (internal_mass + external_mass <= 0.0)
        throw InputError("expected edge mass is zero; no E-I to predict");
    return (external_mass - internal_mass) / (external_mass + internal_mass);
}

namespace {

struct PlannedAccount {
    AccountId id;
    GroupLabel group;
};

void append_json_tweet(std::string& out, const std::string& tweet_id,
                       const AccountId& author, std::int64_t timestamp,
                       const std::map<std::string, std::int64_t>& tags,
                       InteractionKind kind, const AccountId& target) {
    out += "{\"id\":\"" + json_escape(tweet_id) + "\",\"author_id\":\"" +
           json_escape(author) + "\",\"created_at\":\"" + format_rfc3339(timestamp) + "\"";
    if (!tags.empty()) {
        out += ",\"hashtags\":[";
        bool first = true;
        for (const auto& [tag, count] : tags) {
            for (std::int64_t i = 0; i < count; ++i) {
                if (!first) out += ',';
                first = false;
                out += '"' + json_escape(tag) + '"';
            }
        }
        out += ']';
    }
    if (!target.empty()) {
        switch (kind) {
            case InteractionKind::Retweet: out += ",\"retweeted_author\":\"" + json_escape(target) + "\""; break;
            case InteractionKind::Mention: out += ",\"mentioned_authors\":[\"" + json_escape(target) + "\"]"; break;
            case InteractionKind::Reply: out += ",\"replied_author\":\"" + json_escape(target) + "\""; break;
            case InteractionKind::Quote: out += ",\"quoted_author\":\"" + json_escape(target) + "\""; break;
            case InteractionKind::Follow: break;
        }
    }
    out += "}\n";
}

} // namespace

SyntheticCorpus generate_synthetic_corpus(const SyntheticCorpusSpec& spec) {
    if (spec.accounts_1 < 0 || spec.accounts_2 < 0 || spec.accounts_both < 0)
        throw InputError("account counts must be >= 0");
    if (spec.tweets_per_account < 0) throw InputError("tweets_per_account must be >= 0");
    if (spec.pool_size < 0) throw InputError("pool_size must be >= 0");
    if (spec.tags_per_tweet < 0) throw InputError("tags_per_tweet must be >= 0");
    check_probability(spec.marker_rate_1, "marker_rate_1");
    check_probability(spec.marker_rate_2, "marker_rate_2");
    check_probability(spec.pool_overlap, "pool_overlap");
    check_probability(spec.homophily_q, "homophily_q");
    const std::string marker_1 = normalize_hashtag(spec.marker_1);
    const std::string marker_2 = normalize_hashtag(spec.marker_2);
    if (marker_1.empty() || marker_2.empty() || marker_1 == marker_2)
        throw InputError("markers must be non-empty and distinct");

    std::vector<PlannedAccount> accounts;
    std::vector<AccountId> group_1, group_2, everyone;
    for (std::int64_t i = 0; i < spec.accounts_1; ++i) {
        accounts.push_back({numbered_id("c1_", i), GroupLabel::Category1});
        group_1.push_back(accounts.back().id);
    }
    for (std::int64_t i = 0; i < spec.accounts_2; ++i) {
        accounts.push_back({numbered_id("c2_", i), GroupLabel::Category2});
        group_2.push_back(accounts.back().id);
    }
    for (std::int64_t i = 0; i < spec.accounts_both; ++i)
        accounts.push_back({numbered_id("both_", i), GroupLabel::Both});
    for (const auto& a : accounts) everyone.push_back(a.id);

    // Hashtag pools: a shared slice (the overlap) plus group-own tags;
    // Both-labelled accounts draw from the union.
    const auto shared_count =
        static_cast<std::int64_t>(spec.pool_overlap * static_cast<double>(spec.pool_size) + 0.5);
    std::vector<std::string> pool_1, pool_2, pool_union;
    for (std::int64_t i = 0; i < shared_count; ++i) {
        pool_1.push_back(numbered_id("tag_shared_", i));
        pool_2.push_back(pool_1.back());
        pool_union.push_back(pool_1.back());
    }
    for (std::int64_t i = shared_count; i < spec.pool_size; ++i) {
        pool_1.push_back(numbered_id("tag_g1_", i));
        pool_union.push_back(pool_1.back());
    }
    for (std::int64_t i = shared_count; i < spec.pool_size; ++i) {
        pool_2.push_back(numbered_id("tag_g2_", i));
        pool_union.push_back(pool_2.back());
    }

    Xoshiro256pp rng(spec.seed);
    auto pick = [&rng](const std::vector<AccountId>& from, const AccountId& self) -> AccountId {
        // Uniform over `from` minus self, by index remapping.
        std::size_t limit = from.size();
        std::size_t self_at = limit;
        for (std::size_t i = 0; i < from.size(); ++i)
            if (from[i] == self) { self_at = i; --limit; break; }
        if (limit == 0) return {};
        std::size_t idx = static_cast<std::size_t>(rng.uniform_below(limit));
        if (self_at != from.size() && idx >= self_at) ++idx;
        return from[idx];
    };

    SyntheticCorpus out;
    constexpr std::int64_t base_time = 1685577600;  // 2023-06-01T00:00:00Z
    std::int64_t tweet_index = 0;
    for (const auto& account : accounts) {
        for (std::int64_t t = 0; t < spec.tweets_per_account; ++t, ++tweet_index) {
            std::map<std::string, std::int64_t> tags;
            if (account.group == GroupLabel::Category1 || account.group == GroupLabel::Both)
                if (rng.uniform01() < spec.marker_rate_1) ++tags[marker_1];
            if (account.group == GroupLabel::Category2 || account.group == GroupLabel::Both)
                if (rng.uniform01() < spec.marker_rate_2) ++tags[marker_2];

            const std::vector<std::string>& pool = account.group == GroupLabel::Category1 ? pool_1
                                                   : account.group == GroupLabel::Category2
                                                       ? pool_2
                                                       : pool_union;
            if (!pool.empty())
                for (std::int64_t d = 0; d < spec.tags_per_tweet; ++d)
                    ++tags[pool[static_cast<std::size_t>(rng.uniform_below(pool.size()))]];

            AccountId target;
            if (account.group == GroupLabel::Both) {
                target = pick(everyone, account.id);
            } else {
                const bool own = rng.uniform01() < spec.homophily_q;
                const std::vector<AccountId>& own_side =
                    account.group == GroupLabel::Category1 ? group_1 : group_2;
                const std::vector<AccountId>& other_side =
                    account.group == GroupLabel::Category1 ? group_2 : group_1;
                target = pick(own ? own_side : other_side, account.id);
                if (target.empty()) target = pick(own ? other_side : own_side, account.id);
            }
            static constexpr InteractionKind rotation[] = {
                InteractionKind::Retweet, InteractionKind::Mention,
                InteractionKind::Reply, InteractionKind::Quote};
            const InteractionKind kind = rotation[tweet_index % 4];

            append_json_tweet(out.corpus_jsonl, numbered_id("t", tweet_index), account.id,
                              base_time + 60 * tweet_index, tags, kind, target);
        }
        out.planted_labels[account.id] = account.group;
    }

    std::ostringstream manifest;
    manifest << "{\n  \"spec\": {\n";
    manifest << "    \"accounts_1\": " << spec.accounts_1 << ",\n";
    manifest << "    \"accounts_2\": " << spec.accounts_2 << ",\n";
    manifest << "    \"accounts_both\": " << spec.accounts_both << ",\n";
    manifest << "    \"tweets_per_account\": " << spec.tweets_per_account << ",\n";
    manifest << "    \"marker_1\": \"" << json_escape(marker_1) << "\",\n";
    manifest << "    \"marker_2\": \"" << json_escape(marker_2) << "\",\n";
    manifest << "    \"marker_rate_1\": " << format_fixed(spec.marker_rate_1, 6) << ",\n";
    manifest << "    \"marker_rate_2\": " << format_fixed(spec.marker_rate_2, 6) << ",\n";
    manifest << "    \"pool_size\": " << spec.pool_size << ",\n";
    manifest << "    \"pool_overlap\": " << format_fixed(spec.pool_overlap, 6) << ",\n";
    manifest << "    \"tags_per_tweet\": " << spec.tags_per_tweet << ",\n";
    manifest << "    \"homophily_q\": " << format_fixed(spec.homophily_q, 6) << ",\n";
    manifest << "    \"seed\": " << spec.seed << "\n";
    manifest << "  },\n  \"planted_labels\": {\n";
    bool first = true;
    for (const auto& [id, label] : out.planted_labels) {
        if (!first) manifest << ",\n";
        first = false;
        manifest << "    \"" << json_escape(id) << "\": \"" << label_name(label) << "\"";
    }
    manifest << "\n  }\n}\n";
    out.manifest_json = manifest.str();
    return out;
}

void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::string& corpus_path,
                            const std::string& manifest_path) {
    atomic_write_file(corpus_path, corpus.corpus_jsonl);
    atomic_write_file(manifest_path, corpus.manifest_json);
}

} // namespace polarnet
