#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polarnet {

using AccountId = std::string;

enum class InteractionKind { Retweet, Mention, Reply, Quote, Follow };

// Follow never appears inside a tweet record; it arrives only through the
// follower edge file.
const char* kind_name(InteractionKind k);
std::optional<InteractionKind> kind_from_name(const std::string& name);

enum class GroupLabel { Category1, Category2, Both, Other };

const char* label_name(GroupLabel l);
std::optional<GroupLabel> label_from_name(const std::string& name);

// Lowercases a hashtag (Unicode simple case mapping over the common alphabetic
// ranges, locale-independent) and strips any leading '#' characters.
// Idempotent: normalize(normalize(x)) == normalize(x).
std::string normalize_hashtag(const std::string& raw);

// Seconds since the Unix epoch, UTC. Returns nullopt on malformed input.
// Accepts RFC 3339 timestamps: 2021-01-01T00:00:00Z, fractional seconds,
// and numeric offsets.
std::optional<std::int64_t> parse_rfc3339(const std::string& text);
std::string format_rfc3339(std::int64_t epoch_seconds);

struct TweetRecord {
    std::string tweet_id;
    AccountId author;
    std::int64_t timestamp = 0;                    // epoch seconds, UTC
    std::map<std::string, std::int64_t> hashtags;  // normalized tag -> uses in this tweet
    std::vector<std::pair<InteractionKind, AccountId>> interactions;
};

using LabelMap = std::map<AccountId, GroupLabel>;

// Accounts absent from the map carry Other.
GroupLabel label_of(const LabelMap& labels, const AccountId& id);

struct LabellingScheme {
    std::string scheme_name;
    // Marker mode: groups derived from exclusive use of two hashtags.
    // External mode: groups read from a label file.
    std::optional<std::pair<std::string, std::string>> markers;
    std::optional<std::string> label_file;
};

struct LabeledCorpus {
    std::vector<TweetRecord> tweets;
    LabelMap labels;
    LabellingScheme scheme;
};

struct RejectedLine {
    std::size_t line_number = 0;  // 1-based
    std::string reason;
};

struct IngestResult {
    std::vector<TweetRecord> records;
    std::vector<RejectedLine> rejects;
};

// Parses a tweet archive. The only supported format id is "jsonl": one JSON
// object per line with fields id, author_id, created_at, hashtags,
// retweeted_author, replied_author, quoted_author, mentioned_authors.
// Unknown fields are ignored. Malformed lines land in the rejects list; more
// than 50% rejects is treated as a wrong-format signal and throws InputError.
// A rejects sidecar (<path>.rejects.tsv) is written whenever rejects exist.
// threads > 1 parses line chunks in parallel; results merge in input order.
IngestResult ingest_tweets(const std::string& path, const std::string& format,
                           unsigned threads = 1);

// Same parser over an in-memory buffer; no sidecar is written.
IngestResult ingest_tweets_text(const std::string& text, const std::string& format,
                                unsigned threads = 1);

// Shared helpers for line-oriented ingestion (tweet archives, follower
// edge files). The sidecar lands next to the input as <path>.rejects.tsv;
// an empty reject list removes any stale sidecar from an earlier run.
void write_rejects_sidecar(const std::string& input_path,
                           const std::vector<RejectedLine>& rejects);
// Throws InputError when more than half of all non-blank lines were
// rejected — the input is then assumed to be in the wrong format entirely.
void enforce_reject_ratio(std::size_t rejected, std::size_t total,
                          const std::string& origin, const char* expected);

// Marker rule over authors: only marker_1 -> Category1, only marker_2 ->
// Category2, both -> Both. Accounts that used neither marker are omitted
// (they read as Other through label_of). Interaction targets never acquire
// labels here.
LabelMap label_by_marker_hashtags(const std::vector<TweetRecord>& tweets,
                                  const std::string& marker_1,
                                  const std::string& marker_2);

// Header-less CSV account_id,label with label in
// {category1,category2,both,other}. Duplicate rows with conflicting labels or
// unknown label tokens throw InputError.
LabelMap load_labels(const std::string& path);
LabelMap load_labels_text(const std::string& text, const std::string& origin);

struct PresenceRow {
    GroupLabel group = GroupLabel::Other;
    std::int64_t present = 0;
    std::int64_t baseline = 0;
    std::optional<double> pct;  // share of baseline in percent; nullopt when baseline is 0
};

struct PresenceReport {
    std::vector<PresenceRow> rows;
};

// Counts, per group, the member accounts that appear in the corpus as an
// author or as any interaction endpoint, with the share of the given
// baseline size. Rows follow the baseline map's group order.
PresenceReport group_presence(const LabeledCorpus& corpus,
                              const std::map<GroupLabel, std::int64_t>& baseline_sizes);

} // namespace polarnet
