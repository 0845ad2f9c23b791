#include "polarnet/corpus.hpp"
#include "polarnet/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <thread>
#include <variant>

namespace polarnet {

const char* kind_name(InteractionKind k) {
    switch (k) {
        case InteractionKind::Retweet: return "retweet";
        case InteractionKind::Mention: return "mention";
        case InteractionKind::Reply: return "reply";
        case InteractionKind::Quote: return "quote";
        case InteractionKind::Follow: return "follow";
    }
    return "?";
}

std::optional<InteractionKind> kind_from_name(const std::string& name) {
    if (name == "retweet") return InteractionKind::Retweet;
    if (name == "mention") return InteractionKind::Mention;
    if (name == "reply") return InteractionKind::Reply;
    if (name == "quote") return InteractionKind::Quote;
    if (name == "follow") return InteractionKind::Follow;
    return std::nullopt;
}

const char* label_name(GroupLabel l) {
    switch (l) {
        case GroupLabel::Category1: return "category1";
        case GroupLabel::Category2: return "category2";
        case GroupLabel::Both: return "both";
        case GroupLabel::Other: return "other";
    }
    return "?";
}

std::optional<GroupLabel> label_from_name(const std::string& name) {
    if (name == "category1") return GroupLabel::Category1;
    if (name == "category2") return GroupLabel::Category2;
    if (name == "both") return GroupLabel::Both;
    if (name == "other") return GroupLabel::Other;
    return std::nullopt;
}

GroupLabel label_of(const LabelMap& labels, const AccountId& id) {
    auto it = labels.find(id);
    return it == labels.end() ? GroupLabel::Other : it->second;
}

namespace {

// Reads one code point; advances i past it. On malformed UTF-8 advances a
// single byte and returns nullopt so the caller can copy the byte through.
std::optional<char32_t> decode_utf8(const std::string& s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int extra;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1Fu;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0Fu;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07u;
    } else {
        ++i;
        return std::nullopt;
    }
    if (i + static_cast<std::size_t>(extra) >= s.size()) {
        ++i;
        return std::nullopt;
    }
    for (int k = 1; k <= extra; ++k) {
        const auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return std::nullopt;
        }
        cp = (cp << 6) | (b & 0x3Fu);
    }
    static constexpr char32_t min_for_len[] = {0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++i;
        return std::nullopt;
    }
    i += 1 + static_cast<std::size_t>(extra);
    return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Unicode simple lowercase over the ranges hashtags actually use: ASCII,
// Latin-1, Latin Extended-A, Greek, Cyrillic. Other scripts pass through.
char32_t simple_lower(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 0x20;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    if (c == 0x0130) return U'i';
    if (c >= 0x0100 && c <= 0x0137 && c % 2 == 0) return c + 1;
    if (c >= 0x0139 && c <= 0x0147 && c % 2 == 1) return c + 1;
    if (c >= 0x014A && c <= 0x0176 && c % 2 == 0) return c + 1;
    if (c == 0x0178) return 0xFF;
    if (c >= 0x0179 && c <= 0x017D && c % 2 == 1) return c + 1;
    if (c == 0x0386) return 0x3AC;
    if (c >= 0x0388 && c <= 0x038A) return c + 0x25;
    if (c == 0x038C) return 0x3CC;
    if (c == 0x038E || c == 0x038F) return c + 0x3F;
    if (c >= 0x0391 && c <= 0x03AB && c != 0x03A2) return c + 0x20;
    if (c >= 0x0400 && c <= 0x040F) return c + 0x50;
    if (c >= 0x0410 && c <= 0x042F) return c + 0x20;
    return c;
}

} // namespace

std::string normalize_hashtag(const std::string& raw) {
    std::size_t i = 0;
    while (i < raw.size() && raw[i] == '#') ++i;
    std::string out;
    out.reserve(raw.size() - i);
    while (i < raw.size()) {
        const std::size_t at = i;
        if (auto cp = decode_utf8(raw, i)) {
            encode_utf8(simple_lower(*cp), out);
        } else {
            out.push_back(raw[at]);
        }
    }
    return out;
}

namespace {

bool leap(std::int64_t y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(std::int64_t y, int m) {
    static constexpr int len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap(y) ? 29 : len[m - 1];
}

std::int64_t days_from_civil(std::int64_t y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<std::int64_t>(y - era * 400);
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<std::int64_t>(z - era * 146097);
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += m <= 2;
}

} // namespace

std::optional<std::int64_t> parse_rfc3339(const std::string& text) {
    auto num = [&](std::size_t at, int width) -> std::optional<int> {
        int v = 0;
        for (int k = 0; k < width; ++k) {
            const char c = text[at + static_cast<std::size_t>(k)];
            if (c < '0' || c > '9') return std::nullopt;
            v = v * 10 + (c - '0');
        }
        return v;
    };
    if (text.size() < 20) return std::nullopt;
    const auto year = num(0, 4);
    const auto month = num(5, 2);
    const auto day = num(8, 2);
    const auto hour = num(11, 2);
    const auto minute = num(14, 2);
    const auto sec = num(17, 2);
    if (!year || !month || !day || !hour || !minute || !sec) return std::nullopt;
    if (text[4] != '-' || text[7] != '-' || text[13] != ':' || text[16] != ':')
        return std::nullopt;
    if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') return std::nullopt;
    if (*month < 1 || *month > 12 || *day < 1 || *day > days_in_month(*year, *month))
        return std::nullopt;
    if (*hour > 23 || *minute > 59 || *sec > 60) return std::nullopt;

    std::size_t i = 19;
    if (i < text.size() && text[i] == '.') {
        ++i;
        const std::size_t frac_start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == frac_start) return std::nullopt;
    }
    if (i >= text.size()) return std::nullopt;
    std::int64_t offset = 0;
    const char c = text[i];
    if (c == 'Z' || c == 'z') {
        ++i;
    } else if (c == '+' || c == '-') {
        if (i + 6 > text.size()) return std::nullopt;
        const auto oh = num(i + 1, 2);
        const auto om = num(i + 4, 2);
        if (!oh || !om || text[i + 3] != ':' || *oh > 23 || *om > 59) return std::nullopt;
        offset = (*oh * 3600LL + *om * 60LL) * (c == '+' ? 1 : -1);
        i += 6;
    } else {
        return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;

    return days_from_civil(*year, *month, *day) * 86400LL + *hour * 3600LL +
           *minute * 60LL + *sec - offset;
}

std::string format_rfc3339(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    int m, d;
    civil_from_days(days, y, m, d);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04lld-%02d-%02dT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>(rem / 60 % 60), static_cast<long long>(rem % 60));
    return buf;
}

namespace {

using ParseOutcome = std::variant<TweetRecord, std::string>;

ParseOutcome parse_tweet_line(std::string_view line) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return std::string("invalid JSON");
    if (!j.is_object()) return std::string("not a JSON object");

    TweetRecord rec;
    auto required_string = [&](const char* field, std::string& into) -> std::optional<std::string> {
        const auto it = j.find(field);
        if (it == j.end() || it->is_null()) return std::string("missing ") + field;
        if (!it->is_string()) return std::string(field) + " is not a string";
        into = it->get<std::string>();
        if (into.empty()) return std::string("empty ") + field;
        return std::nullopt;
    };
    if (auto err = required_string("id", rec.tweet_id)) return *err;
    if (auto err = required_string("author_id", rec.author)) return *err;
    std::string created_at;
    if (auto err = required_string("created_at", created_at)) return *err;
    const auto ts = parse_rfc3339(created_at);
    if (!ts) return std::string("unparseable created_at");
    rec.timestamp = *ts;

    if (const auto it = j.find("hashtags"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) return std::string("hashtags is not an array");
        for (const auto& tag : *it) {
            if (!tag.is_string()) return std::string("hashtags contains a non-string");
            std::string norm = normalize_hashtag(tag.get<std::string>());
            if (!norm.empty()) ++rec.hashtags[norm];
        }
    }

    auto single_target = [&](const char* field, InteractionKind kind) -> std::optional<std::string> {
        const auto it = j.find(field);
        if (it == j.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) return std::string(field) + " is not a string";
        std::string who = it->get<std::string>();
        if (!who.empty()) rec.interactions.emplace_back(kind, std::move(who));
        return std::nullopt;
    };
    if (auto err = single_target("retweeted_author", InteractionKind::Retweet)) return *err;
    if (auto err = single_target("replied_author", InteractionKind::Reply)) return *err;
    if (auto err = single_target("quoted_author", InteractionKind::Quote)) return *err;

    if (const auto it = j.find("mentioned_authors"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) return std::string("mentioned_authors is not an array");
        for (const auto& who : *it) {
            if (!who.is_string()) return std::string("mentioned_authors contains a non-string");
            std::string id = who.get<std::string>();
            if (!id.empty()) rec.interactions.emplace_back(InteractionKind::Mention, std::move(id));
        }
    }
    return rec;
}

struct NumberedLine {
    std::size_t number = 0;  // 1-based physical line
    std::string_view body;
};

IngestResult parse_jsonl(const std::string& text, unsigned threads) {
    std::vector<NumberedLine> lines;
    {
        std::size_t pos = 0, number = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            if (eol == std::string::npos) eol = text.size();
            ++number;
            std::string_view body(text.data() + pos, eol - pos);
            if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
            if (!body.empty()) lines.push_back({number, body});
            pos = eol + 1;
        }
    }

    std::vector<ParseOutcome> outcomes(lines.size(), std::string());
    auto parse_span = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) outcomes[k] = parse_tweet_line(lines[k].body);
    };
    if (threads <= 1 || lines.size() < 2 * threads) {
        parse_span(0, lines.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (lines.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(lines.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(parse_span, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    IngestResult result;
    std::set<std::string> seen_ids;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        if (auto* rec = std::get_if<TweetRecord>(&outcomes[k])) {
            if (!seen_ids.insert(rec->tweet_id).second) {
                result.rejects.push_back({lines[k].number, "duplicate tweet id"});
            } else {
                result.records.push_back(std::move(*rec));
            }
        } else {
            result.rejects.push_back({lines[k].number, std::get<std::string>(outcomes[k])});
        }
    }

    return result;
}

} // namespace

void write_rejects_sidecar(const std::string& input_path,
                           const std::vector<RejectedLine>& rejects) {
    const std::string sidecar = input_path + ".rejects.tsv";
    if (rejects.empty()) {
        std::error_code ignored;
        std::filesystem::remove(sidecar, ignored);  // drop any stale sidecar
        return;
    }
    std::ofstream out(sidecar, std::ios::binary);
    for (const auto& r : rejects) out << r.line_number << '\t' << r.reason << '\n';
    if (!out) throw InputError("cannot write rejects sidecar: " + sidecar);
}

void enforce_reject_ratio(std::size_t rejected, std::size_t total,
                          const std::string& origin, const char* expected) {
    if (total > 0 && rejected * 2 > total) {
        std::ostringstream msg;
        msg << origin << ": " << rejected << " of " << total
            << " lines rejected; input does not look like " << expected;
        throw InputError(msg.str());
    }
}

IngestResult ingest_tweets_text(const std::string& text, const std::string& format,
                                unsigned threads) {
    if (format != "jsonl") throw InputError("unknown corpus format: " + format);
    IngestResult result = parse_jsonl(text, threads);
    enforce_reject_ratio(result.rejects.size(), result.records.size() + result.rejects.size(),
                         "<memory>", "tweet jsonl");
    return result;
}

IngestResult ingest_tweets(const std::string& path, const std::string& format,
                           unsigned threads) {
    if (format != "jsonl") throw InputError("unknown corpus format: " + format);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open corpus file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();

    IngestResult result = parse_jsonl(buf.str(), threads);
    // The sidecar goes out before the wrong-format bailout: its recorded
    // reasons are the best clue to what went wrong.
    write_rejects_sidecar(path, result.rejects);
    enforce_reject_ratio(result.rejects.size(), result.records.size() + result.rejects.size(),
                         path, "tweet jsonl");
    return result;
}

LabelMap label_by_marker_hashtags(const std::vector<TweetRecord>& tweets,
                                  const std::string& marker_1,
                                  const std::string& marker_2) {
    const std::string m1 = normalize_hashtag(marker_1);
    const std::string m2 = normalize_hashtag(marker_2);
    if (m1.empty() || m2.empty()) throw InputError("marker hashtags must be non-empty");
    if (m1 == m2) throw InputError("marker hashtags must differ: " + m1);

    std::map<AccountId, std::pair<bool, bool>> used;
    for (const auto& t : tweets) {
        auto& flags = used[t.author];
        if (t.hashtags.count(m1)) flags.first = true;
        if (t.hashtags.count(m2)) flags.second = true;
    }
    LabelMap labels;
    for (const auto& [who, flags] : used) {
        if (flags.first && flags.second)
            labels[who] = GroupLabel::Both;
        else if (flags.first)
            labels[who] = GroupLabel::Category1;
        else if (flags.second)
            labels[who] = GroupLabel::Category2;
    }
    return labels;
}

namespace {

std::string trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

LabelMap load_labels_text(const std::string& text, const std::string& origin) {
    LabelMap labels;
    std::size_t pos = 0, number = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        ++number;
        std::string_view body(text.data() + pos, eol - pos);
        pos = eol + 1;
        if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
        if (body.empty()) continue;

        const std::size_t comma = body.find(',');
        if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos)
            throw InputError(origin + ":" + std::to_string(number) +
                             ": expected exactly two fields (account_id,label)");
        const std::string account = trimmed(body.substr(0, comma));
        const std::string token = trimmed(body.substr(comma + 1));
        if (account.empty())
            throw InputError(origin + ":" + std::to_string(number) + ": empty account id");
        const auto label = label_from_name(token);
        if (!label)
            throw InputError(origin + ":" + std::to_string(number) + ": unknown label '" +
                             token + "'");
        const auto [it, inserted] = labels.emplace(account, *label);
        if (!inserted && it->second != *label)
            throw InputError(origin + ":" + std::to_string(number) +
                             ": conflicting labels for account " + account);
    }
    return labels;
}

LabelMap load_labels(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open label file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_labels_text(buf.str(), path);
}

PresenceReport group_presence(const LabeledCorpus& corpus,
                              const std::map<GroupLabel, std::int64_t>& baseline_sizes) {
    std::set<AccountId> present;
    for (const auto& t : corpus.tweets) {
        present.insert(t.author);
        for (const auto& [kind, who] : t.interactions) present.insert(who);
    }
    std::map<GroupLabel, std::int64_t> counts;
    for (const auto& who : present) ++counts[label_of(corpus.labels, who)];

    PresenceReport report;
    for (const auto& [group, baseline] : baseline_sizes) {
        PresenceRow row;
        row.group = group;
        row.present = counts.count(group) ? counts.at(group) : 0;
        row.baseline = baseline;
        if (baseline > 0) row.pct = 100.0 * static_cast<double>(row.present) / static_cast<double>(baseline);
        report.rows.push_back(row);
    }
    return report;
}

} // namespace polarnet
