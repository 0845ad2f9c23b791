#include "polarnet/config.hpp"
#include "polarnet/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

namespace polarnet {

namespace {

std::string trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

std::string unquoted(std::string value) {
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        return value.substr(1, value.size() - 2);
    return value;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        std::size_t comma = value.find(',', pos);
        if (comma == std::string::npos) comma = value.size();
        std::string item = trimmed(std::string_view(value).substr(pos, comma - pos));
        if (!item.empty()) items.push_back(std::move(item));
        pos = comma + 1;
    }
    return items;
}

struct KeyContext {
    const std::string& origin;
    std::size_t line;

    [[noreturn]] void fail(const std::string& message) const {
        throw InputError(origin + ":" + std::to_string(line) + ": " + message);
    }

    std::int64_t to_int(const std::string& key, const std::string& value) const {
        char* end = nullptr;
        const long long v = std::strtoll(value.c_str(), &end, 10);
        if (end == value.c_str() || *end != '\0') fail(key + " expects an integer, got '" + value + "'");
        return v;
    }

    double to_double(const std::string& key, const std::string& value) const {
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') fail(key + " expects a number, got '" + value + "'");
        return v;
    }

    bool to_bool(const std::string& key, const std::string& value) const {
        if (value == "true") return true;
        if (value == "false") return false;
        fail(key + " expects true or false, got '" + value + "'");
    }
};

bool valid_scheme_name(const std::string& name) {
    if (name.empty()) return false;
    for (const char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '-';
        if (!ok) return false;
    }
    return true;
}

void apply_top_level(RunConfig& cfg, const std::string& key, const std::string& value,
                     const KeyContext& at, bool& saw_fraction, bool& saw_threshold) {
    if (key == "dataset") cfg.dataset = value;
    else if (key == "corpus") cfg.corpus = value;
    else if (key == "format") {
        if (value != "jsonl") at.fail("format expects jsonl");
        cfg.format = value;
    }
    else if (key == "follower_edges") cfg.follower_edges = value;
    else if (key == "out") cfg.out = value;
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(at.to_int(key, value));
    else if (key == "threads") {
        const std::int64_t t = at.to_int(key, value);
        if (t < 1 || t > 1024) at.fail("threads must lie in [1,1024]");
        cfg.threads = static_cast<unsigned>(t);
    } else if (key == "kinds") {
        cfg.kinds.clear();
        for (const auto& name : split_list(value)) {
            const auto kind = kind_from_name(name);
            if (!kind) at.fail("unknown interaction kind '" + name + "'");
            if (*kind == InteractionKind::Follow)
                at.fail("the follow network comes from follower_edges, not kinds");
            cfg.kinds.push_back(*kind);
        }
    } else if (key == "hashtags") cfg.hashtags = at.to_bool(key, value);
    else if (key == "null") {
        if (value == "even") cfg.null_mode = NullMode::Even;
        else if (value == "size_weighted") cfg.null_mode = NullMode::SizeWeighted;
        else at.fail("null expects even or size_weighted");
    } else if (key == "top_k_cull") {
        const std::int64_t k = at.to_int(key, value);
        if (k < 0) at.fail("top_k_cull must be >= 0");
        cfg.comention.top_k_cull = static_cast<int>(k);
    } else if (key == "weighting") {
        if (value == "product") cfg.comention.weighting = CoMentionWeighting::Product;
        else if (value == "min") cfg.comention.weighting = CoMentionWeighting::Min;
        else at.fail("weighting expects product or min");
    } else if (key == "pair_budget") {
        const double budget = at.to_double(key, value);
        if (!(budget >= 1)) at.fail("pair_budget must be >= 1");
        cfg.comention.pair_budget = static_cast<std::int64_t>(budget);
    } else if (key == "top_n_per_group") {
        const std::int64_t n = at.to_int(key, value);
        if (n < 1) at.fail("top_n_per_group must be >= 1");
        cfg.comention.top_n_per_group = static_cast<int>(n);
    } else if (key == "partisan_tags") {
        cfg.comention.manual_tags = split_list(value);
        if (cfg.comention.manual_tags.empty()) at.fail("partisan_tags lists no tags");
    } else if (key == "cull_before_filter") {
        cfg.comention.cull_before_filter = at.to_bool(key, value);
    } else if (key == "backbone") {
        if (value == "raw") cfg.backbone = BackboneNormalization::Raw;
        else if (value == "jaccard") cfg.backbone = BackboneNormalization::Jaccard;
        else at.fail("backbone expects raw or jaccard");
    } else if (key == "sparsify_fraction") {
        SparsifyRule rule;
        rule.kind = SparsifyRule::Kind::TopFractionPerNode;
        rule.fraction = at.to_double(key, value);
        if (!(rule.fraction > 0.0 && rule.fraction <= 1.0))
            at.fail("sparsify_fraction must lie in (0,1]");
        cfg.sparsify_rule = rule;
        saw_fraction = true;
    } else if (key == "sparsify_threshold") {
        SparsifyRule rule;
        rule.kind = SparsifyRule::Kind::GlobalThreshold;
        rule.threshold = at.to_double(key, value);
        if (rule.threshold < 0) at.fail("sparsify_threshold must be >= 0");
        cfg.sparsify_rule = rule;
        saw_threshold = true;
    } else {
        at.fail("unknown key '" + key + "'");
    }
}

void apply_sim(SyntheticCorpusSpec& sim, const std::string& key, const std::string& value,
               const KeyContext& at) {
    const auto to_rate = [&](const std::string& k, const std::string& v) {
        const double rate = at.to_double(k, v);
        if (!(rate >= 0.0 && rate <= 1.0)) at.fail(k + " must lie in [0,1]");
        return rate;
    };
    if (key == "accounts_1") sim.accounts_1 = at.to_int(key, value);
    else if (key == "accounts_2") sim.accounts_2 = at.to_int(key, value);
    else if (key == "accounts_both") sim.accounts_both = at.to_int(key, value);
    else if (key == "tweets_per_account") sim.tweets_per_account = at.to_int(key, value);
    else if (key == "marker_1") sim.marker_1 = value;
    else if (key == "marker_2") sim.marker_2 = value;
    else if (key == "marker_rate_1") sim.marker_rate_1 = to_rate(key, value);
    else if (key == "marker_rate_2") sim.marker_rate_2 = to_rate(key, value);
    else if (key == "pool_size") sim.pool_size = at.to_int(key, value);
    else if (key == "pool_overlap") sim.pool_overlap = to_rate(key, value);
    else if (key == "tags_per_tweet") sim.tags_per_tweet = at.to_int(key, value);
    else if (key == "homophily_q") sim.homophily_q = to_rate(key, value);
    else if (key == "seed") sim.seed = static_cast<std::uint64_t>(at.to_int(key, value));
    else at.fail("unknown [sim] key '" + key + "'");
}

void apply_scheme(SchemeConfig& scheme, const std::string& key, const std::string& value,
                  const KeyContext& at) {
    if (key == "markers") {
        const auto items = split_list(value);
        if (items.size() != 2) at.fail("markers expects exactly two comma-separated hashtags");
        if (normalize_hashtag(items[0]) == normalize_hashtag(items[1]))
            at.fail("the two marker hashtags must differ");
        scheme.markers = {items[0], items[1]};
    } else if (key == "labels") {
        scheme.label_file = value;
    } else {
        at.fail("unknown scheme key '" + key + "'");
    }
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    enum class Section { Top, Scheme, Sim } section = Section::Top;
    SchemeConfig* scheme = nullptr;
    bool saw_fraction = false, saw_threshold = false;
    std::set<std::string> seen_keys;  // "<section>\n<key>" to reject duplicates

    std::size_t pos = 0, line_number = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        ++line_number;
        std::string line = trimmed(std::string_view(text).substr(pos, eol - pos));
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const KeyContext at{origin, line_number};

        if (line.front() == '[') {
            if (line.back() != ']') at.fail("unterminated section header");
            const std::string name = trimmed(std::string_view(line).substr(1, line.size() - 2));
            if (name == "sim") {
                section = Section::Sim;
                if (!cfg.sim) cfg.sim = SyntheticCorpusSpec{};
            } else if (name.rfind("scheme.", 0) == 0) {
                const std::string scheme_name = name.substr(7);
                if (!valid_scheme_name(scheme_name))
                    at.fail("scheme names may only use letters, digits, '_' and '-'");
                for (const auto& existing : cfg.schemes)
                    if (existing.name == scheme_name)
                        at.fail("duplicate scheme '" + scheme_name + "'");
                cfg.schemes.push_back({scheme_name, std::nullopt, std::nullopt});
                scheme = &cfg.schemes.back();
                section = Section::Scheme;
            } else {
                at.fail("unknown section [" + name + "]");
            }
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) at.fail("expected key = value");
        const std::string key = trimmed(std::string_view(line).substr(0, eq));
        const std::string value = unquoted(trimmed(std::string_view(line).substr(eq + 1)));
        if (key.empty()) at.fail("empty key");
        if (value.empty()) at.fail("empty value for '" + key + "'");

        const std::string section_tag = section == Section::Top ? ""
                                        : section == Section::Sim ? "sim"
                                                                  : "scheme." + scheme->name;
        if (!seen_keys.insert(section_tag + "\n" + key).second)
            at.fail("duplicate key '" + key + "'");

        switch (section) {
            case Section::Top: apply_top_level(cfg, key, value, at, saw_fraction, saw_threshold); break;
            case Section::Sim: apply_sim(*cfg.sim, key, value, at); break;
            case Section::Scheme: apply_scheme(*scheme, key, value, at); break;
        }
    }

    if (saw_fraction && saw_threshold)
        throw InputError(origin + ": sparsify_fraction and sparsify_threshold are exclusive");
    for (const auto& s : cfg.schemes) {
        if (s.markers.has_value() == s.label_file.has_value())
            throw InputError(origin + ": scheme '" + s.name +
                             "' needs exactly one of markers or labels");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    RunConfig cfg = parse_config_text(buf.str(), path);

    // Input paths resolve against the config file's directory, so a checked-in
    // config works from any working directory. Output paths stay cwd-relative.
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    const auto resolve = [&base](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative())
            p = (base / p).lexically_normal().string();
    };
    resolve(cfg.corpus);
    if (cfg.follower_edges) resolve(*cfg.follower_edges);
    for (auto& scheme : cfg.schemes)
        if (scheme.label_file) resolve(*scheme.label_file);
    return cfg;
}

} // namespace polarnet
