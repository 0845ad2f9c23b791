#include "polarnet/networks.hpp"
#include "polarnet/errors.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <string_view>

namespace polarnet {

Graph build_interaction_network(const LabeledCorpus& corpus, InteractionKind kind) {
    if (kind == InteractionKind::Follow)
        throw InputError("follow networks are built from an edge file, not from tweets");
    Graph g;
    g.directed = true;
    g.kind = kind;
    for (const auto& t : corpus.tweets) {
        for (const auto& [k, target] : t.interactions) {
            if (k == kind && target != t.author) g.add_edge(t.author, target);
        }
    }
    g.apply_labels(corpus.labels);
    return g;
}

namespace {

std::string trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

FollowerEdges parse_follower_csv(const std::string& text) {
    FollowerEdges result;
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
        if (comma == std::string_view::npos ||
            body.find(',', comma + 1) != std::string_view::npos) {
            result.rejects.push_back({number, "expected exactly two fields (follower_id,followed_id)"});
            continue;
        }
        std::string follower = trimmed(body.substr(0, comma));
        std::string followed = trimmed(body.substr(comma + 1));
        if (follower.empty() || followed.empty()) {
            result.rejects.push_back({number, "empty account id"});
            continue;
        }
        result.edges.emplace_back(std::move(follower), std::move(followed));
    }
    return result;
}

} // namespace

FollowerEdges load_follower_edges_text(const std::string& text, const std::string& origin) {
    FollowerEdges result = parse_follower_csv(text);
    enforce_reject_ratio(result.rejects.size(), result.edges.size() + result.rejects.size(),
                         origin, "a follower edge csv");
    return result;
}

Graph follower_graph_from_edges(const std::vector<std::pair<AccountId, AccountId>>& edges,
                                const LabelMap& labels, bool restrict_to_labelled) {
    Graph g;
    g.directed = true;
    g.kind = InteractionKind::Follow;
    for (const auto& [follower, followed] : edges) {
        if (follower == followed) continue;
        if (restrict_to_labelled && (label_of(labels, follower) == GroupLabel::Other ||
                                     label_of(labels, followed) == GroupLabel::Other))
            continue;
        g.ensure_node(follower);
        g.ensure_node(followed);
        g.edges[g.edge_key(follower, followed)] = 1;  // duplicate rows collapse
    }
    g.apply_labels(labels);
    return g;
}

Graph build_follower_network(const std::string& path, const LabelMap& labels,
                             bool restrict_to_labelled) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open follower edge file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();

    const FollowerEdges loaded = parse_follower_csv(buf.str());
    write_rejects_sidecar(path, loaded.rejects);
    enforce_reject_ratio(loaded.rejects.size(), loaded.edges.size() + loaded.rejects.size(),
                         path, "a follower edge csv");
    return follower_graph_from_edges(loaded.edges, labels, restrict_to_labelled);
}

std::vector<std::string> HashtagFrequencyTable::ranked() const {
    std::vector<std::pair<std::string, std::int64_t>> rows(counts.begin(), counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> tags;
    tags.reserve(rows.size());
    for (auto& [tag, count] : rows) tags.push_back(std::move(tag));
    return tags;
}

HashtagFrequencyTable hashtag_frequencies(const std::vector<TweetRecord>& tweets) {
    HashtagFrequencyTable table;
    for (const auto& t : tweets)
        for (const auto& [tag, count] : t.hashtags) table.counts[tag] += count;
    return table;
}

std::set<std::string> remove_top_k(const HashtagFrequencyTable& table, int k) {
    if (k < 0) throw InputError("top_k_cull must be >= 0");
    std::vector<std::string> order = table.ranked();
    std::set<std::string> admitted;
    for (std::size_t i = static_cast<std::size_t>(k); i < order.size(); ++i)
        admitted.insert(std::move(order[i]));
    return admitted;
}

PartisanHashtagSet manual_partisan_set(const std::vector<std::string>& raw_tags) {
    if (raw_tags.empty()) throw InputError("manual partisan tag list is empty");
    PartisanHashtagSet set;
    set.provenance = "manual";
    for (const auto& raw : raw_tags) {
        std::string norm = normalize_hashtag(raw);
        if (norm.empty()) throw InputError("empty hashtag in partisan tag list: '" + raw + "'");
        set.tags.insert(std::move(norm));
    }
    return set;
}

PartisanHashtagSet top_unique_per_group(const LabeledCorpus& corpus, int n) {
    if (n < 1) throw InputError("top_n_per_group must be >= 1");
    std::map<std::string, std::int64_t> use_1, use_2;
    for (const auto& t : corpus.tweets) {
        const GroupLabel who = label_of(corpus.labels, t.author);
        if (who == GroupLabel::Category1)
            for (const auto& [tag, count] : t.hashtags) use_1[tag] += count;
        else if (who == GroupLabel::Category2)
            for (const auto& [tag, count] : t.hashtags) use_2[tag] += count;
    }

    auto top_unique = [n](const std::map<std::string, std::int64_t>& own,
                          const std::map<std::string, std::int64_t>& other) {
        std::vector<std::pair<std::string, std::int64_t>> unique;
        for (const auto& [tag, count] : own)
            if (!other.count(tag)) unique.emplace_back(tag, count);
        std::sort(unique.begin(), unique.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        if (unique.size() > static_cast<std::size_t>(n)) unique.resize(static_cast<std::size_t>(n));
        return unique;
    };

    PartisanHashtagSet set;
    set.provenance = "top_unique_per_group(" + std::to_string(n) + ")";
    for (auto& [tag, count] : top_unique(use_1, use_2)) set.tags.insert(std::move(tag));
    for (auto& [tag, count] : top_unique(use_2, use_1)) set.tags.insert(std::move(tag));
    return set;
}

LabeledCorpus filter_tweets_by_hashtags(const LabeledCorpus& corpus,
                                        const PartisanHashtagSet& tags) {
    if (tags.tags.empty())
        throw InputError("partisan hashtag set is empty (" + tags.provenance +
                         "); nothing to filter by");
    LabeledCorpus sub;
    sub.labels = corpus.labels;
    sub.scheme = corpus.scheme;
    for (const auto& t : corpus.tweets) {
        bool hit = false;
        for (const auto& [tag, count] : t.hashtags) {
            if (tags.tags.count(tag)) {
                hit = true;
                break;
            }
        }
        if (hit) sub.tweets.push_back(t);
    }
    return sub;
}

Graph build_comention_network(const LabeledCorpus& corpus,
                              const std::set<std::string>& admitted,
                              CoMentionWeighting weighting, std::int64_t pair_budget) {
    std::map<std::string, std::map<AccountId, std::int64_t>> usage;
    for (const auto& t : corpus.tweets)
        for (const auto& [tag, count] : t.hashtags)
            if (admitted.count(tag)) usage[tag][t.author] += count;

    for (const auto& [tag, users] : usage) {
        const auto c = static_cast<std::int64_t>(users.size());
        if (c > 1 && c * (c - 1) / 2 > pair_budget) {
            std::ostringstream msg;
            msg << "hashtag '" << tag << "' is shared by " << c << " accounts ("
                << c * (c - 1) / 2 << " pairs), over the pair budget of " << pair_budget
                << "; cull more frequent tags";
            throw InputError(msg.str());
        }
    }

    Graph g;
    g.directed = false;
    for (const auto& [tag, users] : usage) {
        for (auto i = users.begin(); i != users.end(); ++i) {
            for (auto j = std::next(i); j != users.end(); ++j) {
                const std::int64_t w = weighting == CoMentionWeighting::Product
                                           ? i->second * j->second
                                           : std::min(i->second, j->second);
                g.add_edge(i->first, j->first, w);
            }
        }
    }
    g.apply_labels(corpus.labels);
    return g;
}

CoMentionBuild run_comention_pipeline(const LabeledCorpus& corpus, const CoMentionConfig& cfg) {
    CoMentionBuild out;
    out.partisan = cfg.manual_tags.empty() ? top_unique_per_group(corpus, cfg.top_n_per_group)
                                           : manual_partisan_set(cfg.manual_tags);
    const LabeledCorpus sub = filter_tweets_by_hashtags(corpus, out.partisan);
    out.frequencies = hashtag_frequencies(cfg.cull_before_filter ? corpus.tweets : sub.tweets);

    const std::set<std::string> admitted = remove_top_k(out.frequencies, cfg.top_k_cull);
    std::vector<std::string> order = out.frequencies.ranked();
    const auto k = std::min(order.size(), static_cast<std::size_t>(cfg.top_k_cull));
    out.culled.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));

    out.graph = build_comention_network(sub, admitted, cfg.weighting, cfg.pair_budget);
    return out;
}

Graph largest_component(const Graph& g) {
    Graph out;
    out.directed = g.directed;
    out.kind = g.kind;
    if (g.nodes.empty()) return out;

    std::map<AccountId, std::vector<AccountId>> adjacency;
    for (const auto& [key, w] : g.edges) {
        adjacency[key.first].push_back(key.second);
        adjacency[key.second].push_back(key.first);
    }

    std::map<AccountId, std::size_t> component;
    std::vector<std::size_t> sizes;
    for (const auto& [id, label] : g.nodes) {
        if (component.count(id)) continue;
        const std::size_t comp = sizes.size();
        sizes.push_back(0);
        std::deque<AccountId> frontier{id};
        component[id] = comp;
        while (!frontier.empty()) {
            const AccountId here = std::move(frontier.front());
            frontier.pop_front();
            ++sizes[comp];
            const auto adj = adjacency.find(here);
            if (adj == adjacency.end()) continue;
            for (const auto& next : adj->second) {
                if (component.emplace(next, comp).second) frontier.push_back(next);
            }
        }
    }

    const std::size_t best_size = *std::max_element(sizes.begin(), sizes.end());
    std::size_t winner = 0;
    for (const auto& [id, comp] : component) {
        // First node (in id order) of a maximal component: its component wins
        // the tie because it contains the smallest id among contenders.
        if (sizes[comp] == best_size) {
            winner = comp;
            break;
        }
    }

    for (const auto& [id, label] : g.nodes)
        if (component.at(id) == winner) out.nodes.emplace(id, label);
    for (const auto& [key, w] : g.edges)
        if (out.nodes.count(key.first)) out.edges.emplace(key, w);
    return out;
}

} // namespace polarnet
