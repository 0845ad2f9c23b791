#include "polarnet/backbone.hpp"
#include "polarnet/config.hpp"
#include "polarnet/corpus.hpp"
#include "polarnet/errors.hpp"
#include "polarnet/export.hpp"
#include "polarnet/metrics.hpp"
#include "polarnet/networks.hpp"
#include "polarnet/report.hpp"
#include "polarnet/synth.hpp"
#include "polarnet/textio.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace polarnet;

struct GlobalFlags {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

RunConfig effective_config(const GlobalFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg = load_config(flags.config_path);
    if (flags.out) cfg.out = *flags.out;
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.threads) {
        if (*flags.threads < 1) throw InputError("--threads must be >= 1");
        cfg.threads = *flags.threads;
    }
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out);
    return (std::filesystem::path(cfg.out) / name).string();
}

LabeledCorpus load_labeled_corpus(const RunConfig& cfg, const SchemeConfig& scheme,
                                  const std::vector<TweetRecord>& tweets) {
    LabeledCorpus corpus;
    corpus.tweets = tweets;
    corpus.scheme = {scheme.name, scheme.markers, scheme.label_file};
    if (scheme.markers)
        corpus.labels =
            label_by_marker_hashtags(tweets, scheme.markers->first, scheme.markers->second);
    else
        corpus.labels = load_labels(*scheme.label_file);
    return corpus;
}

struct BuiltScheme {
    LabeledCorpus corpus;
    SchemeNetworks networks;
};

// Networks in display order: the configured interaction kinds, then the
// hashtag co-mention graph, then the follow graph.
std::vector<BuiltScheme> build_schemes(const RunConfig& cfg,
                                       const std::vector<TweetRecord>& tweets) {
    if (cfg.schemes.empty())
        throw InputError("no labelling scheme configured (add a [scheme.NAME] section)");
    std::vector<BuiltScheme> built;
    for (const auto& scheme : cfg.schemes) {
        BuiltScheme bs;
        bs.corpus = load_labeled_corpus(cfg, scheme, tweets);
        bs.networks.scheme_name = scheme.name;
        for (const auto kind : cfg.kinds)
            bs.networks.networks.emplace_back(kind_name(kind),
                                              build_interaction_network(bs.corpus, kind));
        if (cfg.hashtags)
            bs.networks.networks.emplace_back(
                "hashtags", run_comention_pipeline(bs.corpus, cfg.comention).graph);
        if (cfg.follower_edges)
            bs.networks.networks.emplace_back(
                "follow", build_follower_network(*cfg.follower_edges, bs.corpus.labels, true));
        built.push_back(std::move(bs));
    }
    return built;
}

std::vector<TweetRecord> ingest_corpus(const RunConfig& cfg) {
    if (cfg.corpus.empty()) throw InputError("no corpus configured (set corpus = <path>)");
    return ingest_tweets(cfg.corpus, cfg.format, cfg.threads).records;
}

std::map<GroupLabel, std::int64_t> label_sizes(const LabelMap& labels) {
    std::map<GroupLabel, std::int64_t> sizes;
    for (const auto& [id, label] : labels) ++sizes[label];
    return sizes;
}

int cmd_ingest(const RunConfig& cfg) {
    if (cfg.corpus.empty()) throw InputError("no corpus configured (set corpus = <path>)");
    const IngestResult result = ingest_tweets(cfg.corpus, cfg.format, cfg.threads);
    std::set<AccountId> accounts;
    for (const auto& tweet : result.records) {
        accounts.insert(tweet.author);
        for (const auto& [kind, target] : tweet.interactions) accounts.insert(target);
    }
    std::cout << "tweets=" << result.records.size() << " accounts=" << accounts.size()
              << " rejects=" << result.rejects.size() << '\n';
    if (!result.rejects.empty())
        std::cout << "rejects_file=" << cfg.corpus << ".rejects.tsv" << '\n';
    return 0;
}

int cmd_analyze(const RunConfig& cfg) {
    const std::vector<TweetRecord> tweets = ingest_corpus(cfg);
    const std::vector<BuiltScheme> built = build_schemes(cfg, tweets);

    std::vector<SchemeNetworks> schemes;
    schemes.reserve(built.size());
    for (const auto& bs : built) schemes.push_back(bs.networks);

    const HomophilyReport report = homophily_report(cfg.dataset, schemes, cfg.null_mode);
    verify_report(report);

    atomic_write_file(out_path(cfg, "report.json"), report_json(report));
    atomic_write_file(out_path(cfg, "tallies.csv"), tallies_csv(report));
    atomic_write_file(out_path(cfg, "ei_summary.tsv"), ei_summary_tsv(report));
    atomic_write_file(out_path(cfg, "hashtag_freq.tsv"),
                      hashtag_freq_tsv(hashtag_frequencies(tweets)));

    for (const auto& bs : built) {
        const auto& scheme = bs.networks.scheme_name;
        atomic_write_file(out_path(cfg, scheme + "_presence.tsv"),
                          presence_tsv(group_presence(bs.corpus, label_sizes(bs.corpus.labels))));
        for (const auto& [name, graph] : bs.networks.networks) {
            const BackboneWeights weights = backbone_strength(graph, cfg.backbone);
            write_edge_csv(out_path(cfg, scheme + "_" + name + ".edges.csv"), graph, name,
                           &weights);
            write_graphml(out_path(cfg, scheme + "_" + name + ".graphml"), graph, &weights);
        }
    }

    std::cout << "rows=" << report.rows.size() << " tallies=" << report.tallies.size()
              << " out=" << cfg.out << '\n';
    return 0;
}

int cmd_backbone(const RunConfig& cfg) {
    const std::vector<TweetRecord> tweets = ingest_corpus(cfg);
    for (const auto& bs : build_schemes(cfg, tweets)) {
        const auto& scheme = bs.networks.scheme_name;
        for (const auto& [name, graph] : bs.networks.networks) {
            const BackboneWeights weights = backbone_strength(graph, cfg.backbone);
            const Graph kept =
                cfg.sparsify_rule ? sparsify(graph, weights, *cfg.sparsify_rule) : graph;
            write_edge_csv(out_path(cfg, scheme + "_" + name + ".backbone.edges.csv"), kept,
                           name, &weights);
            write_graphml(out_path(cfg, scheme + "_" + name + ".backbone.graphml"), kept,
                          &weights);
            std::cout << "scheme=" << scheme << " network=" << name
                      << " nodes=" << kept.node_count() << " edges=" << graph.edge_count()
                      << " kept=" << kept.edge_count() << '\n';
        }
    }
    return 0;
}

int cmd_simulate(const RunConfig& cfg, const GlobalFlags& flags) {
    if (!cfg.sim) throw InputError("simulate needs a [sim] section in the config");
    SyntheticCorpusSpec spec = *cfg.sim;
    if (flags.seed) spec.seed = *flags.seed;
    const SyntheticCorpus corpus = generate_synthetic_corpus(spec);
    write_synthetic_corpus(corpus, out_path(cfg, "corpus.jsonl"), out_path(cfg, "manifest.json"));
    std::cout << "tweets="
              << (spec.accounts_1 + spec.accounts_2 + spec.accounts_both) *
                     spec.tweets_per_account
              << " accounts=" << corpus.planted_labels.size() << " out=" << cfg.out << '\n';
    return 0;
}

int cmd_export(const RunConfig& cfg) {
    const std::vector<TweetRecord> tweets = ingest_corpus(cfg);
    for (const auto& bs : build_schemes(cfg, tweets)) {
        const auto& scheme = bs.networks.scheme_name;
        for (const auto& [name, graph] : bs.networks.networks) {
            write_edge_csv(out_path(cfg, scheme + "_" + name + ".edges.csv"), graph, name);
            write_graphml(out_path(cfg, scheme + "_" + name + ".graphml"), graph);
            std::cout << "scheme=" << scheme << " network=" << name
                      << " nodes=" << graph.node_count() << " edges=" << graph.edge_count()
                      << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarised-group network analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    std::string out_flag;
    std::uint64_t seed_flag = 0;
    unsigned threads_flag = 1;
    app.add_option("--config", flags.config_path, "run configuration file");
    auto* out_opt = app.add_option("--out", out_flag, "output directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", seed_flag, "RNG seed (overrides config)");
    auto* threads_opt =
        app.add_option("--threads", threads_flag, "worker threads (overrides config)");

    app.add_subcommand("ingest", "parse the corpus and print summary counts");
    app.add_subcommand("analyze", "build networks, score homophily, write reports and exports");
    app.add_subcommand("backbone", "export networks with backbone strengths, optionally sparsified");
    app.add_subcommand("simulate", "generate a synthetic corpus and manifest");
    app.add_subcommand("export", "export plain network files without backbone attributes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (out_opt->count()) flags.out = out_flag;
        if (seed_opt->count()) flags.seed = seed_flag;
        if (threads_opt->count()) flags.threads = threads_flag;
        const RunConfig cfg = effective_config(flags);

        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "ingest") return cmd_ingest(cfg);
        if (sub == "analyze") return cmd_analyze(cfg);
        if (sub == "backbone") return cmd_backbone(cfg);
        if (sub == "simulate") return cmd_simulate(cfg, flags);
        return cmd_export(cfg);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
