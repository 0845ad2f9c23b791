#include <doctest.h>

#include "polarnet/config.hpp"
#include "polarnet/errors.hpp"

#include <filesystem>
#include <fstream>
#include <string>

using namespace polarnet;

namespace {

RunConfig parse(const std::string& text) { return parse_config_text(text, "test.cfg"); }

std::string thrown_message(const std::string& text) {
    try {
        parse(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("a minimal config keeps the documented defaults") {
    const RunConfig cfg = parse("corpus = tweets.jsonl\n");
    CHECK(cfg.corpus == "tweets.jsonl");
    CHECK(cfg.dataset == "dataset");
    CHECK(cfg.format == "jsonl");
    CHECK_FALSE(cfg.follower_edges.has_value());
    CHECK(cfg.kinds.size() == 4);
    CHECK(cfg.hashtags);
    CHECK(cfg.null_mode == NullMode::Even);
    CHECK(cfg.comention.top_k_cull == 10);
    CHECK(cfg.comention.weighting == CoMentionWeighting::Product);
    CHECK(cfg.comention.pair_budget == 100000000);
    CHECK(cfg.comention.top_n_per_group == 10);
    CHECK_FALSE(cfg.comention.cull_before_filter);
    CHECK(cfg.backbone == BackboneNormalization::Raw);
    CHECK_FALSE(cfg.sparsify_rule.has_value());
    CHECK(cfg.out == "out");
    CHECK(cfg.seed == 0);
    CHECK(cfg.threads == 1);
    CHECK(cfg.schemes.empty());
    CHECK_FALSE(cfg.sim.has_value());
}

TEST_CASE("every top-level key lands in the right field") {
    const RunConfig cfg = parse(
        "dataset = elections\n"
        "corpus = data/tweets.jsonl\n"
        "format = jsonl\n"
        "follower_edges = data/follows.csv\n"
        "out = results\n"
        "seed = 42\n"
        "threads = 4\n"
        "kinds = retweet, reply\n"
        "hashtags = false\n"
        "null = size_weighted\n"
        "top_k_cull = 25\n"
        "weighting = min\n"
        "pair_budget = 5000\n"
        "top_n_per_group = 7\n"
        "partisan_tags = VoteYes, #VoteNo\n"
        "cull_before_filter = true\n"
        "backbone = jaccard\n"
        "sparsify_threshold = 2.5\n");
    CHECK(cfg.dataset == "elections");
    CHECK(cfg.corpus == "data/tweets.jsonl");
    CHECK(cfg.follower_edges == "data/follows.csv");
    CHECK(cfg.out == "results");
    CHECK(cfg.seed == 42);
    CHECK(cfg.threads == 4);
    REQUIRE(cfg.kinds.size() == 2);
    CHECK(cfg.kinds[0] == InteractionKind::Retweet);
    CHECK(cfg.kinds[1] == InteractionKind::Reply);
    CHECK_FALSE(cfg.hashtags);
    CHECK(cfg.null_mode == NullMode::SizeWeighted);
    CHECK(cfg.comention.top_k_cull == 25);
    CHECK(cfg.comention.weighting == CoMentionWeighting::Min);
    CHECK(cfg.comention.pair_budget == 5000);
    CHECK(cfg.comention.top_n_per_group == 7);
    REQUIRE(cfg.comention.manual_tags.size() == 2);
    CHECK(cfg.comention.manual_tags[0] == "VoteYes");
    CHECK(cfg.comention.manual_tags[1] == "#VoteNo");
    CHECK(cfg.comention.cull_before_filter);
    CHECK(cfg.backbone == BackboneNormalization::Jaccard);
    REQUIRE(cfg.sparsify_rule.has_value());
    CHECK(cfg.sparsify_rule->kind == SparsifyRule::Kind::GlobalThreshold);
    CHECK(cfg.sparsify_rule->threshold == 2.5);
}

TEST_CASE("scheme sections collect in file order with markers or label files") {
    const RunConfig cfg = parse(
        "corpus = c.jsonl\n"
        "[scheme.markers]\n"
        "markers = voteyes, voteno\n"
        "[scheme.community]\n"
        "labels = groups.csv\n");
    REQUIRE(cfg.schemes.size() == 2);
    CHECK(cfg.schemes[0].name == "markers");
    REQUIRE(cfg.schemes[0].markers.has_value());
    CHECK(cfg.schemes[0].markers->first == "voteyes");
    CHECK(cfg.schemes[0].markers->second == "voteno");
    CHECK_FALSE(cfg.schemes[0].label_file.has_value());
    CHECK(cfg.schemes[1].name == "community");
    CHECK(cfg.schemes[1].label_file == "groups.csv");
    CHECK_FALSE(cfg.schemes[1].markers.has_value());
}

TEST_CASE("a scheme needs exactly one of markers and labels") {
    CHECK(thrown_message("corpus = c\n[scheme.s]\n")
              .find("markers") != std::string::npos);
    CHECK_THROWS_AS(parse("corpus = c\n[scheme.s]\nmarkers = a, b\nlabels = f.csv\n"),
                    InputError);
}

TEST_CASE("sparsify settings are mutually exclusive") {
    const RunConfig frac = parse("corpus = c\nsparsify_fraction = 0.25\n");
    REQUIRE(frac.sparsify_rule.has_value());
    CHECK(frac.sparsify_rule->kind == SparsifyRule::Kind::TopFractionPerNode);
    CHECK(frac.sparsify_rule->fraction == 0.25);

    CHECK_THROWS_AS(parse("corpus = c\nsparsify_fraction = 0.5\nsparsify_threshold = 1\n"),
                    InputError);
    CHECK_THROWS_AS(parse("corpus = c\nsparsify_fraction = 0\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nsparsify_fraction = 1.01\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nsparsify_threshold = -2\n"), InputError);
}

TEST_CASE("unknown keys and sections are reported with their line") {
    const std::string bad_key = thrown_message("corpus = c\ntypo_key = 3\n");
    CHECK(bad_key.find("typo_key") != std::string::npos);
    CHECK(bad_key.find("test.cfg:2") != std::string::npos);

    const std::string bad_section = thrown_message("corpus = c\n[mystery]\n");
    CHECK(bad_section.find("test.cfg:2") != std::string::npos);

    const std::string bad_sim_key = thrown_message("corpus = c\n[sim]\nvolume = 9\n");
    CHECK(bad_sim_key.find("volume") != std::string::npos);
}

TEST_CASE("duplicate keys are rejected, including across scheme boundaries") {
    CHECK_THROWS_AS(parse("corpus = a\ncorpus = b\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\n[scheme.s]\nmarkers = a,b\nmarkers = c,d\n"),
                    InputError);
    CHECK_THROWS_AS(
        parse("corpus = c\n[scheme.s]\nmarkers = a,b\n[scheme.s]\nmarkers = c,d\n"),
        InputError);
    // the same key in two different schemes is fine
    const RunConfig cfg = parse(
        "corpus = c\n[scheme.x]\nmarkers = a,b\n[scheme.y]\nmarkers = c,d\n");
    CHECK(cfg.schemes.size() == 2);
}

TEST_CASE("values may be quoted and surrounded by noise lines") {
    const RunConfig cfg = parse(
        "# a comment\n"
        "\n"
        "corpus = \"spaced name.jsonl\"\r\n"
        "dataset = \"quoted\"\n"
        "   \n"
        "# trailing comment\n");
    CHECK(cfg.corpus == "spaced name.jsonl");
    CHECK(cfg.dataset == "quoted");
}

TEST_CASE("value validation catches out-of-range settings") {
    CHECK_THROWS_AS(parse("corpus = c\nthreads = 0\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nthreads = 2000\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nseed = notanumber\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\ntop_k_cull = -1\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\ntop_n_per_group = 0\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\npair_budget = 0\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nhashtags = maybe\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nnull = both\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nweighting = max\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nbackbone = cosine\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\nformat = csv\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\npartisan_tags =\n"), InputError);
}

TEST_CASE("a scientific-notation pair budget is accepted") {
    const RunConfig cfg = parse("corpus = c\npair_budget = 1e8\n");
    CHECK(cfg.comention.pair_budget == 100000000);
}

TEST_CASE("interaction kind lists are strict") {
    const RunConfig cfg = parse("corpus = c\nkinds = quote,mention\n");
    REQUIRE(cfg.kinds.size() == 2);
    CHECK(cfg.kinds[0] == InteractionKind::Quote);
    CHECK(cfg.kinds[1] == InteractionKind::Mention);

    CHECK_THROWS_AS(parse("corpus = c\nkinds = retweet, favourite\n"), InputError);
    const std::string follow = thrown_message("corpus = c\nkinds = follow\n");
    CHECK(follow.find("follower_edges") != std::string::npos);
    CHECK_THROWS_AS(parse("corpus = c\nkinds =\n"), InputError);
}

TEST_CASE("scheme names stick to a safe charset") {
    CHECK_THROWS_AS(parse("corpus = c\n[scheme.bad name]\nmarkers = a,b\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\n[scheme.]\nmarkers = a,b\n"), InputError);
    const RunConfig cfg = parse("corpus = c\n[scheme.ok-name_2]\nmarkers = a,b\n");
    CHECK(cfg.schemes[0].name == "ok-name_2");
}

TEST_CASE("marker pairs need exactly two distinct tags") {
    CHECK_THROWS_AS(parse("corpus = c\n[scheme.s]\nmarkers = solo\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\n[scheme.s]\nmarkers = a, b, c\n"), InputError);
    CHECK_THROWS_AS(parse("corpus = c\n[scheme.s]\nmarkers = same, same\n"), InputError);
}

TEST_CASE("simulation sections populate the generator spec") {
    const RunConfig cfg = parse(
        "corpus = c\n"
        "[sim]\n"
        "accounts_1 = 30\n"
        "accounts_2 = 20\n"
        "accounts_both = 5\n"
        "tweets_per_account = 6\n"
        "marker_1 = yes\n"
        "marker_2 = no\n"
        "marker_rate_1 = 0.9\n"
        "marker_rate_2 = 0.8\n"
        "pool_size = 40\n"
        "pool_overlap = 0.25\n"
        "tags_per_tweet = 3\n"
        "homophily_q = 0.75\n"
        "seed = 11\n");
    REQUIRE(cfg.sim.has_value());
    CHECK(cfg.sim->accounts_1 == 30);
    CHECK(cfg.sim->accounts_2 == 20);
    CHECK(cfg.sim->accounts_both == 5);
    CHECK(cfg.sim->tweets_per_account == 6);
    CHECK(cfg.sim->marker_1 == "yes");
    CHECK(cfg.sim->marker_2 == "no");
    CHECK(cfg.sim->marker_rate_1 == 0.9);
    CHECK(cfg.sim->marker_rate_2 == 0.8);
    CHECK(cfg.sim->pool_size == 40);
    CHECK(cfg.sim->pool_overlap == 0.25);
    CHECK(cfg.sim->tags_per_tweet == 3);
    CHECK(cfg.sim->homophily_q == 0.75);
    CHECK(cfg.sim->seed == 11);

    CHECK_THROWS_AS(parse("corpus = c\n[sim]\nhomophily_q = 1.2\n"), InputError);
}

TEST_CASE("lines without an equals sign are errors outside comments") {
    const std::string message = thrown_message("corpus = c\njust some words\n");
    CHECK(message.find("test.cfg:2") != std::string::npos);
}

TEST_CASE("load_config resolves input paths against the config directory") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "polarnet_config_test" / "nested";
    fs::create_directories(dir);
    const fs::path cfg_path = dir / "run.cfg";
    std::ofstream(cfg_path) << "corpus = tweets.jsonl\n"
                               "follower_edges = sub/follows.csv\n"
                               "out = results\n"
                               "[scheme.ext]\n"
                               "labels = labels.csv\n";
    const RunConfig cfg = load_config(cfg_path.string());
    CHECK(cfg.corpus == (dir / "tweets.jsonl").lexically_normal().string());
    CHECK(*cfg.follower_edges == (dir / "sub/follows.csv").lexically_normal().string());
    CHECK(*cfg.schemes[0].label_file == (dir / "labels.csv").lexically_normal().string());
    // output stays relative to the working directory, not the config
    CHECK(cfg.out == "results");

    std::ofstream(dir / "abs.cfg") << "corpus = /absolute/tweets.jsonl\n";
    CHECK(load_config((dir / "abs.cfg").string()).corpus == "/absolute/tweets.jsonl");

    fs::remove_all(fs::temp_directory_path() / "polarnet_config_test");
}

TEST_CASE("a missing config file is an input error") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/run.cfg"), InputError);
}
