#include "polarnet/report.hpp"
#include "polarnet/textio.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace polarnet {

namespace {

std::string score_or_dash(const std::optional<double>& v) {
    return v ? format_fixed(*v, 3) : std::string("\"--\"");
}

std::string pct_or_dash(const std::optional<double>& v) {
    return v ? format_fixed(*v, 1) : std::string("\"--\"");
}

std::string p_value_text(const SignificanceResult& s) {
    if (!s.applicable) return "\"--\"";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", s.p_value);
    return buf;
}

} // namespace

std::string report_json(const HomophilyReport& report) {
    std::ostringstream out;
    out << "{\n  \"rows\": [";
    bool first = true;
    for (const auto& r : report.rows) {
        out << (first ? "\n" : ",\n");
        first = false;
        out << "    {\n"
            << "      \"group_pair\": \"" << json_escape(r.group_pair) << "\",\n"
            << "      \"dataset\": \"" << json_escape(r.dataset) << "\",\n"
            << "      \"network\": \"" << json_escape(r.network) << "\",\n"
            << "      \"n_cat1\": " << r.n_cat1 << ",\n"
            << "      \"n_cat2\": " << r.n_cat2 << ",\n"
            << "      \"homophilic_pct\": " << pct_or_dash(r.homophilic_pct) << ",\n"
            << "      \"heterophilic_pct\": " << pct_or_dash(r.heterophilic_pct) << ",\n"
            << "      \"weight_sum\": " << r.weight_sum << ",\n"
            << "      \"ei_index\": " << score_or_dash(r.ei) << ",\n"
            << "      \"assortativity\": " << format_fixed(r.assortativity, 3) << ",\n"
            << "      \"broader_nodes\": " << r.broader_nodes << ",\n"
            << "      \"broader_weight\": " << r.broader_weight << ",\n"
            << "      \"broader_ei\": " << score_or_dash(r.broader_ei) << ",\n"
            << "      \"internal_weight\": " << r.internal_weight << ",\n"
            << "      \"external_weight\": " << r.external_weight << ",\n"
            << "      \"broader_internal_weight\": " << r.broader_internal_weight << ",\n"
            << "      \"broader_external_weight\": " << r.broader_external_weight << ",\n"
            << "      \"assortativity_degenerate\": "
            << (r.assortativity_degenerate ? "true" : "false") << "\n"
            << "    }";
    }
    out << "\n  ],\n  \"tallies\": [";
    first = true;
    for (const auto& t : report.tallies) {
        out << (first ? "\n" : ",\n");
        first = false;
        out << "    {\n"
            << "      \"group_pair\": \"" << json_escape(t.group_pair) << "\",\n"
            << "      \"dataset\": \"" << json_escape(t.dataset) << "\",\n"
            << "      \"network\": \"" << json_escape(t.network) << "\",\n"
            << "      \"source\": \"" << label_name(t.source) << "\",\n"
            << "      \"to_category1\": " << t.to_category1 << ",\n"
            << "      \"to_category2\": " << t.to_category2 << ",\n"
            << "      \"significance\": \"" << t.significance.star << "\",\n"
            << "      \"p_value\": " << p_value_text(t.significance) << ",\n"
            << "      \"direction\": \""
            << (!t.significance.applicable ? "--"
                : t.significance.direction == Direction::Homophilic ? "homophilic"
                                                                    : "heterophilic")
            << "\"\n    }";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

std::string tallies_csv(const HomophilyReport& report) {
    std::ostringstream out;
    out << "group_pair,dataset,network,source,to_category1,to_category2,significance\n";
    for (const auto& t : report.tallies) {
        out << csv_field(t.group_pair) << ',' << csv_field(t.dataset) << ','
            << csv_field(t.network) << ',' << label_name(t.source) << ',' << t.to_category1
            << ',' << t.to_category2 << ',' << t.significance.star << '\n';
    }
    return out.str();
}

std::string ei_summary_tsv(const HomophilyReport& report) {
    std::ostringstream out;
    out << "group_pair\tdataset\tmean_interaction_ei\tstddev\thashtag_ei\n";

    std::vector<std::string> scheme_order;
    for (const auto& r : report.rows) {
        bool seen = false;
        for (const auto& s : scheme_order) seen = seen || s == r.group_pair;
        if (!seen) scheme_order.push_back(r.group_pair);
    }
    for (const auto& scheme : scheme_order) {
        std::string dataset;
        std::vector<double> interaction_scores;
        std::optional<double> hashtag_ei;
        for (const auto& r : report.rows) {
            if (r.group_pair != scheme) continue;
            dataset = r.dataset;
            const bool is_interaction = r.network == "retweet" || r.network == "mention" ||
                                        r.network == "reply" || r.network == "quote";
            if (is_interaction && r.ei) interaction_scores.push_back(*r.ei);
            if (r.network == "hashtags") hashtag_ei = r.ei;
        }
        out << tsv_escape(scheme) << '\t' << tsv_escape(dataset) << '\t';
        if (interaction_scores.empty()) {
            out << "--\t--";
        } else {
            double mean = 0.0;
            for (const double s : interaction_scores) mean += s;
            mean /= static_cast<double>(interaction_scores.size());
            double var = 0.0;
            for (const double s : interaction_scores) var += (s - mean) * (s - mean);
            var /= static_cast<double>(interaction_scores.size());
            out << format_fixed(mean, 3) << '\t' << format_fixed(std::sqrt(var), 3);
        }
        out << '\t' << (hashtag_ei ? format_fixed(*hashtag_ei, 3) : std::string("--")) << '\n';
    }
    return out.str();
}

std::string hashtag_freq_tsv(const HashtagFrequencyTable& table) {
    std::ostringstream out;
    out << "rank\ttag\tcount\n";
    std::int64_t rank = 0;
    for (const auto& tag : table.ranked())
        out << ++rank << '\t' << tsv_escape(tag) << '\t' << table.counts.at(tag) << '\n';
    return out.str();
}

std::string presence_tsv(const PresenceReport& report) {
    std::ostringstream out;
    out << "group\tpresent\tbaseline\tpct\n";
    for (const auto& row : report.rows) {
        out << label_name(row.group) << '\t' << row.present << '\t' << row.baseline << '\t'
            << (row.pct ? format_fixed(*row.pct, 1) : std::string("--")) << '\n';
    }
    return out.str();
}

} // namespace polarnet
