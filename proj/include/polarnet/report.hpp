#pragma once

#include "polarnet/corpus.hpp"
#include "polarnet/metrics.hpp"
#include "polarnet/networks.hpp"

#include <string>

namespace polarnet {

// All writers use fixed-precision text (scores to 3 decimals, percentages to
// 1) so repeated runs produce byte-identical files. Undefined cells render
// as "--".

std::string report_json(const HomophilyReport& report);

// group_pair,dataset,network,source,to_category1,to_category2,significance
std::string tallies_csv(const HomophilyReport& report);

// Per scheme: mean and population stddev of the defined interaction-network
// E-I scores (retweet/mention/reply/quote), plus the hashtags-network E-I.
std::string ei_summary_tsv(const HomophilyReport& report);

// rank, tag, count in rank order.
std::string hashtag_freq_tsv(const HashtagFrequencyTable& table);

// group, present, baseline, pct per group row.
std::string presence_tsv(const PresenceReport& report);

} // namespace polarnet
