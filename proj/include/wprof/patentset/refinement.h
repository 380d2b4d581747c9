#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wprof/corpus/corpus.h"
#include "wprof/patentset/patent_set.h"

namespace wprof::patentset {

struct TermScore {
  std::string lemma;
  std::size_t false_positive_docs = 0;
  std::size_t true_positive_docs = 0;
  double log_odds = 0.0;  // > 0 leans towards false positives
};

struct RefinementReport {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::vector<TermScore> not_candidates;       // descending log-odds
  std::vector<TermScore> positive_candidates;  // ascending log-odds
};

// Smoothed log-odds ratio of a term appearing in false-positive versus
// true-positive documents:
//   log((fp+1)/(FP-fp+1)) - log((tp+1)/(TP-tp+1))
double term_log_odds(std::size_t fp, std::size_t fp_total, std::size_t tp, std::size_t tp_total);

// Ranks content lemmas of the labeled set members. Throws when the labels do
// not cover at least one relevant and one irrelevant member.
RefinementReport refinement_report(const PatentSet& set, const Labels& labels,
                                   const corpus::Corpus& corpus, std::size_t top_n = 10);

nlohmann::json to_json(const RefinementReport& r);

}  // namespace wprof::patentset
