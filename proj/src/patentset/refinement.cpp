#include "wprof/patentset/refinement.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "wprof/common/error.h"
#include "wprof/corpus/segmenter.h"

namespace wprof::patentset {

using nlohmann::json;

double term_log_odds(std::size_t fp, std::size_t fp_total, std::size_t tp, std::size_t tp_total) {
  auto odds = [](std::size_t hit, std::size_t total) {
    return std::log(static_cast<double>(hit + 1) / static_cast<double>(total - hit + 1));
  };
  return odds(fp, fp_total) - odds(tp, tp_total);
}

namespace {

std::set<std::string> content_lemmas(const corpus::PatentDocument& doc) {
  std::set<std::string> out;
  for (const auto& s : corpus::segment_sentences(doc)) {
    for (const auto& t : s.tokens) {
      if (t.role == corpus::Role::noun || t.role == corpus::Role::adjective ||
          t.role == corpus::Role::verb) {
        out.insert(t.lemma);
      }
    }
  }
  return out;
}

}  // namespace

RefinementReport refinement_report(const PatentSet& set, const Labels& labels,
                                   const corpus::Corpus& corpus, std::size_t top_n) {
  RefinementReport report;
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // lemma -> (fp, tp)
  for (const auto& id : set.doc_ids) {
    auto it = labels.find(id);
    if (it == labels.end()) continue;
    bool relevant = it->second;
    (relevant ? report.true_positives : report.false_positives)++;
    for (const auto& lemma : content_lemmas(corpus.at(id))) {
      auto& c = counts[lemma];
      (relevant ? c.second : c.first)++;
    }
  }
  if (report.true_positives == 0 || report.false_positives == 0) {
    throw Error(ErrorKind::precondition, "insufficient labels");
  }

  std::vector<TermScore> scored;
  for (const auto& [lemma, c] : counts) {
    TermScore t{lemma, c.first, c.second,
                term_log_odds(c.first, report.false_positives, c.second, report.true_positives)};
    scored.push_back(std::move(t));
  }
  for (const auto& t : scored) {
    if (t.log_odds > 0) report.not_candidates.push_back(t);
    else if (t.log_odds < 0) report.positive_candidates.push_back(t);
  }
  std::sort(report.not_candidates.begin(), report.not_candidates.end(),
            [](const TermScore& a, const TermScore& b) {
              return a.log_odds != b.log_odds ? a.log_odds > b.log_odds : a.lemma < b.lemma;
            });
  std::sort(report.positive_candidates.begin(), report.positive_candidates.end(),
            [](const TermScore& a, const TermScore& b) {
              return a.log_odds != b.log_odds ? a.log_odds < b.log_odds : a.lemma < b.lemma;
            });
  if (report.not_candidates.size() > top_n) report.not_candidates.resize(top_n);
  if (report.positive_candidates.size() > top_n) report.positive_candidates.resize(top_n);
  return report;
}

json to_json(const RefinementReport& r) {
  auto terms = [](const std::vector<TermScore>& v) {
    json arr = json::array();
    for (const auto& t : v) {
      arr.push_back({{"lemma", t.lemma},
                     {"false_positive_docs", t.false_positive_docs},
                     {"true_positive_docs", t.true_positive_docs},
                     {"log_odds", t.log_odds}});
    }
    return arr;
  };
  return {{"true_positives", r.true_positives},
          {"false_positives", r.false_positives},
          {"not_candidates", terms(r.not_candidates)},
          {"positive_candidates", terms(r.positive_candidates)}};
}

}  // namespace wprof::patentset
