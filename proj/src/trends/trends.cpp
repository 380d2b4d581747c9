#include "wprof/trends/trends.h"

#include <algorithm>
#include <cstdio>

#include "wprof/common/csv.h"
#include "wprof/common/error.h"
#include "wprof/common/parallel.h"

namespace wprof::trends {

using nlohmann::json;

std::string_view to_string(Maturity m) {
  switch (m) {
    case Maturity::emerging: return "emerging";
    case Maturity::growing: return "growing";
    case Maturity::mature: return "mature";
    case Maturity::obsolete: return "obsolete";
    case Maturity::low_support: return "low_support";
  }
  return "low_support";
}

Maturity parse_maturity(std::string_view s) {
  for (auto m : {Maturity::emerging, Maturity::growing, Maturity::mature, Maturity::obsolete,
                 Maturity::low_support}) {
    if (to_string(m) == s) return m;
  }
  throw Error(ErrorKind::parse, "unknown maturity class: " + std::string(s));
}

std::size_t TrendSeries::total() const {
  std::size_t t = 0;
  for (const auto& [year, n] : counts) t += n;
  return t;
}

MentionIndex::MentionIndex(const std::vector<techner::TechnologyMention>& mentions) {
  for (const auto& m : mentions) add(m.location.doc_id, m.lemma);
}

void MentionIndex::add(const std::string& doc_id, const std::string& lemma) {
  lemmas_by_doc_[doc_id].insert(lemma);
}

bool MentionIndex::mentions_any(const std::string& doc_id,
                                const std::set<std::string>& lemmas) const {
  auto it = lemmas_by_doc_.find(doc_id);
  if (it == lemmas_by_doc_.end()) return false;
  const auto& have = it->second;
  // Walk the smaller side.
  if (have.size() <= lemmas.size()) {
    return std::any_of(have.begin(), have.end(), [&](const auto& l) { return lemmas.contains(l); });
  }
  return std::any_of(lemmas.begin(), lemmas.end(), [&](const auto& l) { return have.contains(l); });
}

std::set<std::string> families_mentioning(const techner::TechnologyCluster& cluster,
                                          const MentionIndex& index,
                                          const patentset::PatentSet& set,
                                          const corpus::Corpus& corpus) {
  std::set<std::string> families;
  for (const auto& id : set.doc_ids) {
    if (index.mentions_any(id, cluster.member_lemmas)) families.insert(corpus.at(id).family_id);
  }
  return families;
}

TrendSeries compute_trend(const techner::TechnologyCluster& cluster, const MentionIndex& index,
                          const patentset::PatentSet& set, const corpus::Corpus& corpus,
                          const TrendOptions& options) {
  TrendSeries s;
  s.cluster_id = cluster.cluster_id;
  s.label = cluster.label;
  auto families = families_mentioning(cluster, index, set, corpus);
  if (options.count_applications) {
    for (const auto& id : set.doc_ids) {
      if (index.mentions_any(id, cluster.member_lemmas)) ++s.counts[corpus.at(id).filing_year];
    }
  } else {
    for (const auto& f : families) ++s.counts[corpus.family_earliest_year(f)];
  }
  if (!set.family_ids.empty()) {
    s.share = static_cast<double>(families.size()) / static_cast<double>(set.family_ids.size());
  }
  return s;
}

int reference_year(const patentset::PatentSet& set, const corpus::Corpus& corpus) {
  int year = 0;
  for (const auto& id : set.doc_ids) year = std::max(year, corpus.at(id).filing_year);
  return year;
}

double window_slope(const std::map<int, std::size_t>& counts, int reference_year, int window) {
  if (window < 2) return 0.0;
  const double mean_x = (window - 1) / 2.0;
  double mean_y = 0.0;
  std::vector<double> ys(window, 0.0);
  for (int i = 0; i < window; ++i) {
    auto it = counts.find(reference_year - window + 1 + i);
    if (it != counts.end()) ys[i] = static_cast<double>(it->second);
    mean_y += ys[i];
  }
  mean_y /= window;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < window; ++i) {
    num += (i - mean_x) * (ys[i] - mean_y);
    den += (i - mean_x) * (i - mean_x);
  }
  return num / den;
}

Maturity classify_maturity(const TrendSeries& series, int reference_year,
                           const MaturityParams& params) {
  if (params.window < 1) throw Error(ErrorKind::validation, "trend window must be at least 1");
  if (params.decline_ratio < 0.0) throw Error(ErrorKind::validation, "decline ratio must be >= 0");
  const std::size_t total = series.total();
  if (total == 0 || total < params.min_support) return Maturity::low_support;

  const int window_start = reference_year - params.window + 1;
  int first_year = 0;
  int peak_year = 0;
  std::size_t peak = 0;
  double window_sum = 0.0;
  for (const auto& [year, n] : series.counts) {
    if (n == 0) continue;
    if (first_year == 0) first_year = year;
    if (n > peak) {
      peak = n;
      peak_year = year;
    }
    if (year >= window_start && year <= reference_year) window_sum += static_cast<double>(n);
  }
  const double slope = window_slope(series.counts, reference_year, params.window);
  if (first_year >= window_start && slope > 0.0) return Maturity::emerging;
  if (slope > 0.0) return Maturity::growing;
  const double window_mean = window_sum / params.window;
  if (peak_year < window_start && window_mean < params.decline_ratio * static_cast<double>(peak)) {
    return Maturity::obsolete;
  }
  return Maturity::mature;
}

std::vector<TrendSeries> compute_trends(const std::vector<techner::TechnologyCluster>& clusters,
                                        const MentionIndex& index, const patentset::PatentSet& set,
                                        const corpus::Corpus& corpus, const MaturityParams& params,
                                        const TrendOptions& options) {
  std::vector<const techner::TechnologyCluster*> active;
  for (const auto& c : clusters) {
    if (c.active()) active.push_back(&c);
  }
  const int ref = reference_year(set, corpus);
  std::vector<TrendSeries> out(active.size());
  parallel_for(active.size(), [&](std::size_t i) {
    out[i] = compute_trend(*active[i], index, set, corpus, options);
    out[i].classification = classify_maturity(out[i], ref, params);
  });
  return out;
}

std::vector<ShareRow> technology_shares(const std::vector<techner::TechnologyCluster>& clusters,
                                        const MentionIndex& index,
                                        const patentset::PatentSet& set,
                                        const corpus::Corpus& corpus) {
  if (set.family_ids.empty()) throw Error(ErrorKind::precondition, "empty patent set");
  const double total = static_cast<double>(set.family_ids.size());
  std::vector<ShareRow> rows;
  for (const auto& c : clusters) {
    if (!c.active()) continue;
    ShareRow r;
    r.cluster_id = c.cluster_id;
    r.label = c.label;
    r.families = families_mentioning(c, index, set, corpus).size();
    r.share = static_cast<double>(r.families) / total;
    rows.push_back(std::move(r));
  }
  // Compare family counts, not the doubles, so equal shares tie exactly.
  std::sort(rows.begin(), rows.end(), [](const ShareRow& a, const ShareRow& b) {
    if (a.families != b.families) return a.families > b.families;
    if (a.label != b.label) return a.label < b.label;
    return a.cluster_id < b.cluster_id;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = i + 1;
  return rows;
}

json to_json(const TrendSeries& s) {
  json counts = json::object();
  for (const auto& [year, n] : s.counts) counts[std::to_string(year)] = n;
  json j = {{"cluster_id", s.cluster_id}, {"label", s.label},   {"counts", counts},
            {"total", s.total()},         {"share", s.share}};
  j["classification"] = s.classification ? json(to_string(*s.classification)) : json(nullptr);
  return j;
}

TrendSeries trend_from_json(const json& j) {
  TrendSeries s;
  s.cluster_id = j.at("cluster_id").get<std::string>();
  s.label = j.value("label", s.cluster_id);
  for (const auto& [year, n] : j.at("counts").items()) {
    s.counts[std::stoi(year)] = n.get<std::size_t>();
  }
  s.share = j.value("share", 0.0);
  if (j.contains("classification") && !j["classification"].is_null()) {
    s.classification = parse_maturity(j["classification"].get<std::string>());
  }
  return s;
}

json to_json(const ShareRow& r) {
  return {{"rank", r.rank},
          {"cluster_id", r.cluster_id},
          {"label", r.label},
          {"families", r.families},
          {"share", r.share}};
}

namespace {

std::string format_share(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string trends_csv(const std::vector<TrendSeries>& series, int first_year, int last_year) {
  std::string out = csv::format_row({"cluster", "year", "count"});
  for (const auto& s : series) {
    for (int y = first_year; y <= last_year; ++y) {
      auto it = s.counts.find(y);
      std::size_t n = it == s.counts.end() ? 0 : it->second;
      out += csv::format_row({s.cluster_id, std::to_string(y), std::to_string(n)});
    }
  }
  return out;
}

std::string shares_csv(const std::vector<ShareRow>& rows) {
  std::string out = csv::format_row({"rank", "label", "share"});
  for (const auto& r : rows) {
    out += csv::format_row({std::to_string(r.rank), r.label, format_share(r.share)});
  }
  return out;
}

}  // namespace wprof::trends
