#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/corpus/corpus.h"
#include "wprof/patentset/patent_set.h"
#include "wprof/techner/clusters.h"
#include "wprof/techner/hearst.h"

namespace wprof::trends {

enum class Maturity { emerging, growing, mature, obsolete, low_support };

std::string_view to_string(Maturity m);
Maturity parse_maturity(std::string_view s);

struct TrendSeries {
  std::string cluster_id;
  std::string label;
  std::map<int, std::size_t> counts;
  std::optional<Maturity> classification;
  double share = 0.0;

  std::size_t total() const;
};

struct MaturityParams {
  int window = 5;
  std::size_t min_support = 20;
  double decline_ratio = 0.5;
};

struct TrendOptions {
  // Counts every document at its own filing year instead of one entry per
  // family at the family's earliest year.
  bool count_applications = false;
};

// Lemmas mentioned per document.
class MentionIndex {
 public:
  MentionIndex() = default;
  explicit MentionIndex(const std::vector<techner::TechnologyMention>& mentions);

  void add(const std::string& doc_id, const std::string& lemma);
  bool mentions_any(const std::string& doc_id, const std::set<std::string>& lemmas) const;

 private:
  std::map<std::string, std::set<std::string>, std::less<>> lemmas_by_doc_;
};

// Unclassified series; share is filled in.
TrendSeries compute_trend(const techner::TechnologyCluster& cluster, const MentionIndex& index,
                          const patentset::PatentSet& set, const corpus::Corpus& corpus,
                          const TrendOptions& options = {});

// Families of the set with at least one document mentioning the cluster.
std::set<std::string> families_mentioning(const techner::TechnologyCluster& cluster,
                                          const MentionIndex& index,
                                          const patentset::PatentSet& set,
                                          const corpus::Corpus& corpus);

// Latest filing year among the set's documents; 0 for an empty set.
int reference_year(const patentset::PatentSet& set, const corpus::Corpus& corpus);

// Ordinary least-squares slope of counts over the years
// [reference_year - window + 1, reference_year], missing years as zero.
double window_slope(const std::map<int, std::size_t>& counts, int reference_year, int window);

Maturity classify_maturity(const TrendSeries& series, int reference_year,
                           const MaturityParams& params = {});

// Trend, share and classification for every active cluster, in cluster order.
std::vector<TrendSeries> compute_trends(const std::vector<techner::TechnologyCluster>& clusters,
                                        const MentionIndex& index, const patentset::PatentSet& set,
                                        const corpus::Corpus& corpus,
                                        const MaturityParams& params = {},
                                        const TrendOptions& options = {});

struct ShareRow {
  std::size_t rank = 0;
  std::string cluster_id;
  std::string label;
  std::size_t families = 0;
  double share = 0.0;
};

// Share of the set's families mentioning each active cluster, highest first,
// ties by label. Throws on an empty set.
std::vector<ShareRow> technology_shares(const std::vector<techner::TechnologyCluster>& clusters,
                                        const MentionIndex& index,
                                        const patentset::PatentSet& set,
                                        const corpus::Corpus& corpus);

nlohmann::json to_json(const TrendSeries& s);
TrendSeries trend_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ShareRow& r);

// `cluster,year,count`, zero-filled over [first_year, last_year] for plotting.
std::string trends_csv(const std::vector<TrendSeries>& series, int first_year, int last_year);
// `rank,label,share`
std::string shares_csv(const std::vector<ShareRow>& rows);

}  // namespace wprof::trends
