#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "wprof/corpus/corpus.h"
#include "wprof/patentset/query.h"

namespace wprof::patentset {

// 97.5th percentile of the standard normal distribution.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct PrecisionEstimate {
  std::size_t sample_size = 0;
  std::size_t relevant_count = 0;
  double point = 0.0;
  Interval ci95;
  std::vector<std::string> sampled_ids;
};

struct RecallEstimate {
  std::size_t seed_list_size = 0;
  std::size_t seeds_retrieved = 0;
  double point = 0.0;
  std::vector<std::string> missed_ids;
};

struct PatentSet {
  std::string query_name;
  std::set<std::string> doc_ids;
  std::set<std::string> family_ids;
  std::string created_at;
  std::optional<PrecisionEstimate> precision;
  std::optional<RecallEstimate> recall;

  bool contains(const std::string& doc_id) const { return doc_ids.contains(doc_id); }
};

using Labels = std::map<std::string, bool>;

// ISO-8601 UTC timestamp for artifact metadata. Honors SOURCE_DATE_EPOCH so
// pipeline outputs stay byte-stable; falls back to the Unix epoch.
std::string reproducible_timestamp();

PatentSet make_patent_set(const corpus::Corpus& corpus, std::string query_name,
                          std::set<std::string> doc_ids, std::string created_at);

PatentSet execute_query(const corpus::Corpus& corpus, const QueryOntology& query,
                        std::string created_at = reproducible_timestamp());

Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

// Draws k distinct indices from [0, n) with a partial Fisher-Yates shuffle
// driven by mt19937_64, so a seed reproduces the same sample on every
// platform.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::uint64_t seed);

PrecisionEstimate estimate_precision(const PatentSet& set, std::size_t k, const Labels& labels,
                                     std::uint64_t rng_seed);

RecallEstimate estimate_recall(const PatentSet& set, const std::vector<std::string>& seed_ids,
                               const corpus::Corpus& corpus);

// Reads `doc_id,relevant` rows; a leading header row is skipped.
Labels parse_labels_csv(std::string_view text);

nlohmann::json to_json(const PrecisionEstimate& p);
nlohmann::json to_json(const RecallEstimate& r);
nlohmann::json to_json(const PatentSet& s);
PatentSet patent_set_from_json(const nlohmann::json& j);

}  // namespace wprof::patentset
