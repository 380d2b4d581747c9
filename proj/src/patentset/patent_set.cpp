#include "wprof/patentset/patent_set.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>

#include "wprof/common/csv.h"
#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/common/parallel.h"

namespace wprof::patentset {

using nlohmann::json;

std::string reproducible_timestamp() {
  long long epoch = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    auto v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v >= 0) epoch = v;
  }
  using namespace std::chrono;
  sys_seconds tp{seconds{epoch}};
  auto day = floor<days>(tp);
  year_month_day ymd{day};
  hh_mm_ss hms{tp - day};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

PatentSet make_patent_set(const corpus::Corpus& corpus, std::string query_name,
                          std::set<std::string> doc_ids, std::string created_at) {
  PatentSet set;
  set.query_name = std::move(query_name);
  set.created_at = std::move(created_at);
  for (const auto& id : doc_ids) set.family_ids.insert(corpus.at(id).family_id);
  set.doc_ids = std::move(doc_ids);
  return set;
}

PatentSet execute_query(const corpus::Corpus& corpus, const QueryOntology& query,
                        std::string created_at) {
  const auto& docs = corpus.documents();
  std::vector<char> member(docs.size(), 0);
  parallel_for(docs.size(), [&](std::size_t i) {
    DocumentView view(docs[i], query.scope);
    member[i] = evaluate(query.expression, view) ? 1 : 0;
  });
  std::set<std::string> ids;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (member[i]) ids.insert(docs[i].doc_id);
  }
  return make_patent_set(corpus, query.name, std::move(ids), std::move(created_at));
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw Error(ErrorKind::precondition, "wilson interval needs at least one trial");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// Unbiased draw from [0, bound) by rejection on the top of the 64-bit range.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::uint64_t seed) {
  if (k > n) throw Error(ErrorKind::precondition, "sample size exceeds population");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    auto j = i + static_cast<std::size_t>(bounded(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

PrecisionEstimate estimate_precision(const PatentSet& set, std::size_t k, const Labels& labels,
                                     std::uint64_t rng_seed) {
  if (k == 0) throw Error(ErrorKind::precondition, "precision sample size must be at least 1");
  if (k > set.doc_ids.size()) {
    throw Error(ErrorKind::precondition, "precision sample size " + std::to_string(k) +
                                             " exceeds patent set size " +
                                             std::to_string(set.doc_ids.size()));
  }
  std::vector<std::string> ids(set.doc_ids.begin(), set.doc_ids.end());
  PrecisionEstimate est;
  est.sample_size = k;
  for (auto idx : sample_without_replacement(ids.size(), k, rng_seed)) {
    const auto& id = ids[idx];
    auto it = labels.find(id);
    if (it == labels.end()) throw Error(ErrorKind::precondition, "missing label for sampled id '" + id + "'");
    if (it->second) ++est.relevant_count;
    est.sampled_ids.push_back(id);
  }
  std::sort(est.sampled_ids.begin(), est.sampled_ids.end());
  est.point = static_cast<double>(est.relevant_count) / static_cast<double>(k);
  est.ci95 = wilson_interval(est.relevant_count, k);
  return est;
}

RecallEstimate estimate_recall(const PatentSet& set, const std::vector<std::string>& seed_ids,
                               const corpus::Corpus& corpus) {
  std::set<std::string> seeds(seed_ids.begin(), seed_ids.end());
  if (seeds.empty()) throw Error(ErrorKind::precondition, "seed list is empty");
  RecallEstimate est;
  est.seed_list_size = seeds.size();
  for (const auto& id : seeds) {
    if (!corpus.contains(id)) throw Error(ErrorKind::not_found, "unknown seed id '" + id + "'");
    if (set.contains(id)) ++est.seeds_retrieved;
    else est.missed_ids.push_back(id);
  }
  est.point = static_cast<double>(est.seeds_retrieved) / static_cast<double>(est.seed_list_size);
  return est;
}

Labels parse_labels_csv(std::string_view text) {
  Labels labels;
  auto rows = csv::parse(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (i == 0 && row.size() >= 2 && trim(row[0]) == "doc_id") continue;
    bool value = false;
    if (row.size() != 2 || !csv::parse_bool(row[1], value)) {
      throw Error(ErrorKind::parse, "labels row " + std::to_string(i + 1) + ": expected doc_id,relevant");
    }
    labels[std::string(trim(row[0]))] = value;
  }
  return labels;
}

json to_json(const PrecisionEstimate& p) {
  return {{"sample_size", p.sample_size}, {"relevant_count", p.relevant_count},
          {"point", p.point},             {"ci95", {p.ci95.low, p.ci95.high}},
          {"sampled_ids", p.sampled_ids}};
}

json to_json(const RecallEstimate& r) {
  return {{"seed_list_size", r.seed_list_size},
          {"seeds_retrieved", r.seeds_retrieved},
          {"point", r.point},
          {"missed_ids", r.missed_ids}};
}

json to_json(const PatentSet& s) {
  json j = {{"query_name", s.query_name},
            {"doc_ids", s.doc_ids},
            {"family_ids", s.family_ids},
            {"created_at", s.created_at}};
  j["precision"] = s.precision ? to_json(*s.precision) : json(nullptr);
  j["recall"] = s.recall ? to_json(*s.recall) : json(nullptr);
  return j;
}

PatentSet patent_set_from_json(const json& j) {
  PatentSet s;
  s.query_name = j.at("query_name").get<std::string>();
  s.doc_ids = j.at("doc_ids").get<std::set<std::string>>();
  s.family_ids = j.at("family_ids").get<std::set<std::string>>();
  s.created_at = j.at("created_at").get<std::string>();
  if (j.contains("precision") && !j["precision"].is_null()) {
    const auto& p = j["precision"];
    PrecisionEstimate est;
    est.sample_size = p.at("sample_size").get<std::size_t>();
    est.relevant_count = p.at("relevant_count").get<std::size_t>();
    est.point = p.at("point").get<double>();
    est.ci95 = {p.at("ci95")[0].get<double>(), p.at("ci95")[1].get<double>()};
    est.sampled_ids = p.value("sampled_ids", std::vector<std::string>{});
    s.precision = est;
  }
  if (j.contains("recall") && !j["recall"].is_null()) {
    const auto& r = j["recall"];
    RecallEstimate est;
    est.seed_list_size = r.at("seed_list_size").get<std::size_t>();
    est.seeds_retrieved = r.at("seeds_retrieved").get<std::size_t>();
    est.point = r.at("point").get<double>();
    est.missed_ids = r.value("missed_ids", std::vector<std::string>{});
    s.recall = est;
  }
  return s;
}

}  // namespace wprof::patentset
