#include "wprof/profiledb/clustering.h"

#include <algorithm>
#include <numeric>

#include "wprof/common/error.h"

namespace wprof::profiledb {

using nlohmann::json;

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

SimilarityMatrix jaccard_similarity(const std::vector<JobArchetype>& archetypes) {
  const std::size_t n = archetypes.size();
  SimilarityMatrix sim(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sim[i][j] = sim[j][i] = jaccard(archetypes[i].binary_skills, archetypes[j].binary_skills);
    }
  }
  return sim;
}

SimilarityMatrix embedding_similarity(const std::vector<JobArchetype>& archetypes,
                                      const skillmap::EmbeddingProvider& provider) {
  const std::size_t n = archetypes.size();
  std::vector<skillmap::Embedding> vecs;
  for (const auto& a : archetypes) vecs.push_back(provider.embed(a.description));
  SimilarityMatrix sim(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      if (!skillmap::is_zero(vecs[i]) && !skillmap::is_zero(vecs[j])) s = skillmap::cosine(vecs[i], vecs[j]);
      sim[i][j] = sim[j][i] = s;
    }
  }
  return sim;
}

Partition agglomerate(const std::vector<std::string>& ids, const SimilarityMatrix& sim, std::size_t k) {
  const std::size_t n = ids.size();
  if (k == 0) throw Error(ErrorKind::validation, "cluster count must be positive");
  if (n < k) {
    throw Error(ErrorKind::precondition, "need at least " + std::to_string(k) + " archetypes, got " +
                                             std::to_string(n));
  }
  // Work in id order so every sum is accumulated the same way whatever the
  // input order was.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
  for (std::size_t i = 1; i < n; ++i) {
    if (ids[order[i]] == ids[order[i - 1]]) throw Error(ErrorKind::duplicate, "duplicate id " + ids[order[i]]);
  }

  // Each cluster holds positions into `order`, kept sorted; clusters stay
  // sorted by their first member.
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};

  auto linkage = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    double sum = 0.0;
    for (auto x : a) {
      for (auto y : b) sum += sim[order[x]][order[y]];
    }
    return sum / static_cast<double>(a.size() * b.size());
  };

  while (clusters.size() > k) {
    std::size_t best_a = 0, best_b = 1;
    double best = linkage(clusters[0], clusters[1]);
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        if (a == 0 && b == 1) continue;
        double s = linkage(clusters[a], clusters[b]);
        // Strictly greater only: the scan visits pairs in (min, min) order.
        if (s > best) {
          best = s;
          best_a = a;
          best_b = b;
        }
      }
    }
    auto& dst = clusters[best_a];
    dst.insert(dst.end(), clusters[best_b].begin(), clusters[best_b].end());
    std::sort(dst.begin(), dst.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
  }

  Partition out;
  for (const auto& c : clusters) {
    std::vector<std::string> members;
    for (auto x : c) members.push_back(ids[order[x]]);
    out.push_back(std::move(members));
  }
  return out;
}

Partition cluster_archetypes(const std::vector<JobArchetype>& archetypes, std::size_t k,
                             ClusterMetric metric, const skillmap::EmbeddingProvider* provider) {
  std::vector<std::string> ids;
  for (const auto& a : archetypes) ids.push_back(a.archetype_id);
  if (metric == ClusterMetric::embedding) {
    if (!provider) throw Error(ErrorKind::precondition, "embedding metric needs a provider");
    return agglomerate(ids, embedding_similarity(archetypes, *provider), k);
  }
  return agglomerate(ids, jaccard_similarity(archetypes), k);
}

AgreementReport validate_macroclasses(const std::vector<JobArchetype>& archetypes,
                                      const Partition& partition) {
  std::map<std::string, MacroClass> topdown;
  for (const auto& a : archetypes) topdown[a.archetype_id] = a.macro_class_topdown;
  AgreementReport r;
  std::size_t agree = 0;
  for (const auto& cluster : partition) {
    std::map<MacroClass, std::size_t> row;
    for (const auto& id : cluster) {
      auto it = topdown.find(id);
      if (it == topdown.end()) throw Error(ErrorKind::not_found, "clustered id not in database: " + id);
      ++row[it->second];
      ++r.archetypes;
    }
    MacroClass major = kAllMacroClasses[0];
    std::size_t best = 0;
    for (auto c : kAllMacroClasses) {
      auto it = row.find(c);
      std::size_t n = it == row.end() ? 0 : it->second;
      if (n > best) {
        best = n;
        major = c;
      }
    }
    agree += best;
    r.confusion.push_back(std::move(row));
    r.majority.push_back(major);
  }
  r.purity = r.archetypes == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(r.archetypes);
  return r;
}

json to_json(const AgreementReport& r, const Partition& partition) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.confusion.size(); ++i) {
    json counts = json::object();
    for (auto c : kAllMacroClasses) {
      auto it = r.confusion[i].find(c);
      counts[std::string(to_string(c))] = it == r.confusion[i].end() ? 0 : it->second;
    }
    rows.push_back({{"cluster", i},
                    {"members", i < partition.size() ? json(partition[i]) : json::array()},
                    {"majority", to_string(r.majority[i])},
                    {"counts", counts}});
  }
  return {{"purity", r.purity}, {"archetypes", r.archetypes}, {"confusion", rows}};
}

}  // namespace wprof::profiledb
