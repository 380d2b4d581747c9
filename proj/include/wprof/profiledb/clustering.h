#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "wprof/profiledb/archetype.h"
#include "wprof/skillmap/embedding.h"

namespace wprof::profiledb {

// |a ∩ b| / |a ∪ b|; two empty sets count as identical.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Member ids of each cluster, sorted; clusters ordered by their smallest id.
using Partition = std::vector<std::vector<std::string>>;

// Symmetric similarity between the archetypes at positions i and j.
using SimilarityMatrix = std::vector<std::vector<double>>;

SimilarityMatrix jaccard_similarity(const std::vector<JobArchetype>& archetypes);
// Cosine of description embeddings; zero vectors score 0 against anything
// except themselves.
SimilarityMatrix embedding_similarity(const std::vector<JobArchetype>& archetypes,
                                      const skillmap::EmbeddingProvider& provider);

// Average-linkage agglomeration down to k clusters. The most similar pair
// merges first; equal similarities go to the lexicographically smallest
// (min id, min id) pair, which makes the result independent of input order.
Partition agglomerate(const std::vector<std::string>& ids, const SimilarityMatrix& sim, std::size_t k);

enum class ClusterMetric { jaccard, embedding };

Partition cluster_archetypes(const std::vector<JobArchetype>& archetypes, std::size_t k = 3,
                             ClusterMetric metric = ClusterMetric::jaccard,
                             const skillmap::EmbeddingProvider* provider = nullptr);

struct AgreementReport {
  double purity = 0.0;
  std::size_t archetypes = 0;
  // One row per cluster: top-down class -> member count.
  std::vector<std::map<MacroClass, std::size_t>> confusion;
  // Majority top-down class per cluster; ties go to the earlier class.
  std::vector<MacroClass> majority;
};

AgreementReport validate_macroclasses(const std::vector<JobArchetype>& archetypes,
                                      const Partition& partition);

nlohmann::json to_json(const AgreementReport& r, const Partition& partition);

}  // namespace wprof::profiledb
