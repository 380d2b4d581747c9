#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/profiledb/archetype.h"
#include "wprof/profiledb/clustering.h"
#include "wprof/skillmap/matcher.h"
#include "wprof/skillmap/taxonomy.h"

namespace wprof::profiledb {

struct BuildReport {
  std::vector<std::string> orphan_skills;
  // Digital skills over all hard and digital skills in the taxonomy.
  double digital_share_of_skills = 0.0;
  // Digital entries over all archetype binary-skill links.
  double digital_share_of_links = 0.0;
  std::size_t evidenced_skills = 0;
  std::optional<nlohmann::json> clustering;
};

struct BuildOptions {
  std::size_t k = 3;
  ClusterMetric metric = ClusterMetric::jaccard;
  const skillmap::EmbeddingProvider* provider = nullptr;
};

class ProfileDatabase {
 public:
  ProfileDatabase() = default;
  ProfileDatabase(std::vector<JobArchetype> archetypes, skillmap::Taxonomy skills,
                  BuildReport report, nlohmann::json provenance);

  const std::vector<JobArchetype>& archetypes() const { return archetypes_; }
  const skillmap::Taxonomy& skills() const { return skills_; }
  const BuildReport& report() const { return report_; }
  const nlohmann::json& provenance() const { return provenance_; }
  // Content digest over archetypes and skills; provenance does not count.
  const std::string& version() const { return version_; }

  const JobArchetype* find(std::string_view archetype_id) const;
  const JobArchetype& at(std::string_view archetype_id) const;

 private:
  std::vector<JobArchetype> archetypes_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  skillmap::Taxonomy skills_;
  BuildReport report_;
  nlohmann::json provenance_;
  std::string version_;
};

// Resolves every reference, annotates mapper evidence, reports orphan skills
// and digital shares, and labels each archetype bottom-up with the majority
// top-down class of its cluster (skipped when there are fewer than k
// archetypes).
ProfileDatabase build_profile_db(std::vector<JobArchetype> archetypes, const skillmap::Taxonomy& skills,
                                 const std::vector<skillmap::DerivedSkill>& evidence,
                                 const BuildOptions& options = {},
                                 nlohmann::json provenance = nlohmann::json::object());

nlohmann::json to_json(const ProfileDatabase& db);
ProfileDatabase database_from_json(const nlohmann::json& j);
ProfileDatabase load_database(const std::filesystem::path& path);

}  // namespace wprof::profiledb
