#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/profiledb/database.h"

namespace wprof::gapengine {

struct Assessment {
  std::string assessment_id;
  std::string archetype_id;
  std::set<std::string> selected_binary;
  std::map<std::string, int> soft_levels;
  std::string created_at;
};

struct Weights {
  double binary = 0.7;
  double soft = 0.3;
};

// Throws validation unless both weights are >= 0 and sum to 1.
void validate_weights(const Weights& w);
// Scales a non-negative pair to sum 1; "0.7,0.3" style text is accepted too.
Weights normalized_weights(double binary, double soft);
Weights parse_weights(std::string_view text);

enum class Verdict { improve, maintain };
std::string_view to_string(Verdict v);

struct MissingSkill {
  std::string skill_id;
  std::string label;
  bool green = false;
};

struct SoftComparison {
  std::string skill_id;
  std::string label;
  int current = 0;
  int target = 0;
  Verdict verdict = Verdict::maintain;
};

struct Neighbor {
  std::string archetype_id;
  double distance = 0.0;
};

struct GapReport {
  std::vector<MissingSkill> missing_hard;
  std::vector<MissingSkill> missing_digital;
  std::vector<SoftComparison> soft_comparisons;
  double coverage = 1.0;
  std::vector<Neighbor> nearest;
  double distance_to_own = 0.0;
  Weights weights;
};

// Checks ids, archetype and levels against the database. Issues carry JSON
// paths relative to the assessment object.
void validate_assessment(const Assessment& a, const profiledb::ProfileDatabase& db);

double distance(const std::set<std::string>& selected, const std::map<std::string, int>& soft_levels,
                const profiledb::JobArchetype& candidate, const Weights& w = {});
double distance(const Assessment& a, const profiledb::JobArchetype& candidate, const Weights& w = {});

struct NearestOptions {
  std::size_t k = 3;
  bool include_own = false;
};

// Ascending distance; ties prefer the larger binary skill set, then the id.
std::vector<Neighbor> nearest_archetypes(const Assessment& a, const profiledb::ProfileDatabase& db,
                                         const Weights& w = {}, const NearestOptions& options = {});

// Rows ordered by skill label, then id; unrated skills count as level 0.
std::vector<SoftComparison> soft_comparison_series(const Assessment& a,
                                                   const profiledb::JobArchetype& archetype,
                                                   const skillmap::Taxonomy& skills);

GapReport compute_gap(const Assessment& a, const profiledb::ProfileDatabase& db, const Weights& w = {},
                      const NearestOptions& options = {});

nlohmann::json to_json(const GapReport& r);
nlohmann::json to_json(const SoftComparison& c);

// Request/file shape: {archetype_id, selected_binary, soft_levels}; the id
// and timestamp are optional. Shape errors come back as ValidationError.
Assessment assessment_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Assessment& a);

}  // namespace wprof::gapengine
