#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/corpus/document.h"
#include "wprof/skillmap/embedding.h"
#include "wprof/skillmap/taxonomy.h"

namespace wprof::skillmap {

inline constexpr double kDefaultThreshold = 0.7;

enum class Review { automatic, approved, rejected };

std::string_view to_string(Review r);
std::optional<Review> parse_review(std::string_view s);

struct SkillMatch {
  corpus::SentenceRef sentence;
  std::string skill_id;
  double score = 0.0;
  bool kept = false;
  Review review = Review::automatic;

  bool operator==(const SkillMatch&) const = default;
};

// Index of the highest score; equal scores go to the smaller skill id.
// Requires scores.size() == skill_ids.size() > 0.
std::size_t best_index(const std::vector<double>& scores, const std::vector<std::string>& skill_ids);

// Embedded skill side, reused across sentences.
struct SkillIndex {
  std::vector<std::string> skill_ids;
  std::vector<Embedding> vectors;
};

// Hard and digital skills with a comparable description embedding.
SkillIndex index_skills(const Taxonomy& taxonomy, const EmbeddingProvider& provider);

// Best skill for one sentence vector; nullopt for a zero vector.
std::optional<SkillMatch> match_vector(const Embedding& sentence_vec, const SkillIndex& skills,
                                       double threshold);

// One match per comparable sentence, kept iff the best score is strictly
// above the threshold. Output is ordered by sentence reference.
std::vector<SkillMatch> match_sentences_to_skills(const std::vector<corpus::Sentence>& sentences,
                                                  const Taxonomy& taxonomy,
                                                  const EmbeddingProvider& provider,
                                                  double threshold = kDefaultThreshold);

using SkillOverrides = std::map<std::string, Review, std::less<>>;

// [{"skill_id": "...", "review": "approved" | "rejected"}, ...]
SkillOverrides parse_skill_overrides(const nlohmann::json& j);

struct DerivedSkill {
  std::string skill_id;
  std::size_t evidence_count = 0;
  Review review = Review::automatic;
};

// Kept matches grouped per skill, curation-rejected skills dropped, most
// evidence first and ties by id. Throws not_found for an override naming a
// skill outside the taxonomy.
std::vector<DerivedSkill> derive_skill_set(const std::vector<SkillMatch>& matches,
                                           const SkillOverrides& overrides,
                                           const Taxonomy& taxonomy);

nlohmann::json to_json(const SkillMatch& m);
SkillMatch match_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DerivedSkill& d);
DerivedSkill derived_skill_from_json(const nlohmann::json& j);

std::string matches_jsonl(const std::vector<SkillMatch>& matches);
std::vector<SkillMatch> parse_matches_jsonl(std::string_view text);

}  // namespace wprof::skillmap
