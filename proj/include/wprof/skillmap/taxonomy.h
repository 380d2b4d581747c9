#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wprof::skillmap {

enum class SkillCategory { hard, digital, soft };

std::string_view to_string(SkillCategory c);
std::optional<SkillCategory> parse_category(std::string_view s);

struct SkillRecord {
  std::string skill_id;
  std::string label;
  std::string description;
  SkillCategory category = SkillCategory::hard;
  bool green = false;

  bool operator==(const SkillRecord&) const = default;
};

class Taxonomy {
 public:
  Taxonomy() = default;
  // Throws ValidationError on duplicate ids or empty labels.
  explicit Taxonomy(std::vector<SkillRecord> skills);

  const std::vector<SkillRecord>& skills() const { return skills_; }
  const SkillRecord* find(std::string_view id) const;
  const SkillRecord& at(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  std::size_t size() const { return skills_.size(); }

 private:
  std::vector<SkillRecord> skills_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

// CSV with header `skill_id,label,description,category,green`. Errors name
// the offending row and column.
Taxonomy parse_taxonomy_csv(std::string_view text);
std::string taxonomy_csv(const Taxonomy& t);

nlohmann::json to_json(const SkillRecord& s);

}  // namespace wprof::skillmap
