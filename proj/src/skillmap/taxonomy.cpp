#include "wprof/skillmap/taxonomy.h"

#include "wprof/common/csv.h"
#include "wprof/common/error.h"
#include "wprof/common/io.h"

namespace wprof::skillmap {

std::string_view to_string(SkillCategory c) {
  switch (c) {
    case SkillCategory::hard: return "hard";
    case SkillCategory::digital: return "digital";
    case SkillCategory::soft: return "soft";
  }
  return "hard";
}

std::optional<SkillCategory> parse_category(std::string_view s) {
  if (s == "hard") return SkillCategory::hard;
  if (s == "digital") return SkillCategory::digital;
  if (s == "soft") return SkillCategory::soft;
  return std::nullopt;
}

Taxonomy::Taxonomy(std::vector<SkillRecord> skills) : skills_(std::move(skills)) {
  std::vector<FieldIssue> issues;
  for (std::size_t i = 0; i < skills_.size(); ++i) {
    const auto& s = skills_[i];
    const std::string path = "/skills/" + std::to_string(i);
    if (s.skill_id.empty()) issues.push_back({path + "/skill_id", "must not be empty"});
    if (s.label.empty()) issues.push_back({path + "/label", "must not be empty"});
    if (!by_id_.emplace(s.skill_id, i).second) {
      issues.push_back({path + "/skill_id", "duplicate skill id " + s.skill_id});
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

const SkillRecord* Taxonomy::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &skills_[it->second];
}

const SkillRecord& Taxonomy::at(std::string_view id) const {
  if (const auto* s = find(id)) return *s;
  throw Error(ErrorKind::not_found, "unknown skill id: " + std::string(id));
}

Taxonomy parse_taxonomy_csv(std::string_view text) {
  auto rows = csv::parse(text);
  const csv::Row header{"skill_id", "label", "description", "category", "green"};
  if (rows.empty() || rows[0] != header) {
    throw Error(ErrorKind::parse, "taxonomy header must be skill_id,label,description,category,green");
  }
  std::vector<SkillRecord> skills;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "row " + std::to_string(r + 1);
    if (row.size() != header.size()) {
      throw Error(ErrorKind::parse, where + ": expected 5 fields, got " + std::to_string(row.size()));
    }
    SkillRecord s;
    s.skill_id = std::string(trim(row[0]));
    s.label = std::string(trim(row[1]));
    s.description = row[2];
    auto cat = parse_category(trim(row[3]));
    if (!cat) throw Error(ErrorKind::parse, where + ": unknown category '" + row[3] + "'");
    s.category = *cat;
    if (!csv::parse_bool(trim(row[4]), s.green)) {
      throw Error(ErrorKind::parse, where + ": green must be a boolean");
    }
    skills.push_back(std::move(s));
  }
  return Taxonomy(std::move(skills));
}

std::string taxonomy_csv(const Taxonomy& t) {
  std::string out = csv::format_row({"skill_id", "label", "description", "category", "green"});
  for (const auto& s : t.skills()) {
    out += csv::format_row({s.skill_id, s.label, s.description, std::string(to_string(s.category)),
                            s.green ? "true" : "false"});
  }
  return out;
}

nlohmann::json to_json(const SkillRecord& s) {
  return {{"skill_id", s.skill_id},
          {"label", s.label},
          {"description", s.description},
          {"category", to_string(s.category)},
          {"green", s.green}};
}

}  // namespace wprof::skillmap
