#include "wprof/profiledb/archetype.h"

#include "wprof/common/error.h"

namespace wprof::profiledb {

using nlohmann::json;

std::string_view to_string(MacroClass c) {
  switch (c) {
    case MacroClass::TechniciansOperators: return "TechniciansOperators";
    case MacroClass::EngineeringProfessionals: return "EngineeringProfessionals";
    case MacroClass::ManagersConsultants: return "ManagersConsultants";
  }
  return "TechniciansOperators";
}

std::optional<MacroClass> parse_macro_class(std::string_view s) {
  for (auto c : kAllMacroClasses) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

namespace {

void require_string(const json& obj, const char* key, const std::string& path,
                    std::vector<FieldIssue>& issues, bool non_empty = true) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    issues.push_back({path + "/" + key, "must be a string"});
  } else if (non_empty && obj[key].get<std::string>().empty()) {
    issues.push_back({path + "/" + key, "must not be empty"});
  }
}

}  // namespace

std::vector<JobArchetype> parse_archetypes(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse, "archetype file must be a JSON array");
  std::vector<FieldIssue> issues;
  std::vector<JobArchetype> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    const std::string path = "/" + std::to_string(i);
    if (!e.is_object()) {
      issues.push_back({path, "must be an object"});
      continue;
    }
    const std::size_t before = issues.size();
    require_string(e, "archetype_id", path, issues);
    require_string(e, "title", path, issues);
    require_string(e, "description", path, issues, false);
    if (!e.contains("macro_class_topdown") || !e["macro_class_topdown"].is_string() ||
        !parse_macro_class(e["macro_class_topdown"].get<std::string>())) {
      issues.push_back({path + "/macro_class_topdown", "must be one of TechniciansOperators, "
                                                       "EngineeringProfessionals, ManagersConsultants"});
    }
    if (!e.contains("binary_skills") || !e["binary_skills"].is_array()) {
      issues.push_back({path + "/binary_skills", "must be an array of skill ids"});
    } else {
      for (std::size_t k = 0; k < e["binary_skills"].size(); ++k) {
        if (!e["binary_skills"][k].is_string()) {
          issues.push_back({path + "/binary_skills/" + std::to_string(k), "must be a string"});
        }
      }
    }
    if (e.contains("soft_targets") && !e["soft_targets"].is_object()) {
      issues.push_back({path + "/soft_targets", "must be an object of skill id to level"});
    } else if (e.contains("soft_targets")) {
      for (const auto& [id, level] : e["soft_targets"].items()) {
        if (!level.is_number_integer() || level.get<int>() < 0 || level.get<int>() > kMaxLevel) {
          issues.push_back({path + "/soft_targets/" + id, "level must be an integer in [0, 4]"});
        }
      }
    }
    if (issues.size() != before) continue;

    JobArchetype a = archetype_from_json(e);
    for (const auto& [id, level] : a.soft_targets) {
      if (a.binary_skills.contains(id)) {
        issues.push_back({path + "/soft_targets/" + id, "skill is also listed in binary_skills"});
      }
    }
    out.push_back(std::move(a));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return out;
}

json to_json(const JobArchetype& a) {
  json soft = json::object();
  for (const auto& [id, level] : a.soft_targets) soft[id] = level;
  json j = {{"archetype_id", a.archetype_id},
            {"title", a.title},
            {"description", a.description},
            {"macro_class_topdown", to_string(a.macro_class_topdown)},
            {"binary_skills", a.binary_skills},
            {"soft_targets", soft},
            {"evidenced_skills", a.evidenced_skills}};
  j["macro_class_bottomup"] =
      a.macro_class_bottomup ? json(to_string(*a.macro_class_bottomup)) : json(nullptr);
  return j;
}

JobArchetype archetype_from_json(const json& j) {
  JobArchetype a;
  a.archetype_id = j.at("archetype_id").get<std::string>();
  a.title = j.at("title").get<std::string>();
  a.description = j.value("description", "");
  auto top = parse_macro_class(j.at("macro_class_topdown").get<std::string>());
  if (!top) throw Error(ErrorKind::parse, "unknown macro class for " + a.archetype_id);
  a.macro_class_topdown = *top;
  if (j.contains("macro_class_bottomup") && j["macro_class_bottomup"].is_string()) {
    a.macro_class_bottomup = parse_macro_class(j["macro_class_bottomup"].get<std::string>());
  }
  for (const auto& s : j.at("binary_skills")) a.binary_skills.insert(s.get<std::string>());
  if (j.contains("soft_targets")) {
    for (const auto& [id, level] : j["soft_targets"].items()) a.soft_targets[id] = level.get<int>();
  }
  a.evidenced_skills = j.value("evidenced_skills", std::size_t{0});
  return a;
}

}  // namespace wprof::profiledb
