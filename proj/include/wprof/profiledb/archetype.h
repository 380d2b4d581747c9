#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/skillmap/matcher.h"
#include "wprof/skillmap/taxonomy.h"

namespace wprof::profiledb {

enum class MacroClass { TechniciansOperators, EngineeringProfessionals, ManagersConsultants };

inline constexpr MacroClass kAllMacroClasses[] = {MacroClass::TechniciansOperators,
                                                  MacroClass::EngineeringProfessionals,
                                                  MacroClass::ManagersConsultants};

std::string_view to_string(MacroClass c);
std::optional<MacroClass> parse_macro_class(std::string_view s);

inline constexpr int kMaxLevel = 4;

struct JobArchetype {
  std::string archetype_id;
  std::string title;
  std::string description;
  MacroClass macro_class_topdown = MacroClass::TechniciansOperators;
  std::optional<MacroClass> macro_class_bottomup;
  std::set<std::string> binary_skills;
  std::map<std::string, int> soft_targets;
  // Binary skills backed by mapper evidence; filled by the database build.
  std::size_t evidenced_skills = 0;
};

// Archetype file: JSON array of objects with archetype_id, title,
// description, macro_class_topdown, binary_skills, soft_targets. Shape
// problems are reported together as a ValidationError with JSON paths.
std::vector<JobArchetype> parse_archetypes(const nlohmann::json& j);

nlohmann::json to_json(const JobArchetype& a);
JobArchetype archetype_from_json(const nlohmann::json& j);

}  // namespace wprof::profiledb
