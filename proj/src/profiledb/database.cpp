#include "wprof/profiledb/database.h"

#include <set>

#include "wprof/common/digest.h"
#include "wprof/common/error.h"
#include "wprof/common/io.h"

namespace wprof::profiledb {

using nlohmann::json;

namespace {

json content_json(const std::vector<JobArchetype>& archetypes, const skillmap::Taxonomy& skills) {
  json a = json::array();
  for (const auto& x : archetypes) a.push_back(to_json(x));
  json s = json::array();
  for (const auto& x : skills.skills()) s.push_back(skillmap::to_json(x));
  return {{"archetypes", a}, {"skills", s}};
}

json to_json(const BuildReport& r) {
  json j = {{"orphan_skills", r.orphan_skills},
            {"digital_share_of_skills", r.digital_share_of_skills},
            {"digital_share_of_links", r.digital_share_of_links},
            {"evidenced_skills", r.evidenced_skills}};
  j["clustering"] = r.clustering ? *r.clustering : json(nullptr);
  return j;
}

BuildReport report_from_json(const json& j) {
  BuildReport r;
  r.orphan_skills = j.value("orphan_skills", std::vector<std::string>{});
  r.digital_share_of_skills = j.value("digital_share_of_skills", 0.0);
  r.digital_share_of_links = j.value("digital_share_of_links", 0.0);
  r.evidenced_skills = j.value("evidenced_skills", std::size_t{0});
  if (j.contains("clustering") && !j["clustering"].is_null()) r.clustering = j["clustering"];
  return r;
}

}  // namespace

ProfileDatabase::ProfileDatabase(std::vector<JobArchetype> archetypes, skillmap::Taxonomy skills,
                                 BuildReport report, json provenance)
    : archetypes_(std::move(archetypes)),
      skills_(std::move(skills)),
      report_(std::move(report)),
      provenance_(std::move(provenance)) {
  for (std::size_t i = 0; i < archetypes_.size(); ++i) {
    if (!by_id_.emplace(archetypes_[i].archetype_id, i).second) {
      throw Error(ErrorKind::duplicate, "duplicate archetype_id " + archetypes_[i].archetype_id);
    }
  }
  version_ = "sha256:" + sha256_hex(content_json(archetypes_, skills_).dump()).substr(0, 16);
}

const JobArchetype* ProfileDatabase::find(std::string_view archetype_id) const {
  auto it = by_id_.find(archetype_id);
  return it == by_id_.end() ? nullptr : &archetypes_[it->second];
}

const JobArchetype& ProfileDatabase::at(std::string_view archetype_id) const {
  if (const auto* a = find(archetype_id)) return *a;
  throw Error(ErrorKind::not_found, "unknown archetype " + std::string(archetype_id));
}

ProfileDatabase build_profile_db(std::vector<JobArchetype> archetypes, const skillmap::Taxonomy& skills,
                                 const std::vector<skillmap::DerivedSkill>& evidence,
                                 const BuildOptions& options, json provenance) {
  if (archetypes.empty()) throw Error(ErrorKind::validation, "no archetypes");
  std::set<std::string> seen;
  for (const auto& a : archetypes) {
    if (!seen.insert(a.archetype_id).second) {
      throw Error(ErrorKind::duplicate, "duplicate archetype_id " + a.archetype_id);
    }
  }
  using skillmap::SkillCategory;
  std::set<std::string> referenced;
  for (const auto& a : archetypes) {
    for (const auto& id : a.binary_skills) {
      const auto* s = skills.find(id);
      if (!s) throw Error(ErrorKind::validation, "archetype " + a.archetype_id + " references unknown skill " + id);
      if (s->category == SkillCategory::soft) {
        throw Error(ErrorKind::validation, "archetype " + a.archetype_id + " lists soft skill " + id +
                                               " in binary_skills");
      }
      referenced.insert(id);
    }
    for (const auto& [id, level] : a.soft_targets) {
      const auto* s = skills.find(id);
      if (!s) throw Error(ErrorKind::validation, "archetype " + a.archetype_id + " references unknown skill " + id);
      if (s->category != SkillCategory::soft) {
        throw Error(ErrorKind::validation, "archetype " + a.archetype_id + " lists " +
                                               std::string(to_string(s->category)) + " skill " + id +
                                               " in soft_targets");
      }
      if (level < 0 || level > kMaxLevel) {
        throw Error(ErrorKind::validation, "archetype " + a.archetype_id + " has level out of range for " + id);
      }
      referenced.insert(id);
    }
  }

  std::set<std::string> evidenced;
  for (const auto& d : evidence) {
    if (!skills.contains(d.skill_id)) {
      throw Error(ErrorKind::validation, "evidence references unknown skill " + d.skill_id);
    }
    if (d.evidence_count > 0) evidenced.insert(d.skill_id);
  }

  BuildReport report;
  report.evidenced_skills = evidenced.size();
  std::size_t binary_total = 0, digital_total = 0;
  for (const auto& s : skills.skills()) {
    if (!referenced.contains(s.skill_id)) report.orphan_skills.push_back(s.skill_id);
    if (s.category != SkillCategory::soft) ++binary_total;
    if (s.category == SkillCategory::digital) ++digital_total;
  }
  if (binary_total > 0) {
    report.digital_share_of_skills = static_cast<double>(digital_total) / static_cast<double>(binary_total);
  }
  std::size_t links = 0, digital_links = 0;
  for (auto& a : archetypes) {
    a.evidenced_skills = 0;
    for (const auto& id : a.binary_skills) {
      ++links;
      if (skills.at(id).category == SkillCategory::digital) ++digital_links;
      if (evidenced.contains(id)) ++a.evidenced_skills;
    }
  }
  if (links > 0) report.digital_share_of_links = static_cast<double>(digital_links) / static_cast<double>(links);

  if (archetypes.size() >= options.k) {
    auto partition = cluster_archetypes(archetypes, options.k, options.metric, options.provider);
    auto agreement = validate_macroclasses(archetypes, partition);
    std::map<std::string, MacroClass> label;
    for (std::size_t c = 0; c < partition.size(); ++c) {
      for (const auto& id : partition[c]) label[id] = agreement.majority[c];
    }
    for (auto& a : archetypes) a.macro_class_bottomup = label.at(a.archetype_id);
    auto cj = to_json(agreement, partition);
    cj["k"] = options.k;
    cj["metric"] = options.metric == ClusterMetric::jaccard ? "jaccard" : "embedding";
    report.clustering = std::move(cj);
  }
  return ProfileDatabase(std::move(archetypes), skills, std::move(report), std::move(provenance));
}

json to_json(const ProfileDatabase& db) {
  json j = content_json(db.archetypes(), db.skills());
  j["version"] = db.version();
  j["provenance"] = db.provenance();
  j["report"] = to_json(db.report());
  return j;
}

ProfileDatabase database_from_json(const json& j) {
  try {
    std::vector<JobArchetype> archetypes;
    for (const auto& a : j.at("archetypes")) archetypes.push_back(archetype_from_json(a));
    std::vector<skillmap::SkillRecord> skills;
    for (const auto& s : j.at("skills")) {
      skillmap::SkillRecord r;
      r.skill_id = s.at("skill_id").get<std::string>();
      r.label = s.at("label").get<std::string>();
      r.description = s.value("description", "");
      auto cat = skillmap::parse_category(s.at("category").get<std::string>());
      if (!cat) throw Error(ErrorKind::parse, "unknown skill category for " + r.skill_id);
      r.category = *cat;
      r.green = s.value("green", false);
      skills.push_back(std::move(r));
    }
    ProfileDatabase db(std::move(archetypes), skillmap::Taxonomy(std::move(skills)),
                       report_from_json(j.value("report", json::object())),
                       j.value("provenance", json::object()));
    if (j.contains("version") && j["version"].get<std::string>() != db.version()) {
      throw Error(ErrorKind::validation, "database version does not match its content");
    }
    return db;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed database: ") + e.what());
  }
}

ProfileDatabase load_database(const std::filesystem::path& path) {
  return database_from_json(read_json_file(path));
}

}  // namespace wprof::profiledb
