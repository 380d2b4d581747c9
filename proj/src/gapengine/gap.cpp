#include "wprof/gapengine/gap.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/profiledb/clustering.h"

namespace wprof::gapengine {

using nlohmann::json;
using profiledb::JobArchetype;
using profiledb::ProfileDatabase;

void validate_weights(const Weights& w) {
  if (!std::isfinite(w.binary) || !std::isfinite(w.soft) || w.binary < 0.0 || w.soft < 0.0) {
    throw Error(ErrorKind::validation, "weights must be non-negative");
  }
  if (std::abs(w.binary + w.soft - 1.0) > 1e-9) throw Error(ErrorKind::validation, "weights must sum to 1");
}

Weights normalized_weights(double binary, double soft) {
  if (!(binary >= 0.0) || !(soft >= 0.0) || binary + soft <= 0.0) {
    throw Error(ErrorKind::validation, "weights must be non-negative with a positive sum");
  }
  return {binary / (binary + soft), soft / (binary + soft)};
}

Weights parse_weights(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorKind::validation, "weights must look like w_b,w_s");
  try {
    std::size_t used_b = 0, used_s = 0;
    std::string b(trim(text.substr(0, comma))), s(trim(text.substr(comma + 1)));
    double wb = std::stod(b, &used_b), ws = std::stod(s, &used_s);
    if (used_b != b.size() || used_s != s.size()) throw std::invalid_argument("trailing");
    Weights w{wb, ws};
    validate_weights(w);
    return w;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::validation, "weights must look like w_b,w_s");
  }
}

std::string_view to_string(Verdict v) { return v == Verdict::improve ? "improve" : "maintain"; }

void validate_assessment(const Assessment& a, const ProfileDatabase& db) {
  std::vector<FieldIssue> issues;
  if (!db.find(a.archetype_id)) issues.push_back({"/archetype_id", "unknown archetype " + a.archetype_id});
  for (const auto& id : a.selected_binary) {
    const auto* s = db.skills().find(id);
    if (!s) {
      issues.push_back({"/selected_binary/" + id, "unknown skill id"});
    } else if (s->category == skillmap::SkillCategory::soft) {
      issues.push_back({"/selected_binary/" + id, "soft skills are rated in soft_levels"});
    }
  }
  for (const auto& [id, level] : a.soft_levels) {
    const auto* s = db.skills().find(id);
    if (!s) {
      issues.push_back({"/soft_levels/" + id, "unknown skill id"});
    } else if (s->category != skillmap::SkillCategory::soft) {
      issues.push_back({"/soft_levels/" + id, "not a soft skill"});
    }
    if (level < 0 || level > profiledb::kMaxLevel) {
      issues.push_back({"/soft_levels/" + id, "level must be an integer in [0, 4]"});
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

namespace {

int level_of(const std::map<std::string, int>& levels, const std::string& id) {
  auto it = levels.find(id);
  return it == levels.end() ? 0 : it->second;
}

}  // namespace

double distance(const std::set<std::string>& selected, const std::map<std::string, int>& soft_levels,
                const JobArchetype& candidate, const Weights& w) {
  validate_weights(w);
  const double binary_term = 1.0 - profiledb::jaccard(selected, candidate.binary_skills);
  double soft_term = 0.0;
  if (!candidate.soft_targets.empty()) {
    double sum = 0.0;
    for (const auto& [id, target] : candidate.soft_targets) {
      sum += std::abs(level_of(soft_levels, id) - target);
    }
    soft_term = sum / (static_cast<double>(profiledb::kMaxLevel) * candidate.soft_targets.size());
  }
  return w.binary * binary_term + w.soft * soft_term;
}

double distance(const Assessment& a, const JobArchetype& candidate, const Weights& w) {
  return distance(a.selected_binary, a.soft_levels, candidate, w);
}

std::vector<Neighbor> nearest_archetypes(const Assessment& a, const ProfileDatabase& db, const Weights& w,
                                         const NearestOptions& options) {
  validate_weights(w);
  struct Scored {
    double d;
    std::size_t size;
    const std::string* id;
  };
  std::vector<Scored> scored;
  for (const auto& c : db.archetypes()) {
    if (!options.include_own && c.archetype_id == a.archetype_id) continue;
    scored.push_back({distance(a, c, w), c.binary_skills.size(), &c.archetype_id});
  }
  if (scored.size() < options.k) {
    throw Error(ErrorKind::precondition, "need " + std::to_string(options.k) + " candidate archetypes, have " +
                                             std::to_string(scored.size()));
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.size != y.size) return x.size > y.size;
    return *x.id < *y.id;
  });
  std::vector<Neighbor> out;
  for (std::size_t i = 0; i < options.k; ++i) out.push_back({*scored[i].id, scored[i].d});
  return out;
}

std::vector<SoftComparison> soft_comparison_series(const Assessment& a, const JobArchetype& archetype,
                                                   const skillmap::Taxonomy& skills) {
  std::vector<SoftComparison> rows;
  for (const auto& [id, target] : archetype.soft_targets) {
    SoftComparison c;
    c.skill_id = id;
    const auto* s = skills.find(id);
    c.label = s ? s->label : id;
    c.current = level_of(a.soft_levels, id);
    c.target = target;
    c.verdict = c.current < c.target ? Verdict::improve : Verdict::maintain;
    rows.push_back(std::move(c));
  }
  std::sort(rows.begin(), rows.end(), [](const SoftComparison& x, const SoftComparison& y) {
    if (x.label != y.label) return x.label < y.label;
    return x.skill_id < y.skill_id;
  });
  return rows;
}

GapReport compute_gap(const Assessment& a, const ProfileDatabase& db, const Weights& w,
                      const NearestOptions& options) {
  validate_weights(w);
  validate_assessment(a, db);
  const auto& own = db.at(a.archetype_id);
  GapReport r;
  r.weights = w;
  std::size_t covered = 0;
  for (const auto& id : own.binary_skills) {
    if (a.selected_binary.contains(id)) {
      ++covered;
      continue;
    }
    const auto& s = db.skills().at(id);
    MissingSkill m{id, s.label, s.green};
    if (s.category == skillmap::SkillCategory::digital) {
      r.missing_digital.push_back(std::move(m));
    } else {
      r.missing_hard.push_back(std::move(m));
    }
  }
  r.coverage = own.binary_skills.empty()
                   ? 1.0
                   : static_cast<double>(covered) / static_cast<double>(own.binary_skills.size());
  r.soft_comparisons = soft_comparison_series(a, own, db.skills());
  r.nearest = nearest_archetypes(a, db, w, options);
  r.distance_to_own = distance(a, own, w);
  return r;
}

namespace {

json to_json(const MissingSkill& m) {
  return {{"skill_id", m.skill_id}, {"label", m.label}, {"green", m.green}};
}

}  // namespace

json to_json(const SoftComparison& c) {
  return {{"skill_id", c.skill_id},
          {"label", c.label},
          {"current", c.current},
          {"target", c.target},
          {"verdict", to_string(c.verdict)}};
}

json to_json(const GapReport& r) {
  json hard = json::array(), digital = json::array(), soft = json::array(), nearest = json::array();
  for (const auto& m : r.missing_hard) hard.push_back(to_json(m));
  for (const auto& m : r.missing_digital) digital.push_back(to_json(m));
  for (const auto& c : r.soft_comparisons) soft.push_back(to_json(c));
  for (const auto& n : r.nearest) nearest.push_back({{"archetype_id", n.archetype_id}, {"distance", n.distance}});
  return {{"missing_binary", {{"hard", hard}, {"digital", digital}}},
          {"soft_comparisons", soft},
          {"coverage", r.coverage},
          {"nearest", nearest},
          {"distance_to_own", r.distance_to_own},
          {"weights", {{"w_b", r.weights.binary}, {"w_s", r.weights.soft}}}};
}

Assessment assessment_from_json(const json& j) {
  std::vector<FieldIssue> issues;
  if (!j.is_object()) throw ValidationError(std::vector<FieldIssue>{{"", "assessment must be a JSON object"}});
  Assessment a;
  if (!j.contains("archetype_id") || !j["archetype_id"].is_string()) {
    issues.push_back({"/archetype_id", "must be a string"});
  } else {
    a.archetype_id = j["archetype_id"].get<std::string>();
  }
  if (!j.contains("selected_binary") || !j["selected_binary"].is_array()) {
    issues.push_back({"/selected_binary", "must be an array of skill ids"});
  } else {
    for (std::size_t i = 0; i < j["selected_binary"].size(); ++i) {
      const auto& s = j["selected_binary"][i];
      if (!s.is_string()) {
        issues.push_back({"/selected_binary/" + std::to_string(i), "must be a string"});
      } else {
        a.selected_binary.insert(s.get<std::string>());
      }
    }
  }
  if (j.contains("soft_levels")) {
    if (!j["soft_levels"].is_object()) {
      issues.push_back({"/soft_levels", "must be an object of skill id to level"});
    } else {
      for (const auto& [id, level] : j["soft_levels"].items()) {
        if (!level.is_number_integer()) {
          issues.push_back({"/soft_levels/" + id, "level must be an integer in [0, 4]"});
        } else {
          a.soft_levels[id] = level.get<int>();
        }
      }
    }
  }
  if (j.contains("assessment_id") && j["assessment_id"].is_string()) a.assessment_id = j["assessment_id"];
  if (j.contains("created_at") && j["created_at"].is_string()) a.created_at = j["created_at"];
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return a;
}

json to_json(const Assessment& a) {
  json soft = json::object();
  for (const auto& [id, level] : a.soft_levels) soft[id] = level;
  return {{"assessment_id", a.assessment_id},
          {"archetype_id", a.archetype_id},
          {"selected_binary", a.selected_binary},
          {"soft_levels", soft},
          {"created_at", a.created_at}};
}

}  // namespace wprof::gapengine
