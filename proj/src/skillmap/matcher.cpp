#include "wprof/skillmap/matcher.h"

#include <algorithm>

#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/common/parallel.h"

namespace wprof::skillmap {

using nlohmann::json;

std::string_view to_string(Review r) {
  switch (r) {
    case Review::automatic: return "auto";
    case Review::approved: return "approved";
    case Review::rejected: return "rejected";
  }
  return "auto";
}

std::optional<Review> parse_review(std::string_view s) {
  if (s == "auto") return Review::automatic;
  if (s == "approved") return Review::approved;
  if (s == "rejected") return Review::rejected;
  return std::nullopt;
}

std::size_t best_index(const std::vector<double>& scores, const std::vector<std::string>& skill_ids) {
  if (scores.empty() || scores.size() != skill_ids.size()) {
    throw Error(ErrorKind::precondition, "score row does not match the skill list");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best] || (scores[i] == scores[best] && skill_ids[i] < skill_ids[best])) {
      best = i;
    }
  }
  return best;
}

SkillIndex index_skills(const Taxonomy& taxonomy, const EmbeddingProvider& provider) {
  SkillIndex idx;
  for (const auto& s : taxonomy.skills()) {
    if (s.category == SkillCategory::soft) continue;
    auto v = provider.embed(s.description);
    if (is_zero(v)) continue;
    idx.skill_ids.push_back(s.skill_id);
    idx.vectors.push_back(std::move(v));
  }
  if (idx.skill_ids.empty()) {
    throw Error(ErrorKind::precondition, "no hard or digital skill with a comparable description");
  }
  return idx;
}

std::optional<SkillMatch> match_vector(const Embedding& sentence_vec, const SkillIndex& skills,
                                       double threshold) {
  if (is_zero(sentence_vec)) return std::nullopt;
  std::vector<double> scores(skills.vectors.size());
  for (std::size_t j = 0; j < scores.size(); ++j) scores[j] = cosine(sentence_vec, skills.vectors[j]);
  auto best = best_index(scores, skills.skill_ids);
  SkillMatch m;
  m.skill_id = skills.skill_ids[best];
  m.score = scores[best];
  m.kept = m.score > threshold;
  return m;
}

std::vector<SkillMatch> match_sentences_to_skills(const std::vector<corpus::Sentence>& sentences,
                                                  const Taxonomy& taxonomy,
                                                  const EmbeddingProvider& provider,
                                                  double threshold) {
  const auto skills = index_skills(taxonomy, provider);
  std::vector<std::optional<SkillMatch>> slots(sentences.size());
  parallel_for(sentences.size(), [&](std::size_t i) {
    slots[i] = match_vector(provider.embed(sentences[i].text), skills, threshold);
    if (slots[i]) slots[i]->sentence = sentences[i].ref();
  });
  std::vector<SkillMatch> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SkillMatch& a, const SkillMatch& b) { return a.sentence < b.sentence; });
  return out;
}

SkillOverrides parse_skill_overrides(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse, "skill overrides must be a JSON array");
  SkillOverrides out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    const std::string where = "skill override " + std::to_string(i);
    if (!e.is_object() || !e.contains("skill_id") || !e.contains("review")) {
      throw Error(ErrorKind::parse, where + ": needs skill_id and review");
    }
    auto r = parse_review(e["review"].get<std::string>());
    if (!r) throw Error(ErrorKind::parse, where + ": unknown review value");
    out[e["skill_id"].get<std::string>()] = *r;
  }
  return out;
}

std::vector<DerivedSkill> derive_skill_set(const std::vector<SkillMatch>& matches,
                                           const SkillOverrides& overrides,
                                           const Taxonomy& taxonomy) {
  for (const auto& [id, review] : overrides) {
    if (!taxonomy.contains(id)) throw Error(ErrorKind::not_found, "unknown skill id in override: " + id);
  }
  std::map<std::string, std::size_t> evidence;
  for (const auto& m : matches) {
    if (m.kept && m.review != Review::rejected) ++evidence[m.skill_id];
  }
  std::vector<DerivedSkill> out;
  for (const auto& [id, n] : evidence) {
    auto it = overrides.find(id);
    Review review = it == overrides.end() ? Review::automatic : it->second;
    if (review == Review::rejected) continue;
    out.push_back({id, n, review});
  }
  std::stable_sort(out.begin(), out.end(), [](const DerivedSkill& a, const DerivedSkill& b) {
    return a.evidence_count > b.evidence_count;
  });
  return out;
}

json to_json(const SkillMatch& m) {
  return {{"doc_id", m.sentence.doc_id},
          {"section", corpus::to_string(m.sentence.section)},
          {"index", m.sentence.index},
          {"skill_id", m.skill_id},
          {"score", m.score},
          {"kept", m.kept},
          {"review", to_string(m.review)}};
}

SkillMatch match_from_json(const json& j) {
  SkillMatch m;
  m.sentence.doc_id = j.at("doc_id").get<std::string>();
  auto section = corpus::parse_section(j.at("section").get<std::string>());
  if (!section) throw Error(ErrorKind::parse, "unknown section in skill match");
  m.sentence.section = *section;
  m.sentence.index = j.at("index").get<std::size_t>();
  m.skill_id = j.at("skill_id").get<std::string>();
  m.score = j.at("score").get<double>();
  m.kept = j.at("kept").get<bool>();
  auto review = parse_review(j.value("review", "auto"));
  if (!review) throw Error(ErrorKind::parse, "unknown review value in skill match");
  m.review = *review;
  return m;
}

json to_json(const DerivedSkill& d) {
  return {{"skill_id", d.skill_id}, {"evidence_count", d.evidence_count}, {"review", to_string(d.review)}};
}

DerivedSkill derived_skill_from_json(const json& j) {
  DerivedSkill d;
  d.skill_id = j.at("skill_id").get<std::string>();
  d.evidence_count = j.at("evidence_count").get<std::size_t>();
  d.review = parse_review(j.value("review", "auto")).value_or(Review::automatic);
  return d;
}

std::string matches_jsonl(const std::vector<SkillMatch>& matches) {
  std::string out;
  for (const auto& m : matches) {
    out += to_json(m).dump();
    out += '\n';
  }
  return out;
}

std::vector<SkillMatch> parse_matches_jsonl(std::string_view text) {
  std::vector<SkillMatch> out;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(match_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace wprof::skillmap
