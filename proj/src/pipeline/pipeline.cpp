#include "wprof/pipeline/pipeline.h"

#include "wprof/common/digest.h"
#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/common/version.h"
#include "wprof/corpus/segmenter.h"
#include "wprof/patentset/query.h"
#include "wprof/patentset/refinement.h"
#include "wprof/service/api.h"
#include "wprof/skillmap/matcher.h"
#include "wprof/techner/clusters.h"
#include "wprof/techner/hearst.h"
#include "wprof/techner/key_terms.h"
#include "wprof/trends/trends.h"

namespace wprof::pipeline {

using nlohmann::json;

namespace {

// Provenance shared by every artifact; stored under "meta" (or the
// database's "provenance").
struct Meta {
  std::string stage;
  json inputs = json::object();
  json params = json::object();

  void input_file(const std::string& name, const fs::path& p) {
    if (!fs::exists(p)) throw Error(ErrorKind::io, name + " not found: " + p.string());
    inputs[name] = sha256_file(p);
  }

  json to_json(const std::map<std::string, std::string>& outputs = {}) const {
    json out = json::object();
    for (const auto& [k, v] : outputs) out[k] = v;
    return {{"stage", stage},     {"tool_version", tool_version()}, {"created_at", patentset::reproducible_timestamp()},
            {"inputs", inputs},   {"params", params},               {"outputs", out}};
  }
};

fs::path out_path(const PipelineConfig& c, const char* name) { return c.output_dir / name; }

const json* meta_of(const json& j) {
  if (j.contains("meta")) return &j["meta"];
  if (j.contains("provenance")) return &j["provenance"];
  return nullptr;
}

// True when the stage's main artifact records identical inputs, parameters
// and tool version, and every side output still has its recorded digest.
bool up_to_date(const PipelineConfig& c, const fs::path& main, const Meta& meta) {
  if (c.force || !fs::exists(main)) return false;
  json existing;
  try {
    existing = read_json_file(main);
  } catch (const Error&) {
    return false;
  }
  const json* m = meta_of(existing);
  if (!m || m->value("tool_version", "") != tool_version() || m->value("inputs", json()) != meta.inputs ||
      m->value("params", json()) != meta.params) {
    return false;
  }
  const json outputs = m->value("outputs", json::object());
  for (const auto& [name, digest] : outputs.items()) {
    auto p = main.parent_path() / name;
    if (!fs::exists(p) || sha256_file(p) != digest.get<std::string>()) return false;
  }
  return true;
}

const fs::path& require_input(const fs::path& p, const char* flag) {
  if (p.empty()) throw Error(ErrorKind::validation, std::string("missing required input --") + flag);
  return p;
}

json require_artifact(const PipelineConfig& c, const char* name, const std::string& stage,
                      const std::string& producer) {
  auto p = out_path(c, name);
  if (!fs::exists(p)) {
    throw Error(ErrorKind::precondition,
                stage + " requires " + producer + " output (" + p.string() + "); run `wprof " + producer + "` first");
  }
  return read_json_file(p);
}

StageOutcome written(const std::string& stage, std::vector<fs::path> files) {
  return {stage, false, std::move(files)};
}

StageOutcome skipped(const std::string& stage, std::vector<fs::path> files) {
  return {stage, true, std::move(files)};
}

corpus::Corpus corpus_from_artifact(const json& j) {
  std::vector<corpus::PatentDocument> docs;
  for (const auto& d : j.at("documents")) docs.push_back(corpus::document_from_json(d));
  return corpus::Corpus(std::move(docs));
}

std::vector<corpus::Sentence> set_sentences(const corpus::Corpus& corpus, const patentset::PatentSet& set) {
  std::vector<corpus::Sentence> out;
  for (const auto& id : set.doc_ids) {
    auto s = corpus::segment_sentences(corpus.at(id));
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return out;
}

std::vector<std::string> read_id_list(const fs::path& p) {
  std::vector<std::string> ids;
  for (const auto& line : parse_entry_lines(read_file(p))) {
    auto id = std::string(trim(line.substr(0, line.find(','))));
    if (id == "doc_id") continue;
    ids.push_back(id);
  }
  return ids;
}

}  // namespace

json to_json(const StageOutcome& o) {
  json files = json::array();
  for (const auto& f : o.artifacts) files.push_back(f.string());
  return {{"stage", o.stage}, {"status", o.skipped ? "up-to-date" : "written"}, {"artifacts", files}};
}

corpus::Corpus load_corpus_artifact(const fs::path& output_dir) {
  PipelineConfig c;
  c.output_dir = output_dir;
  return corpus_from_artifact(require_artifact(c, artifact::kCorpus, "this stage", "ingest"));
}

patentset::PatentSet load_patent_set_artifact(const fs::path& output_dir) {
  PipelineConfig c;
  c.output_dir = output_dir;
  return patentset::patent_set_from_json(
      require_artifact(c, artifact::kPatentSet, "this stage", "query").at("patent_set"));
}

std::unique_ptr<skillmap::EmbeddingProvider> make_provider(const PipelineConfig& c) {
  if (!c.embeddings.empty()) {
    return std::make_unique<skillmap::FileEmbeddingProvider>(skillmap::FileEmbeddingProvider::load(c.embeddings));
  }
  return std::make_unique<skillmap::HashedBagProvider>();
}

StageOutcome run_ingest(const PipelineConfig& c) {
  const auto main = out_path(c, artifact::kCorpus);
  Meta meta{"ingest"};
  meta.input_file("corpus", require_input(c.corpus, "corpus"));
  if (up_to_date(c, main, meta)) return skipped("ingest", {main});

  auto result = corpus::ingest_corpus(c.corpus);
  json docs = json::array();
  for (const auto& d : result.corpus.documents()) docs.push_back(corpus::to_json(d));
  json out = {{"meta", meta.to_json()},
              {"documents", docs},
              {"families", result.corpus.family_count()},
              {"warnings", result.warnings}};
  write_file_atomic(main, dump_canonical(out));
  return written("ingest", {main});
}

StageOutcome run_query(const PipelineConfig& c) {
  const auto main = out_path(c, artifact::kPatentSet);
  auto corpus_json = require_artifact(c, artifact::kCorpus, "query", "ingest");
  Meta meta{"query"};
  meta.input_file("corpus.json", out_path(c, artifact::kCorpus));
  meta.input_file("ontology", require_input(c.ontology, "ontology"));
  if (!c.labels.empty()) meta.input_file("labels", c.labels);
  if (!c.seeds.empty()) meta.input_file("seeds", c.seeds);
  meta.params = {{"seed", c.seed}};
  if (c.sample_size) meta.params["sample_size"] = *c.sample_size;
  if (up_to_date(c, main, meta)) return skipped("query", {main});

  auto corpus = corpus_from_artifact(corpus_json);
  auto ontology = patentset::compile_query_file(c.ontology);
  auto set = patentset::execute_query(corpus, ontology);
  json out = {{"meta", meta.to_json()}, {"query", patentset::to_json(ontology)}};
  json warnings = json::array();
  json refinement = nullptr;
  if (!c.labels.empty()) {
    auto labels = patentset::parse_labels_csv(read_file(c.labels));
    std::size_t k = c.sample_size.value_or(std::min<std::size_t>(20, set.doc_ids.size()));
    set.precision = patentset::estimate_precision(set, k, labels, c.seed);
    try {
      refinement = patentset::to_json(patentset::refinement_report(set, labels, corpus));
    } catch (const Error& e) {
      warnings.push_back(std::string("refinement skipped: ") + e.what());
    }
  }
  if (!c.seeds.empty()) set.recall = patentset::estimate_recall(set, read_id_list(c.seeds), corpus);
  out["patent_set"] = patentset::to_json(set);
  out["refinement"] = refinement;
  out["warnings"] = warnings;
  write_file_atomic(main, dump_canonical(out));
  return written("query", {main});
}

StageOutcome run_extract(const PipelineConfig& c) {
  const auto main = out_path(c, artifact::kTechnologies);
  auto corpus_json = require_artifact(c, artifact::kCorpus, "extract", "ingest");
  auto set_json = require_artifact(c, artifact::kPatentSet, "extract", "query");
  Meta meta{"extract"};
  meta.input_file("corpus.json", out_path(c, artifact::kCorpus));
  meta.input_file("patent_set.json", out_path(c, artifact::kPatentSet));
  if (!c.key_terms.empty()) meta.input_file("key_terms", c.key_terms);
  if (!c.synonyms.empty()) meta.input_file("synonyms", c.synonyms);
  if (!c.curation.empty()) meta.input_file("curation", c.curation);
  if (up_to_date(c, main, meta)) return skipped("extract", {main});

  auto corpus = corpus_from_artifact(corpus_json);
  auto set = patentset::patent_set_from_json(set_json.at("patent_set"));
  auto terms = c.key_terms.empty() ? techner::KeyTermSet::defaults()
                                   : techner::KeyTermSet::from_base_text(read_file(c.key_terms));
  json warnings = json::array();
  if (!c.synonyms.empty()) {
    auto expanded = techner::expand_key_terms(terms, read_file(c.synonyms));
    terms = std::move(expanded.terms);
    for (auto& w : expanded.warnings) warnings.push_back(std::move(w));
  }
  auto mentions = techner::extract_all(set_sentences(corpus, set), terms);
  auto clusters = techner::cluster_technologies(
      mentions, [&](std::string_view doc) { return corpus.at(doc).family_id; });
  if (!c.curation.empty()) {
    clusters = techner::apply_curation(std::move(clusters), techner::parse_curation(read_json_file(c.curation)));
  }
  json mj = json::array(), cj = json::array();
  for (const auto& m : mentions) mj.push_back(techner::to_json(m));
  for (const auto& cl : clusters) cj.push_back(techner::to_json(cl));
  json out = {{"meta", meta.to_json()},
              {"key_terms", techner::to_json(terms)},
              {"mentions", mj},
              {"clusters", cj},
              {"warnings", warnings}};
  write_file_atomic(main, dump_canonical(out));
  return written("extract", {main});
}

StageOutcome run_trends(const PipelineConfig& c) {
  const auto main = out_path(c, artifact::kTrends);
  auto tech_json = require_artifact(c, artifact::kTechnologies, "trends", "extract");
  auto corpus_json = require_artifact(c, artifact::kCorpus, "trends", "ingest");
  auto set_json = require_artifact(c, artifact::kPatentSet, "trends", "query");
  Meta meta{"trends"};
  meta.input_file("corpus.json", out_path(c, artifact::kCorpus));
  meta.input_file("patent_set.json", out_path(c, artifact::kPatentSet));
  meta.input_file("technologies.json", out_path(c, artifact::kTechnologies));
  meta.params = {{"trend_window", c.maturity.window},
                 {"min_support", c.maturity.min_support},
                 {"decline_ratio", c.maturity.decline_ratio},
                 {"count_applications", c.count_applications}};
  if (up_to_date(c, main, meta)) {
    return skipped("trends", {main, out_path(c, artifact::kTrendsCsv), out_path(c, artifact::kSharesCsv)});
  }

  auto corpus = corpus_from_artifact(corpus_json);
  auto set = patentset::patent_set_from_json(set_json.at("patent_set"));
  std::vector<techner::TechnologyMention> mentions;
  for (const auto& m : tech_json.at("mentions")) mentions.push_back(techner::mention_from_json(m));
  std::vector<techner::TechnologyCluster> clusters;
  for (const auto& cl : tech_json.at("clusters")) clusters.push_back(techner::cluster_from_json(cl));

  trends::MentionIndex index(mentions);
  auto series = trends::compute_trends(clusters, index, set, corpus, c.maturity, {c.count_applications});
  json shares = json::array();
  std::string shares_csv = trends::shares_csv({});
  if (!set.family_ids.empty()) {
    auto rows = trends::technology_shares(clusters, index, set, corpus);
    for (const auto& r : rows) shares.push_back(trends::to_json(r));
    shares_csv = trends::shares_csv(rows);
  }
  const int last = trends::reference_year(set, corpus);
  int first = last;
  for (const auto& f : set.family_ids) first = std::min(first, corpus.family_earliest_year(f));
  const auto trends_csv = trends::trends_csv(series, first, last);
  write_file_atomic(out_path(c, artifact::kTrendsCsv), trends_csv);
  write_file_atomic(out_path(c, artifact::kSharesCsv), shares_csv);

  json sj = json::array();
  for (const auto& s : series) sj.push_back(trends::to_json(s));
  json out = {{"meta", meta.to_json({{artifact::kTrendsCsv, sha256_hex(trends_csv)},
                                     {artifact::kSharesCsv, sha256_hex(shares_csv)}})},
              {"reference_year", last},
              {"total_families", set.family_ids.size()},
              {"series", sj},
              {"shares", shares}};
  write_file_atomic(main, dump_canonical(out));
  return written("trends", {main, out_path(c, artifact::kTrendsCsv), out_path(c, artifact::kSharesCsv)});
}

StageOutcome run_map_skills(const PipelineConfig& c) {
  const auto main = out_path(c, artifact::kSkills);
  const auto matches_path = out_path(c, artifact::kSkillMatches);
  auto corpus_json = require_artifact(c, artifact::kCorpus, "map-skills", "ingest");
  auto set_json = require_artifact(c, artifact::kPatentSet, "map-skills", "query");
  Meta meta{"map-skills"};
  meta.input_file("corpus.json", out_path(c, artifact::kCorpus));
  meta.input_file("patent_set.json", out_path(c, artifact::kPatentSet));
  meta.input_file("taxonomy", require_input(c.taxonomy, "taxonomy"));
  if (!c.embeddings.empty()) meta.input_file("embeddings", c.embeddings);
  if (!c.skill_overrides.empty()) meta.input_file("skill_overrides", c.skill_overrides);
  auto provider = make_provider(c);
  meta.params = {{"threshold", c.threshold}, {"provider", provider->name()}};
  if (up_to_date(c, main, meta)) return skipped("map-skills", {main, matches_path});

  auto corpus = corpus_from_artifact(corpus_json);
  auto set = patentset::patent_set_from_json(set_json.at("patent_set"));
  auto taxonomy = skillmap::parse_taxonomy_csv(read_file(c.taxonomy));
  auto sentences = set_sentences(corpus, set);
  auto matches = skillmap::match_sentences_to_skills(sentences, taxonomy, *provider, c.threshold);
  skillmap::SkillOverrides overrides;
  if (!c.skill_overrides.empty()) overrides = skillmap::parse_skill_overrides(read_json_file(c.skill_overrides));
  for (auto& m : matches) {
    auto it = overrides.find(m.skill_id);
    if (it != overrides.end()) m.review = it->second;
  }
  auto derived = skillmap::derive_skill_set(matches, overrides, taxonomy);
  const auto jsonl = skillmap::matches_jsonl(matches);
  write_file_atomic(matches_path, jsonl);

  std::size_t kept = 0;
  for (const auto& m : matches) kept += m.kept ? 1 : 0;
  json dj = json::array();
  for (const auto& d : derived) {
    auto item = skillmap::to_json(d);
    const auto& rec = taxonomy.at(d.skill_id);
    item["label"] = rec.label;
    item["category"] = skillmap::to_string(rec.category);
    item["green"] = rec.green;
    dj.push_back(std::move(item));
  }
  json out = {{"meta", meta.to_json({{artifact::kSkillMatches, sha256_hex(jsonl)}})},
              {"sentences", sentences.size()},
              {"matched_sentences", matches.size()},
              {"kept_matches", kept},
              {"derived", dj}};
  write_file_atomic(main, dump_canonical(out));
  return written("map-skills", {main, matches_path});
}

StageOutcome run_build_db(const PipelineConfig& c) {
  const auto main = out_path(c, artifact::kProfileDb);
  auto skills_json = require_artifact(c, artifact::kSkills, "build-db", "map-skills");
  Meta meta{"build-db"};
  meta.input_file("skills.json", out_path(c, artifact::kSkills));
  meta.input_file("taxonomy", require_input(c.taxonomy, "taxonomy"));
  meta.input_file("archetypes", require_input(c.archetypes, "archetypes"));
  if (!c.embeddings.empty()) meta.input_file("embeddings", c.embeddings);
  meta.params = {{"clusters", c.clusters},
                 {"cluster_metric", c.cluster_metric == profiledb::ClusterMetric::jaccard ? "jaccard" : "embedding"}};
  if (up_to_date(c, main, meta)) return skipped("build-db", {main});

  auto taxonomy = skillmap::parse_taxonomy_csv(read_file(c.taxonomy));
  auto archetypes = profiledb::parse_archetypes(read_json_file(c.archetypes));
  std::vector<skillmap::DerivedSkill> evidence;
  for (const auto& d : skills_json.at("derived")) evidence.push_back(skillmap::derived_skill_from_json(d));
  std::unique_ptr<skillmap::EmbeddingProvider> provider;
  if (c.cluster_metric == profiledb::ClusterMetric::embedding) provider = make_provider(c);
  profiledb::BuildOptions options{c.clusters, c.cluster_metric, provider.get()};
  auto db = profiledb::build_profile_db(std::move(archetypes), taxonomy, evidence, options, meta.to_json());
  write_file_atomic(main, dump_canonical(profiledb::to_json(db)));
  return written("build-db", {main});
}

StageOutcome run_export(const PipelineConfig& c, const fs::path& db_path) {
  const fs::path src = db_path.empty() ? out_path(c, artifact::kProfileDb) : db_path;
  if (!fs::exists(src)) {
    throw Error(ErrorKind::precondition, "export requires build-db output (" + src.string() +
                                             "); run `wprof build-db` first");
  }
  auto db = std::make_shared<const profiledb::ProfileDatabase>(profiledb::load_database(src));
  service::Api api(db, std::make_shared<service::MemoryStore>());
  const fs::path dir = c.output_dir / artifact::kExportDir;
  std::vector<fs::path> files;
  auto emit = [&](const fs::path& rel, const std::string& body) {
    write_file_atomic(dir / rel, body);
    files.push_back(dir / rel);
  };
  emit("profile_db.json", dump_canonical(profiledb::to_json(*db)));
  emit("archetypes.json", api.handle({"GET", "/api/archetypes", {}, ""}).body);
  json manifest = {{"tool_version", tool_version()}, {"database_version", db->version()}, {"checklists", json::array()}};
  for (const auto& a : db->archetypes()) {
    auto rel = fs::path("checklists") / (a.archetype_id + ".json");
    emit(rel, api.handle({"GET", "/api/archetypes/" + a.archetype_id + "/checklist", {}, ""}).body);
    manifest["checklists"].push_back(rel.generic_string());
  }
  emit("manifest.json", dump_canonical(manifest));
  return written("export", files);
}

std::vector<StageOutcome> run_all(const PipelineConfig& c) {
  return {run_ingest(c), run_query(c), run_extract(c), run_trends(c), run_map_skills(c), run_build_db(c)};
}

json assess(const json& assessment, const profiledb::ProfileDatabase& db, const gapengine::Weights& weights) {
  auto a = gapengine::assessment_from_json(assessment);
  if (a.assessment_id.empty()) a.assessment_id = service::derived_assessment_id(a);
  auto report = gapengine::compute_gap(a, db, weights);
  return service::assessment_result(a.assessment_id, report);
}

}  // namespace wprof::pipeline
