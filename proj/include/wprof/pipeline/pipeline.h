#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wprof/corpus/corpus.h"
#include "wprof/gapengine/gap.h"
#include "wprof/patentset/patent_set.h"
#include "wprof/pipeline/config.h"
#include "wprof/profiledb/database.h"
#include "wprof/skillmap/embedding.h"

namespace wprof::pipeline {

// Artifact file names inside the output directory.
namespace artifact {
inline constexpr const char* kCorpus = "corpus.json";
inline constexpr const char* kPatentSet = "patent_set.json";
inline constexpr const char* kTechnologies = "technologies.json";
inline constexpr const char* kTrends = "trends.json";
inline constexpr const char* kTrendsCsv = "trends.csv";
inline constexpr const char* kSharesCsv = "shares.csv";
inline constexpr const char* kSkillMatches = "skill_matches.jsonl";
inline constexpr const char* kSkills = "skills.json";
inline constexpr const char* kProfileDb = "profile_db.json";
inline constexpr const char* kExportDir = "export";
}  // namespace artifact

struct StageOutcome {
  std::string stage;
  bool skipped = false;  // inputs and parameters unchanged
  std::vector<fs::path> artifacts;
};

nlohmann::json to_json(const StageOutcome& o);

StageOutcome run_ingest(const PipelineConfig& c);
StageOutcome run_query(const PipelineConfig& c);
StageOutcome run_extract(const PipelineConfig& c);
StageOutcome run_trends(const PipelineConfig& c);
StageOutcome run_map_skills(const PipelineConfig& c);
StageOutcome run_build_db(const PipelineConfig& c);
StageOutcome run_export(const PipelineConfig& c, const fs::path& db_path = {});

// ingest -> query -> extract -> trends -> map-skills -> build-db
std::vector<StageOutcome> run_all(const PipelineConfig& c);

// Offline assessment: {assessment_id, report}. A missing assessment_id is
// derived from the assessment content.
nlohmann::json assess(const nlohmann::json& assessment, const profiledb::ProfileDatabase& db,
                      const gapengine::Weights& weights = {});

// Predecessor artifacts, with the stage that produces each named on error.
corpus::Corpus load_corpus_artifact(const fs::path& output_dir);
patentset::PatentSet load_patent_set_artifact(const fs::path& output_dir);

std::unique_ptr<skillmap::EmbeddingProvider> make_provider(const PipelineConfig& c);

}  // namespace wprof::pipeline
