#include "wprof/pipeline/config.h"

#include <cmath>

#include "wprof/common/error.h"
#include "wprof/common/io.h"

namespace wprof::pipeline {

using nlohmann::json;

PipelineConfig load_config(const fs::path& path) {
  return config_from_json(read_json_file(path), path.parent_path());
}

PipelineConfig config_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "config must be a JSON object");
  PipelineConfig c;
  auto resolve = [&](const json& v) {
    fs::path p = v.get<std::string>();
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  std::vector<FieldIssue> issues;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "output_dir") c.output_dir = resolve(v);
      else if (key == "corpus") c.corpus = resolve(v);
      else if (key == "ontology") c.ontology = resolve(v);
      else if (key == "labels") c.labels = resolve(v);
      else if (key == "seeds") c.seeds = resolve(v);
      else if (key == "key_terms") c.key_terms = resolve(v);
      else if (key == "synonyms") c.synonyms = resolve(v);
      else if (key == "curation") c.curation = resolve(v);
      else if (key == "taxonomy") c.taxonomy = resolve(v);
      else if (key == "embeddings") c.embeddings = resolve(v);
      else if (key == "skill_overrides") c.skill_overrides = resolve(v);
      else if (key == "archetypes") c.archetypes = resolve(v);
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "sample_size") c.sample_size = v.get<std::size_t>();
      else if (key == "threshold") c.threshold = v.get<double>();
      else if (key == "trend_window") c.maturity.window = v.get<int>();
      else if (key == "min_support") c.maturity.min_support = v.get<std::size_t>();
      else if (key == "decline_ratio") c.maturity.decline_ratio = v.get<double>();
      else if (key == "count_applications") c.count_applications = v.get<bool>();
      else if (key == "weights") c.weights = {v.at(0).get<double>(), v.at(1).get<double>()};
      else if (key == "clusters") c.clusters = v.get<std::size_t>();
      else if (key == "cluster_metric") {
        auto m = v.get<std::string>();
        if (m == "jaccard") c.cluster_metric = profiledb::ClusterMetric::jaccard;
        else if (m == "embedding") c.cluster_metric = profiledb::ClusterMetric::embedding;
        else issues.push_back({"/" + key, "must be jaccard or embedding"});
      } else {
        issues.push_back({"/" + key, "unknown config key"});
      }
    } catch (const json::exception&) {
      issues.push_back({"/" + key, "wrong type"});
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return c;
}

void validate_config(const PipelineConfig& c) {
  std::vector<FieldIssue> issues;
  if (!std::isfinite(c.threshold) || c.threshold < -1.0 || c.threshold > 1.0) {
    issues.push_back({"threshold", "must be in [-1, 1]"});
  }
  if (c.maturity.window < 1 || c.maturity.window > 100) issues.push_back({"trend_window", "must be in [1, 100]"});
  if (!(c.maturity.decline_ratio >= 0.0 && c.maturity.decline_ratio <= 1.0)) {
    issues.push_back({"decline_ratio", "must be in [0, 1]"});
  }
  if (c.clusters < 1) issues.push_back({"clusters", "must be at least 1"});
  if (c.sample_size && *c.sample_size == 0) issues.push_back({"sample_size", "must be positive"});
  try {
    gapengine::validate_weights(c.weights);
  } catch (const Error& e) {
    issues.push_back({"weights", e.what()});
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace wprof::pipeline
