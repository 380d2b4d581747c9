#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "wprof/gapengine/gap.h"
#include "wprof/profiledb/clustering.h"
#include "wprof/trends/trends.h"

namespace wprof::pipeline {

namespace fs = std::filesystem;

struct PipelineConfig {
  fs::path output_dir = "wprof-out";

  fs::path corpus;
  fs::path ontology;
  fs::path labels;
  fs::path seeds;
  fs::path key_terms;
  fs::path synonyms;
  fs::path curation;
  fs::path taxonomy;
  fs::path embeddings;
  fs::path skill_overrides;
  fs::path archetypes;

  std::uint64_t seed = 42;
  // Precision sample size; defaults to min(20, |set|) when labels are given.
  std::optional<std::size_t> sample_size;
  double threshold = 0.7;
  trends::MaturityParams maturity;
  bool count_applications = false;
  gapengine::Weights weights;
  std::size_t clusters = 3;
  profiledb::ClusterMetric cluster_metric = profiledb::ClusterMetric::jaccard;

  bool force = false;
};

// Reads a JSON config. Relative paths resolve against the config file's
// directory; unknown keys are rejected so typos do not go unnoticed.
PipelineConfig load_config(const fs::path& path);
PipelineConfig config_from_json(const nlohmann::json& j, const fs::path& base_dir = {});

// Range checks on numeric parameters; throws ValidationError.
void validate_config(const PipelineConfig& c);

}  // namespace wprof::pipeline
