#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/techner/hearst.h"

namespace wprof::techner {

enum class CurationState { automatic, approved, rejected, merged };

struct TechnologyCluster {
  std::string cluster_id;
  std::string label;
  std::set<std::string> member_lemmas;
  std::string hypernym_lemma;
  std::size_t mention_count = 0;
  std::size_t family_count = 0;
  std::set<std::string> family_ids;
  CurationState curation = CurationState::automatic;
  std::optional<std::string> merged_into;

  // Rejected and merged clusters take no part in trends or shares.
  bool active() const {
    return curation != CurationState::rejected && curation != CurationState::merged;
  }
};

using FamilyLookup = std::function<std::string(std::string_view doc_id)>;

// Groups mentions by lemma, then attaches each multi-token lemma to the
// longest proper token suffix (two tokens or more) that is itself a mentioned
// lemma under the same hypernym. "plate heat exchanger" joins "heat
// exchanger"; "light sensor" and "pressure sensor" stay apart. When no family
// lookup is given the doc_id stands in for the family.
std::vector<TechnologyCluster> cluster_technologies(const std::vector<TechnologyMention>& mentions,
                                                    const FamilyLookup& family_of = {});

struct CurationDirective {
  enum class Action { approve, reject, merge };
  Action action = Action::approve;
  std::string target;
  std::string into;
};

std::vector<CurationDirective> parse_curation(const nlohmann::json& j);

std::vector<TechnologyCluster> apply_curation(std::vector<TechnologyCluster> clusters,
                                              const std::vector<CurationDirective>& directives);

// Cluster that owns a lemma among the active clusters, if any.
const TechnologyCluster* find_active_cluster(const std::vector<TechnologyCluster>& clusters,
                                             std::string_view lemma);

nlohmann::json to_json(const TechnologyCluster& c);
TechnologyCluster cluster_from_json(const nlohmann::json& j);

}  // namespace wprof::techner
