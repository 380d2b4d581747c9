#include "wprof/techner/clusters.h"

#include <algorithm>
#include <map>

#include "wprof/common/error.h"

namespace wprof::techner {

using nlohmann::json;

namespace {

std::vector<std::string> split_tokens(const std::string& lemma) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= lemma.size()) {
    auto sp = lemma.find(' ', start);
    if (sp == std::string::npos) sp = lemma.size();
    if (sp > start) out.push_back(lemma.substr(start, sp - start));
    start = sp + 1;
  }
  return out;
}

std::string join_tail(const std::vector<std::string>& toks, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (i > from) out.push_back(' ');
    out += toks[i];
  }
  return out;
}

std::string slug(const std::string& lemma) {
  std::string out = lemma;
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

struct LemmaGroup {
  std::size_t mentions = 0;
  std::map<std::string, std::size_t> hypernyms;
  std::set<std::string> families;
  std::string hypernym;  // most frequent, ties lexicographic
  std::string parent;    // empty for roots
};

}  // namespace

std::vector<TechnologyCluster> cluster_technologies(const std::vector<TechnologyMention>& mentions,
                                                    const FamilyLookup& family_of) {
  std::map<std::string, LemmaGroup> groups;
  for (const auto& m : mentions) {
    auto& g = groups[m.lemma];
    g.mentions++;
    g.hypernyms[m.hypernym_lemma]++;
    g.families.insert(family_of ? family_of(m.location.doc_id) : m.location.doc_id);
  }
  for (auto& [lemma, g] : groups) {
    std::size_t best = 0;
    for (const auto& [h, n] : g.hypernyms) {
      if (n > best) {
        best = n;
        g.hypernym = h;
      }
    }
  }
  for (auto& [lemma, g] : groups) {
    auto toks = split_tokens(lemma);
    for (std::size_t drop = 1; toks.size() >= drop + 2; ++drop) {
      auto suffix = join_tail(toks, drop);
      auto it = groups.find(suffix);
      if (it != groups.end() && it->second.hypernym == g.hypernym) {
        g.parent = suffix;
        break;
      }
    }
  }
  auto root_of = [&](std::string lemma) {
    while (!groups.at(lemma).parent.empty()) lemma = groups.at(lemma).parent;
    return lemma;
  };

  std::map<std::string, TechnologyCluster> by_root;
  for (const auto& [lemma, g] : groups) {
    auto root = root_of(lemma);
    auto& c = by_root[root];
    c.cluster_id = slug(root);
    c.hypernym_lemma = groups.at(root).hypernym;
    c.member_lemmas.insert(lemma);
    c.mention_count += g.mentions;
    c.family_ids.insert(g.families.begin(), g.families.end());
  }

  std::vector<TechnologyCluster> out;
  for (auto& [root, c] : by_root) {
    c.family_count = c.family_ids.size();
    const std::string* label = nullptr;
    for (const auto& lemma : c.member_lemmas) {
      if (!label) {
        label = &lemma;
        continue;
      }
      auto n = groups.at(lemma).mentions, best = groups.at(*label).mentions;
      if (n > best || (n == best && (lemma.size() < label->size() ||
                                     (lemma.size() == label->size() && lemma < *label)))) {
        label = &lemma;
      }
    }
    c.label = *label;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CurationDirective> parse_curation(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse, "curation file must be a JSON array");
  std::vector<CurationDirective> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& d = j[i];
    auto where = "curation directive " + std::to_string(i);
    if (!d.is_object() || !d.contains("action") || !d.contains("target") ||
        !d["action"].is_string() || !d["target"].is_string()) {
      throw Error(ErrorKind::parse, where + ": needs string fields 'action' and 'target'");
    }
    CurationDirective cd;
    auto action = d["action"].get<std::string>();
    cd.target = d["target"].get<std::string>();
    if (action == "approve") {
      cd.action = CurationDirective::Action::approve;
    } else if (action == "reject") {
      cd.action = CurationDirective::Action::reject;
    } else if (action == "merge") {
      cd.action = CurationDirective::Action::merge;
      if (!d.contains("into") || !d["into"].is_string()) {
        throw Error(ErrorKind::parse, where + ": merge needs 'into'");
      }
      cd.into = d["into"].get<std::string>();
    } else {
      throw Error(ErrorKind::parse, where + ": unknown action '" + action + "'");
    }
    out.push_back(std::move(cd));
  }
  return out;
}

std::vector<TechnologyCluster> apply_curation(std::vector<TechnologyCluster> clusters,
                                              const std::vector<CurationDirective>& directives) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < clusters.size(); ++i) index[clusters[i].cluster_id] = i;
  auto lookup = [&](const std::string& id) -> TechnologyCluster& {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorKind::not_found, "unknown cluster_id '" + id + "'");
    return clusters[it->second];
  };

  for (const auto& d : directives) {
    auto& target = lookup(d.target);
    switch (d.action) {
      case CurationDirective::Action::approve:
        if (target.curation != CurationState::merged) target.curation = CurationState::approved;
        break;
      case CurationDirective::Action::reject:
        if (target.curation != CurationState::merged) target.curation = CurationState::rejected;
        break;
      case CurationDirective::Action::merge: {
        lookup(d.into);
        std::string dest = d.into;
        while (true) {
          if (dest == d.target) throw Error(ErrorKind::conflict, "merge cycle");
          const auto& c = lookup(dest);
          if (!c.merged_into) break;
          dest = *c.merged_into;
        }
        if (target.curation == CurationState::merged) {
          throw Error(ErrorKind::conflict, "cluster '" + d.target + "' is already merged into '" +
                                               *target.merged_into + "'");
        }
        auto& into = lookup(dest);
        into.member_lemmas.insert(target.member_lemmas.begin(), target.member_lemmas.end());
        into.mention_count += target.mention_count;
        into.family_ids.insert(target.family_ids.begin(), target.family_ids.end());
        into.family_count = into.family_ids.size();
        target.member_lemmas.clear();
        target.mention_count = 0;
        target.family_ids.clear();
        target.family_count = 0;
        target.curation = CurationState::merged;
        target.merged_into = d.into;
        break;
      }
    }
  }
  return clusters;
}

const TechnologyCluster* find_active_cluster(const std::vector<TechnologyCluster>& clusters,
                                             std::string_view lemma) {
  for (const auto& c : clusters) {
    if (c.active() && c.member_lemmas.contains(std::string(lemma))) return &c;
  }
  return nullptr;
}

namespace {

std::string_view curation_name(CurationState s) {
  switch (s) {
    case CurationState::automatic: return "auto";
    case CurationState::approved: return "approved";
    case CurationState::rejected: return "rejected";
    case CurationState::merged: return "merged-into";
  }
  return "auto";
}

}  // namespace

json to_json(const TechnologyCluster& c) {
  return {{"cluster_id", c.cluster_id},
          {"label", c.label},
          {"member_lemmas", c.member_lemmas},
          {"hypernym_lemma", c.hypernym_lemma},
          {"mention_count", c.mention_count},
          {"family_count", c.family_count},
          {"family_ids", c.family_ids},
          {"curation", curation_name(c.curation)},
          {"merged_into", c.merged_into ? json(*c.merged_into) : json(nullptr)}};
}

TechnologyCluster cluster_from_json(const json& j) {
  TechnologyCluster c;
  c.cluster_id = j.at("cluster_id").get<std::string>();
  c.label = j.at("label").get<std::string>();
  c.member_lemmas = j.at("member_lemmas").get<std::set<std::string>>();
  c.hypernym_lemma = j.at("hypernym_lemma").get<std::string>();
  c.mention_count = j.at("mention_count").get<std::size_t>();
  c.family_count = j.at("family_count").get<std::size_t>();
  c.family_ids = j.value("family_ids", std::set<std::string>{});
  auto cur = j.at("curation").get<std::string>();
  bool known = false;
  for (auto s : {CurationState::automatic, CurationState::approved, CurationState::rejected,
                 CurationState::merged}) {
    if (curation_name(s) == cur) {
      c.curation = s;
      known = true;
    }
  }
  if (!known) throw Error(ErrorKind::parse, "unknown curation state '" + cur + "'");
  if (j.contains("merged_into") && !j["merged_into"].is_null()) {
    c.merged_into = j["merged_into"].get<std::string>();
  }
  return c;
}

}  // namespace wprof::techner
