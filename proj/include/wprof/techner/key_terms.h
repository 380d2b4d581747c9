#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wprof::techner {

// Hypernym lemmas that gate technology extraction.
struct KeyTermSet {
  std::set<std::string, std::less<>> base_terms;
  std::map<std::string, std::string, std::less<>> synonym_expansions;  // synonym -> base term

  // The nine builtin base terms (technology, machine, device, apparatus,
  // mechanism, sensor, network, system, unit).
  static KeyTermSet defaults();

  // Base terms from a one-per-line file; must include every builtin term.
  static KeyTermSet from_base_text(std::string_view text);

  bool contains(std::string_view lemma) const;
  std::optional<std::string> base_of(std::string_view lemma) const;
};

struct ExpansionResult {
  KeyTermSet terms;
  std::vector<std::string> warnings;
};

// Applies a `synonym<TAB>base` lexicon. Synonyms whose base is not a base term
// are skipped with a warning; a line without a tab is an error.
ExpansionResult expand_key_terms(const KeyTermSet& base, std::string_view lexicon_text);

nlohmann::json to_json(const KeyTermSet& k);
KeyTermSet key_terms_from_json(const nlohmann::json& j);

}  // namespace wprof::techner
