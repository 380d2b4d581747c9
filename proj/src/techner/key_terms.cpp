#include "wprof/techner/key_terms.h"

#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/corpus/lexicon.h"
#include "wprof/corpus/tokenizer.h"

namespace wprof::techner {

using nlohmann::json;

namespace {

std::string term_lemma(std::string_view raw) {
  return corpus::lemmatize(to_lower_ascii(trim(raw)));
}

}  // namespace

KeyTermSet KeyTermSet::defaults() {
  KeyTermSet k;
  for (const auto& entry : parse_entry_lines(corpus::builtin_data::key_terms_text())) {
    k.base_terms.insert(term_lemma(entry));
  }
  return k;
}

KeyTermSet KeyTermSet::from_base_text(std::string_view text) {
  KeyTermSet k;
  for (const auto& entry : parse_entry_lines(text)) k.base_terms.insert(term_lemma(entry));
  for (const auto& required : defaults().base_terms) {
    if (!k.base_terms.contains(required)) {
      throw Error(ErrorKind::validation, "key term list is missing required term '" + required + "'");
    }
  }
  return k;
}

bool KeyTermSet::contains(std::string_view lemma) const {
  return base_terms.contains(lemma) || synonym_expansions.contains(lemma);
}

std::optional<std::string> KeyTermSet::base_of(std::string_view lemma) const {
  if (auto it = base_terms.find(lemma); it != base_terms.end()) return *it;
  if (auto it = synonym_expansions.find(lemma); it != synonym_expansions.end()) return it->second;
  return std::nullopt;
}

ExpansionResult expand_key_terms(const KeyTermSet& base, std::string_view lexicon_text) {
  ExpansionResult result{base, {}};
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(lexicon_text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    auto where = "synonym lexicon line " + std::to_string(line_no);
    if (tab == std::string_view::npos) {
      throw Error(ErrorKind::parse, where + ": expected synonym<TAB>base");
    }
    auto synonym = term_lemma(line.substr(0, tab));
    auto target = term_lemma(line.substr(tab + 1));
    if (synonym.empty() || target.empty()) {
      throw Error(ErrorKind::parse, where + ": empty synonym or base term");
    }
    if (!base.base_terms.contains(target)) {
      result.warnings.push_back(where + ": base term '" + target + "' is not a key term; '" +
                                synonym + "' not added");
      continue;
    }
    if (result.terms.base_terms.contains(synonym)) {
      result.warnings.push_back(where + ": '" + synonym + "' is already a base term");
      continue;
    }
    auto [it, inserted] = result.terms.synonym_expansions.emplace(synonym, target);
    if (!inserted && it->second != target) {
      result.warnings.push_back(where + ": '" + synonym + "' already maps to '" + it->second + "'");
    }
  }
  return result;
}

json to_json(const KeyTermSet& k) {
  json expansions = json::object();
  for (const auto& [syn, target] : k.synonym_expansions) expansions[syn] = target;
  return {{"base_terms", k.base_terms}, {"synonym_expansions", expansions}};
}

KeyTermSet key_terms_from_json(const json& j) {
  KeyTermSet k;
  for (const auto& t : j.at("base_terms")) k.base_terms.insert(t.get<std::string>());
  for (const auto& [syn, target] : j.at("synonym_expansions").items()) {
    k.synonym_expansions.emplace(syn, target.get<std::string>());
  }
  return k;
}

}  // namespace wprof::techner
