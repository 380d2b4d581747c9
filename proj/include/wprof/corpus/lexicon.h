#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "wprof/corpus/document.h"

namespace wprof::corpus {

// Closed-class word list plus role overrides, and the abbreviation guard list
// used by sentence segmentation. Both are plain-text data files; the copies
// under data/ are compiled into the binary as the builtin defaults.
class Lexicon {
 public:
  static const Lexicon& builtin();

  // Parses `word<TAB>role` lines ('#' comments and blank lines ignored).
  static Lexicon from_text(std::string_view lexicon_text, std::string_view abbreviations_text);

  std::optional<Role> lookup(std::string_view lowercase_word) const;

  // Case-sensitive match on the full token including its trailing period,
  // e.g. "Fig." or "e.g.".
  bool is_abbreviation(std::string_view token) const;

  std::size_t size() const { return roles_.size(); }

 private:
  std::unordered_map<std::string, Role> roles_;
  std::unordered_set<std::string> abbreviations_;
};

namespace builtin_data {
std::string_view lexicon_text();
std::string_view abbreviations_text();
std::string_view key_terms_text();
}  // namespace builtin_data

}  // namespace wprof::corpus
