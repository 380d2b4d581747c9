#include "wprof/corpus/lexicon.h"

#include "wprof/common/error.h"
#include "wprof/common/io.h"

namespace wprof::corpus {

const Lexicon& Lexicon::builtin() {
  static const Lexicon lexicon =
      from_text(builtin_data::lexicon_text(), builtin_data::abbreviations_text());
  return lexicon;
}

Lexicon Lexicon::from_text(std::string_view lexicon_text, std::string_view abbreviations_text) {
  Lexicon lex;
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(lexicon_text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos) {
      throw Error(ErrorKind::parse,
                  "lexicon line " + std::to_string(line_no) + ": expected word<TAB>role");
    }
    auto word = to_lower_ascii(line.substr(0, sep));
    auto role_text = trim(line.substr(sep + 1));
    auto role = parse_role(role_text);
    if (!role) {
      throw Error(ErrorKind::parse, "lexicon line " + std::to_string(line_no) + ": unknown role '" +
                                        std::string(role_text) + "'");
    }
    // First entry wins so that a word listed twice keeps its earlier role.
    lex.roles_.emplace(std::move(word), *role);
  }
  for (auto& abbr : parse_entry_lines(abbreviations_text)) {
    lex.abbreviations_.insert(std::move(abbr));
  }
  return lex;
}

std::optional<Role> Lexicon::lookup(std::string_view lowercase_word) const {
  auto it = roles_.find(std::string(lowercase_word));
  if (it == roles_.end()) return std::nullopt;
  return it->second;
}

bool Lexicon::is_abbreviation(std::string_view token) const {
  return abbreviations_.contains(std::string(token));
}

}  // namespace wprof::corpus
