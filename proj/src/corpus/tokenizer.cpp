#include "wprof/corpus/tokenizer.h"

#include <array>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "wprof/common/io.h"

namespace wprof::corpus {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Words whose trailing s is not a plural marker. Irregular plurals map to a
// member of this set so the result stays a fixed point.
const std::unordered_set<std::string_view>& invariant_words() {
  static const std::unordered_set<std::string_view> words = {
      "series", "species", "means", "news", "physics", "mathematics", "gas", "bus", "lens",
      "bias", "atlas", "alias", "canvas", "chassis", "always", "perhaps", "whereas", "towards",
      "afterwards", "sometimes", "thermodynamics", "aerodynamics", "logistics", "statistics",
      "economics", "ethics", "robotics", "mechatronics", "electronics", "optics", "hydraulics",
      "pneumatics", "analytics", "diagnostics"};
  return words;
}

const std::unordered_map<std::string_view, std::string_view>& irregular_plurals() {
  static const std::unordered_map<std::string_view, std::string_view> plurals = {
      {"gases", "gas"},   {"buses", "bus"},     {"lenses", "lens"},
      {"biases", "bias"}, {"atlases", "atlas"}, {"aliases", "alias"},
  };
  return plurals;
}

}  // namespace

std::string lemmatize(std::string_view w) {
  if (w.size() <= 3 || !is_word_byte(static_cast<unsigned char>(w.front())) ||
      is_digit(static_cast<unsigned char>(w.front()))) {
    return std::string(w);
  }
  if (invariant_words().contains(w)) return std::string(w);
  if (auto it = irregular_plurals().find(w); it != irregular_plurals().end()) {
    return std::string(it->second);
  }
  if (w.size() > 4 && ends_with(w, "ies")) {
    return std::string(w.substr(0, w.size() - 3)) + "y";
  }
  if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") ||
      ends_with(w, "shes")) {
    return std::string(w.substr(0, w.size() - 2));
  }
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) {
    return std::string(w);
  }
  if (ends_with(w, "s")) {
    return std::string(w.substr(0, w.size() - 1));
  }
  return std::string(w);
}

namespace {

Role heuristic_role(std::string_view w) {
  if (w.size() > 4 && ends_with(w, "ing")) return Role::verb;
  if (w.size() > 3 && ends_with(w, "ed") && !ends_with(w, "eed")) return Role::verb;
  if (w.size() > 4) {
    for (std::string_view suffix : {"al", "ive", "ous", "ic"}) {
      if (ends_with(w, suffix)) return Role::adjective;
    }
  }
  return Role::noun;
}

}  // namespace

std::vector<Token> tokenize_and_tag(std::string_view text, const Lexicon& lexicon) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    Token tok;
    tok.offset = i;
    if (is_word_byte(c)) {
      std::size_t j = i + 1;
      while (j < n) {
        auto cj = static_cast<unsigned char>(text[j]);
        if (is_word_byte(cj)) {
          ++j;
          continue;
        }
        // Keep intra-word hyphens ("energy-efficient") and decimal points
        // ("3.5") inside the token.
        if (j + 1 < n) {
          auto next = static_cast<unsigned char>(text[j + 1]);
          if (cj == '-' && is_word_byte(next)) {
            j += 2;
            continue;
          }
          if (cj == '.' && is_digit(static_cast<unsigned char>(text[j - 1])) && is_digit(next)) {
            j += 2;
            continue;
          }
        }
        break;
      }
      tok.length = j - i;
      tok.surface = to_lower_ascii(text.substr(i, tok.length));
      if (is_digit(c)) {
        tok.role = Role::other;
        tok.lemma = tok.surface;
      } else if (auto role = lexicon.lookup(tok.surface)) {
        tok.role = *role;
        tok.lemma = (tok.role == Role::noun || tok.role == Role::adjective)
                        ? lemmatize(tok.surface)
                        : tok.surface;
      } else {
        tok.role = heuristic_role(tok.surface);
        tok.lemma = lemmatize(tok.surface);
      }
      i = j;
    } else {
      tok.length = 1;
      tok.surface = std::string(1, static_cast<char>(c));
      tok.lemma = tok.surface;
      tok.role = Role::other;
      ++i;
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace wprof::corpus
