#include "wprof/corpus/segmenter.h"

#include <regex>

#include "wprof/common/io.h"
#include "wprof/corpus/tokenizer.h"

namespace wprof::corpus {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// The whitespace-delimited token that ends at `end` (inclusive), with leading
// brackets and quotes removed.
std::string_view token_ending_at(std::string_view text, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  auto tok = text.substr(begin, end - begin + 1);
  while (!tok.empty() && (tok.front() == '(' || tok.front() == '[' || tok.front() == '"' ||
                          tok.front() == '\'')) {
    tok.remove_prefix(1);
  }
  return tok;
}

void push_trimmed(std::vector<std::string>& out, std::string_view piece) {
  auto t = trim(piece);
  if (!t.empty()) out.emplace_back(t);
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text, const Lexicon& lexicon) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_terminal(text[i])) continue;
    // Absorb runs such as "?!" or "..." so the split lands after the last one.
    std::size_t last = i;
    while (last + 1 < text.size() && is_terminal(text[last + 1])) ++last;

    std::size_t j = last + 1;
    while (j < text.size() && is_space(text[j])) ++j;
    bool at_end = j == text.size();
    bool before_capital = j > last + 1 && j < text.size() && text[j] >= 'A' && text[j] <= 'Z';
    if (!at_end && !before_capital) {
      i = last;
      continue;
    }
    if (text[last] == '.' && last == i && lexicon.is_abbreviation(token_ending_at(text, last))) {
      i = last;
      continue;
    }
    push_trimmed(out, text.substr(start, last + 1 - start));
    start = last + 1;
    i = last;
  }
  if (start < text.size()) push_trimmed(out, text.substr(start));
  return out;
}

std::vector<std::string> split_claim_items(std::string_view claims_text) {
  static const std::regex kNumbering(R"(^[ \t]*\d+\.[ \t]*)");
  std::vector<std::string> items;
  std::string current;
  bool any_numbered = false;
  for (const auto& line : split_lines(claims_text)) {
    std::smatch m;
    if (std::regex_search(line, m, kNumbering)) {
      if (any_numbered || !trim(current).empty()) push_trimmed(items, current);
      current = line.substr(static_cast<std::size_t>(m.length(0)));
      any_numbered = true;
    } else {
      if (!current.empty()) current.push_back('\n');
      current += line;
    }
  }
  push_trimmed(items, current);
  return items;
}

std::vector<Sentence> segment_sentences(const PatentDocument& doc, const Lexicon& lexicon) {
  std::vector<Sentence> out;
  auto emit = [&](Section section, std::size_t& index, std::string_view text) {
    for (auto& piece : split_sentences(text, lexicon)) {
      Sentence s;
      s.doc_id = doc.doc_id;
      s.section = section;
      s.index = index++;
      s.tokens = tokenize_and_tag(piece, lexicon);
      s.text = std::move(piece);
      out.push_back(std::move(s));
    }
  };

  std::size_t title_idx = 0, abstract_idx = 0, claims_idx = 0, description_idx = 0;
  emit(Section::title, title_idx, doc.title);
  emit(Section::abstract, abstract_idx, doc.abstract);
  for (const auto& block : doc.claims) {
    for (const auto& item : split_claim_items(block)) {
      emit(Section::claims, claims_idx, item);
    }
  }
  if (doc.description) emit(Section::description, description_idx, *doc.description);
  return out;
}

}  // namespace wprof::corpus
