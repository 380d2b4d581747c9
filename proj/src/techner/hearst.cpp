#include "wprof/techner/hearst.h"

#include <algorithm>
#include <optional>

#include "wprof/common/error.h"
#include "wprof/common/parallel.h"

namespace wprof::techner {

using corpus::Role;
using corpus::Token;
using nlohmann::json;

std::string_view to_string(HearstPattern p) {
  switch (p) {
    case HearstPattern::such_as: return "such_as";
    case HearstPattern::such_np_as: return "such_np_as";
    case HearstPattern::and_other: return "and_other";
    case HearstPattern::including: return "including";
    case HearstPattern::especially: return "especially";
  }
  return "such_as";
}

namespace {

std::optional<HearstPattern> parse_pattern(std::string_view s) {
  for (auto p : {HearstPattern::such_as, HearstPattern::such_np_as, HearstPattern::and_other,
                 HearstPattern::including, HearstPattern::especially}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

bool in_phrase(Role r) { return r == Role::noun || r == Role::adjective; }

// A sentence seen as a sequence of noun-phrase chunks and single tokens.
struct Item {
  bool is_np = false;
  std::size_t begin = 0;
  std::size_t end = 0;
};

class ItemSeq {
 public:
  ItemSeq(const std::vector<Token>& tokens) : tokens_(tokens) {
    std::size_t i = 0;
    while (i < tokens.size()) {
      if (in_phrase(tokens[i].role)) {
        std::size_t j = i;
        while (j < tokens.size() && in_phrase(tokens[j].role)) ++j;
        items_.push_back({true, i, j});
        i = j;
      } else {
        items_.push_back({false, i, i + 1});
        ++i;
      }
    }
  }

  std::size_t size() const { return items_.size(); }
  const Item& operator[](std::size_t i) const { return items_[i]; }

  bool np(std::size_t i) const { return i < items_.size() && items_[i].is_np; }

  bool word(std::size_t i, std::string_view w) const {
    return i < items_.size() && !items_[i].is_np && tokens_[items_[i].begin].surface == w;
  }

  bool conj(std::size_t i) const { return word(i, "and") || word(i, "or"); }

  // Lemma of the last noun token of the chunk, if any.
  std::optional<std::string> head(std::size_t i) const {
    const auto& it = items_[i];
    for (std::size_t t = it.end; t > it.begin; --t) {
      if (tokens_[t - 1].role == Role::noun) return tokens_[t - 1].lemma;
    }
    return std::nullopt;
  }

  // `NP (, NP)* ((,)? (and|or) NP)?` starting at item `start`.
  std::vector<std::size_t> forward_list(std::size_t start) const {
    std::vector<std::size_t> out;
    if (!np(start)) return out;
    out.push_back(start);
    std::size_t i = start + 1;
    while (i < items_.size()) {
      if (word(i, ",") && np(i + 1)) {
        out.push_back(i + 1);
        i += 2;
      } else if (word(i, ",") && conj(i + 1) && np(i + 2)) {
        out.push_back(i + 2);
        break;
      } else if (conj(i) && np(i + 1)) {
        out.push_back(i + 1);
        break;
      } else {
        break;
      }
    }
    return out;
  }

  // `NP (, NP)* (,)?` ending just before item `stop`, in text order.
  std::vector<std::size_t> backward_list(std::size_t stop) const {
    std::vector<std::size_t> out;
    if (stop == 0) return out;
    std::size_t i = stop;
    if (word(i - 1, ",")) --i;
    if (i == 0 || !np(i - 1)) return out;
    out.push_back(i - 1);
    i -= 1;
    while (i >= 2 && word(i - 1, ",") && np(i - 2)) {
      out.push_back(i - 2);
      i -= 2;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  const std::vector<Token>& tokens_;
  std::vector<Item> items_;
};

bool has_noun(const std::vector<Token>& tokens, const Item& it) {
  for (std::size_t t = it.begin; t < it.end; ++t) {
    if (tokens[t].role == Role::noun) return true;
  }
  return false;
}

}  // namespace

std::vector<Chunk> chunk_noun_phrases(const std::vector<Token>& tokens) {
  std::vector<Chunk> out;
  ItemSeq seq(tokens);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].is_np) out.push_back({seq[i].begin, seq[i].end});
  }
  return out;
}

std::vector<TechnologyMention> extract_mentions(const corpus::Sentence& sentence,
                                                const KeyTermSet& key_terms) {
  const auto& tokens = sentence.tokens;
  ItemSeq seq(tokens);
  std::vector<TechnologyMention> out;

  auto emit = [&](HearstPattern pattern, std::size_t hyper_item,
                  const std::vector<std::size_t>& hyponyms) {
    auto head = seq.head(hyper_item);
    if (!head || !key_terms.contains(*head)) return;
    for (auto h : hyponyms) {
      const auto& it = seq[h];
      if (!has_noun(tokens, it)) continue;
      TechnologyMention m;
      m.pattern = pattern;
      m.hypernym_lemma = *head;
      for (std::size_t t = it.begin; t < it.end; ++t) {
        if (t > it.begin) m.lemma.push_back(' ');
        m.lemma += tokens[t].lemma;
      }
      auto first = tokens[it.begin].offset;
      auto last = tokens[it.end - 1].offset + tokens[it.end - 1].length;
      m.surface = sentence.text.substr(first, last - first);
      m.location = {sentence.doc_id, sentence.section, sentence.index, it.begin, it.end};
      out.push_back(std::move(m));
    }
  };

  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq.np(i)) {
      // (a) NP_h (,)? such as LIST
      std::size_t j = seq.word(i + 1, ",") ? i + 2 : i + 1;
      if (seq.word(j, "such") && seq.word(j + 1, "as")) {
        emit(HearstPattern::such_as, i, seq.forward_list(j + 2));
      }
      // (d) NP_h (,)? including LIST
      if (seq.word(j, "including")) emit(HearstPattern::including, i, seq.forward_list(j + 1));
      // (e) NP_h (,)? especially LIST
      if (seq.word(j, "especially")) emit(HearstPattern::especially, i, seq.forward_list(j + 1));
    }
    // (b) such NP_h as LIST
    if (seq.word(i, "such") && seq.np(i + 1) && seq.word(i + 2, "as")) {
      emit(HearstPattern::such_np_as, i + 1, seq.forward_list(i + 3));
    }
    // (c) LIST (,)? and other NP_h
    if (seq.word(i, "and") && seq.word(i + 1, "other") && seq.np(i + 2)) {
      emit(HearstPattern::and_other, i + 2, seq.backward_list(i));
    }
  }

  std::sort(out.begin(), out.end(), [](const TechnologyMention& a, const TechnologyMention& b) {
    if (a.location != b.location) return a.location < b.location;
    return a.pattern < b.pattern;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TechnologyMention> extract_all(const std::vector<corpus::Sentence>& sentences,
                                           const KeyTermSet& key_terms) {
  std::vector<std::vector<TechnologyMention>> per(sentences.size());
  parallel_for(sentences.size(),
               [&](std::size_t i) { per[i] = extract_mentions(sentences[i], key_terms); });
  std::vector<TechnologyMention> all;
  for (auto& v : per) std::move(v.begin(), v.end(), std::back_inserter(all));
  return all;
}

json to_json(const TechnologyMention& m) {
  return {{"surface", m.surface},
          {"lemma", m.lemma},
          {"hypernym_lemma", m.hypernym_lemma},
          {"pattern_id", to_string(m.pattern)},
          {"location",
           {{"doc_id", m.location.doc_id},
            {"section", corpus::to_string(m.location.section)},
            {"sentence_index", m.location.sentence_index},
            {"token_span", {m.location.token_begin, m.location.token_end}}}}};
}

TechnologyMention mention_from_json(const json& j) {
  TechnologyMention m;
  m.surface = j.at("surface").get<std::string>();
  m.lemma = j.at("lemma").get<std::string>();
  m.hypernym_lemma = j.at("hypernym_lemma").get<std::string>();
  auto p = parse_pattern(j.at("pattern_id").get<std::string>());
  if (!p) throw Error(ErrorKind::parse, "unknown pattern_id " + j.at("pattern_id").dump());
  m.pattern = *p;
  const auto& loc = j.at("location");
  m.location.doc_id = loc.at("doc_id").get<std::string>();
  auto sec = corpus::parse_section(loc.at("section").get<std::string>());
  if (!sec) throw Error(ErrorKind::parse, "unknown section " + loc.at("section").dump());
  m.location.section = *sec;
  m.location.sentence_index = loc.at("sentence_index").get<std::size_t>();
  m.location.token_begin = loc.at("token_span")[0].get<std::size_t>();
  m.location.token_end = loc.at("token_span")[1].get<std::size_t>();
  return m;
}

}  // namespace wprof::techner
