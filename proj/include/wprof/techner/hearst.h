#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/corpus/document.h"
#include "wprof/techner/key_terms.h"

namespace wprof::techner {

enum class HearstPattern { such_as, such_np_as, and_other, including, especially };

std::string_view to_string(HearstPattern p);

struct MentionLocation {
  std::string doc_id;
  corpus::Section section = corpus::Section::title;
  std::size_t sentence_index = 0;
  std::size_t token_begin = 0;  // half-open token span of the hyponym NP
  std::size_t token_end = 0;

  auto operator<=>(const MentionLocation&) const = default;
};

struct TechnologyMention {
  std::string surface;
  std::string lemma;
  std::string hypernym_lemma;
  HearstPattern pattern = HearstPattern::such_as;
  MentionLocation location;

  bool operator==(const TechnologyMention&) const = default;
};

// Maximal runs of adjective/noun tokens, as half-open token spans.
struct Chunk {
  std::size_t begin = 0;
  std::size_t end = 0;
};
std::vector<Chunk> chunk_noun_phrases(const std::vector<corpus::Token>& tokens);

std::vector<TechnologyMention> extract_mentions(const corpus::Sentence& sentence,
                                                const KeyTermSet& key_terms);

std::vector<TechnologyMention> extract_all(const std::vector<corpus::Sentence>& sentences,
                                           const KeyTermSet& key_terms);

nlohmann::json to_json(const TechnologyMention& m);
TechnologyMention mention_from_json(const nlohmann::json& j);

}  // namespace wprof::techner
