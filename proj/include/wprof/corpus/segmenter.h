#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wprof/corpus/document.h"
#include "wprof/corpus/lexicon.h"

namespace wprof::corpus {

// Splits after '.', '!' or '?' when followed by whitespace and an uppercase
// letter, or by end of text. A period closing a guarded abbreviation never
// splits. Returned pieces are trimmed and non-empty.
std::vector<std::string> split_sentences(std::string_view text,
                                         const Lexicon& lexicon = Lexicon::builtin());

// Splits a claims block on claim numbering ("1.", "2." at line start) and
// strips the numbers.
std::vector<std::string> split_claim_items(std::string_view claims_text);

std::vector<Sentence> segment_sentences(const PatentDocument& doc,
                                        const Lexicon& lexicon = Lexicon::builtin());

}  // namespace wprof::corpus
