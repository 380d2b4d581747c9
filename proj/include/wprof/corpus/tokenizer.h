#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wprof/corpus/document.h"
#include "wprof/corpus/lexicon.h"

namespace wprof::corpus {

// Rule-based singularization: -ies -> -y, -sses -> -ss, -xes/-ches/-shes drop
// "es", otherwise a trailing -s is dropped for words longer than three
// characters not ending in -ss/-us/-is. Idempotent.
std::string lemmatize(std::string_view lowercase_word);

// Lowercases, splits on whitespace and punctuation (punctuation characters
// become single-character tokens with role `other`), then assigns roles from
// the lexicon, suffix heuristics, and a noun default.
std::vector<Token> tokenize_and_tag(std::string_view text,
                                    const Lexicon& lexicon = Lexicon::builtin());

}  // namespace wprof::corpus
