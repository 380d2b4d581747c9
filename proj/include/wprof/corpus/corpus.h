#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/corpus/document.h"
#include "wprof/corpus/lexicon.h"

namespace wprof::corpus {

// An immutable, order-preserving collection of documents.
class Corpus {
 public:
  Corpus() = default;
  // Throws on duplicate doc_id or invalid documents.
  explicit Corpus(std::vector<PatentDocument> docs);

  const std::vector<PatentDocument>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  std::size_t family_count() const { return family_earliest_year_.size(); }

  const PatentDocument* find(std::string_view doc_id) const;
  const PatentDocument& at(std::string_view doc_id) const;
  bool contains(std::string_view doc_id) const { return find(doc_id) != nullptr; }

  // Earliest filing year across all documents of the family.
  int family_earliest_year(std::string_view family_id) const;

 private:
  std::vector<PatentDocument> docs_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, int, std::less<>> family_earliest_year_;
};

struct IngestResult {
  Corpus corpus;
  std::vector<std::string> warnings;
};

int current_year();

// Validates the document invariants; throws ValidationError.
void validate_document(const PatentDocument& doc, int max_year = current_year());

PatentDocument document_from_json(const nlohmann::json& j, std::vector<std::string>* unknown_fields = nullptr);
nlohmann::json to_json(const PatentDocument& doc);

IngestResult ingest_jsonl(std::string_view text, int max_year = current_year());
IngestResult ingest_corpus(const std::filesystem::path& source);

nlohmann::json to_json(const Token& t);
nlohmann::json to_json(const Sentence& s);

// All sentences of all documents, in document order then section order.
std::vector<Sentence> segment_corpus(const Corpus& corpus,
                                     const Lexicon& lexicon = Lexicon::builtin());

}  // namespace wprof::corpus
