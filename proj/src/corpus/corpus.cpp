#include "wprof/corpus/corpus.h"

#include <chrono>
#include <set>

#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/corpus/segmenter.h"

namespace wprof::corpus {

using nlohmann::json;

int current_year() {
  using namespace std::chrono;
  auto today = year_month_day{floor<days>(system_clock::now())};
  return static_cast<int>(today.year());
}

void validate_document(const PatentDocument& doc, int max_year) {
  std::vector<FieldIssue> issues;
  if (doc.doc_id.empty()) issues.push_back({"doc_id", "must be non-empty"});
  if (doc.family_id.empty()) issues.push_back({"family_id", "must be non-empty"});
  if (doc.title.empty()) issues.push_back({"title", "must be non-empty"});
  if (doc.filing_year < 1900 || doc.filing_year > max_year) {
    issues.push_back({"filing_year", "filing_year " + std::to_string(doc.filing_year) +
                                         " out of range 1900.." + std::to_string(max_year)});
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

Corpus::Corpus(std::vector<PatentDocument> docs) : docs_(std::move(docs)) {
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    const auto& d = docs_[i];
    if (!index_.emplace(d.doc_id, i).second) {
      throw Error(ErrorKind::duplicate, "duplicate doc_id '" + d.doc_id + "'");
    }
    auto [it, inserted] = family_earliest_year_.emplace(d.family_id, d.filing_year);
    if (!inserted && d.filing_year < it->second) it->second = d.filing_year;
  }
}

const PatentDocument* Corpus::find(std::string_view doc_id) const {
  auto it = index_.find(doc_id);
  return it == index_.end() ? nullptr : &docs_[it->second];
}

const PatentDocument& Corpus::at(std::string_view doc_id) const {
  if (const auto* d = find(doc_id)) return *d;
  throw Error(ErrorKind::not_found, "unknown doc_id '" + std::string(doc_id) + "'");
}

int Corpus::family_earliest_year(std::string_view family_id) const {
  auto it = family_earliest_year_.find(family_id);
  if (it == family_earliest_year_.end()) {
    throw Error(ErrorKind::not_found, "unknown family_id '" + std::string(family_id) + "'");
  }
  return it->second;
}

namespace {

const std::set<std::string, std::less<>>& known_fields() {
  static const std::set<std::string, std::less<>> fields = {
      "doc_id",    "family_id", "filing_year", "title",     "abstract",
      "claims",    "description", "cpc_codes", "ipc_codes", "status"};
  return fields;
}

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::parse, std::string("missing field '") + key + "'");
  if (!j[key].is_string()) throw Error(ErrorKind::parse, std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key) || j[key].is_null()) return out;
  if (!j[key].is_array()) throw Error(ErrorKind::parse, std::string("field '") + key + "' must be an array");
  for (const auto& v : j[key]) {
    if (!v.is_string()) throw Error(ErrorKind::parse, std::string("field '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

PatentDocument document_from_json(const json& j, std::vector<std::string>* unknown_fields) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "document must be a JSON object");
  PatentDocument d;
  d.doc_id = require_string(j, "doc_id");
  d.family_id = require_string(j, "family_id");
  if (!j.contains("filing_year") || !j["filing_year"].is_number_integer()) {
    throw Error(ErrorKind::parse, "field 'filing_year' must be an integer");
  }
  d.filing_year = j["filing_year"].get<int>();
  d.title = require_string(j, "title");
  if (j.contains("abstract") && !j["abstract"].is_null()) d.abstract = require_string(j, "abstract");
  d.claims = string_list(j, "claims");
  if (j.contains("description") && !j["description"].is_null()) {
    d.description = require_string(j, "description");
  }
  d.cpc_codes = string_list(j, "cpc_codes");
  d.ipc_codes = string_list(j, "ipc_codes");
  if (j.contains("status") && !j["status"].is_null()) {
    auto st = parse_status(require_string(j, "status"));
    if (!st) throw Error(ErrorKind::parse, "field 'status' must be pending|granted|lapsed|unknown");
    d.status = *st;
  }
  if (unknown_fields) {
    for (const auto& [key, _] : j.items()) {
      if (!known_fields().contains(key)) unknown_fields->push_back(key);
    }
  }
  return d;
}

json to_json(const PatentDocument& d) {
  json j = {{"doc_id", d.doc_id},       {"family_id", d.family_id}, {"filing_year", d.filing_year},
            {"title", d.title},         {"abstract", d.abstract},   {"claims", d.claims},
            {"cpc_codes", d.cpc_codes}, {"ipc_codes", d.ipc_codes}};
  j["description"] = d.description ? json(*d.description) : json(nullptr);
  j["status"] = d.status ? json(to_string(*d.status)) : json(nullptr);
  return j;
}

IngestResult ingest_jsonl(std::string_view text, int max_year) {
  IngestResult result;
  std::vector<PatentDocument> docs;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto where = "line " + std::to_string(line_no) + ": ";
    PatentDocument doc;
    std::vector<std::string> unknown;
    try {
      doc = document_from_json(json::parse(line), &unknown);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::parse, where + "invalid JSON: " + e.what());
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.what());
    }
    try {
      validate_document(doc, max_year);
    } catch (const ValidationError& e) {
      throw Error(ErrorKind::validation, where + e.what());
    }
    if (!seen.insert(doc.doc_id).second) {
      throw Error(ErrorKind::duplicate, where + "duplicate doc_id '" + doc.doc_id + "'");
    }
    for (const auto& key : unknown) {
      result.warnings.push_back(where + "unknown field '" + key + "' ignored");
    }
    docs.push_back(std::move(doc));
  }
  result.corpus = Corpus(std::move(docs));
  return result;
}

IngestResult ingest_corpus(const std::filesystem::path& source) {
  try {
    return ingest_jsonl(read_file(source));
  } catch (const Error& e) {
    throw Error(e.kind(), source.string() + ": " + e.what());
  }
}

json to_json(const Token& t) {
  return {{"surface", t.surface}, {"lemma", t.lemma}, {"role", to_string(t.role)},
          {"offset", t.offset},   {"length", t.length}};
}

json to_json(const Sentence& s) {
  json tokens = json::array();
  for (const auto& t : s.tokens) tokens.push_back(to_json(t));
  return {{"doc_id", s.doc_id}, {"section", to_string(s.section)}, {"index", s.index},
          {"text", s.text},     {"tokens", tokens}};
}

std::vector<Sentence> segment_corpus(const Corpus& corpus, const Lexicon& lexicon) {
  std::vector<Sentence> all;
  for (const auto& doc : corpus.documents()) {
    auto sentences = segment_sentences(doc, lexicon);
    std::move(sentences.begin(), sentences.end(), std::back_inserter(all));
  }
  return all;
}

}  // namespace wprof::corpus
