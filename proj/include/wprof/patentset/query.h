#pragma once

#include <filesystem>
#include <memory>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "wprof/corpus/corpus.h"
#include "wprof/corpus/document.h"

namespace wprof::patentset {

enum class NodeKind { all_of, any_of, negation, literal, pattern };

// One node of a boolean query tree. Literal leaves match a contiguous lemma
// sequence; pattern leaves run a regular expression over raw sentence text.
struct QueryNode {
  NodeKind kind = NodeKind::literal;
  std::vector<QueryNode> children;
  std::string text;                       // literal phrase or regex source
  std::vector<std::string> lemmas;        // literal only
  bool case_sensitive = false;            // pattern only
  std::shared_ptr<const std::regex> regex;  // pattern only

  static QueryNode make_literal(const std::string& phrase);
  static QueryNode make_pattern(const std::string& source, bool case_sensitive = false);
  static QueryNode make_not(QueryNode child);
  static QueryNode make_and(std::vector<QueryNode> children);
  static QueryNode make_or(std::vector<QueryNode> children);

  std::size_t leaf_count() const;
};

struct QueryOntology {
  std::string name;
  QueryNode expression;
  std::set<corpus::Section> scope;
};

// Removes double negation, flattens nested AND/AND and OR/OR, and collapses
// single-child AND/OR nodes.
QueryNode normalize(QueryNode node);

// Number of leaves reachable through an even number of negations.
std::size_t positive_leaf_count(const QueryNode& node);

QueryNode parse_expression(const nlohmann::json& j, const std::string& path = "");

// Accepts either {"name", "scope", "query"} or a bare expression object.
QueryOntology compile_query(const nlohmann::json& spec, const std::string& default_name = "query");
QueryOntology compile_query_file(const std::filesystem::path& path);

nlohmann::json to_json(const QueryNode& node);
nlohmann::json to_json(const QueryOntology& q);

// Per-document evaluation context: the in-scope sentences of one document.
class DocumentView {
 public:
  DocumentView(const corpus::PatentDocument& doc, const std::set<corpus::Section>& scope);

  bool contains_lemmas(const std::vector<std::string>& lemmas) const;
  bool matches(const std::regex& re) const;

 private:
  std::vector<corpus::Sentence> sentences_;
};

bool evaluate(const QueryNode& node, const DocumentView& doc);

}  // namespace wprof::patentset
