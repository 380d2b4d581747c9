#include "wprof/patentset/query.h"

#include <algorithm>

#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/corpus/segmenter.h"
#include "wprof/corpus/tokenizer.h"

namespace wprof::patentset {

using nlohmann::json;

QueryNode QueryNode::make_literal(const std::string& phrase) {
  QueryNode n;
  n.kind = NodeKind::literal;
  n.text = phrase;
  for (const auto& tok : corpus::tokenize_and_tag(phrase)) n.lemmas.push_back(tok.lemma);
  if (n.lemmas.empty()) throw Error(ErrorKind::parse, "literal phrase is empty");
  return n;
}

QueryNode QueryNode::make_pattern(const std::string& source, bool case_sensitive) {
  QueryNode n;
  n.kind = NodeKind::pattern;
  n.text = source;
  n.case_sensitive = case_sensitive;
  auto flags = std::regex::ECMAScript | std::regex::optimize;
  if (!case_sensitive) flags |= std::regex::icase;
  try {
    n.regex = std::make_shared<const std::regex>(source, flags);
  } catch (const std::regex_error& e) {
    throw Error(ErrorKind::parse, "invalid regex '" + source + "': " + e.what());
  }
  return n;
}

QueryNode QueryNode::make_not(QueryNode child) {
  QueryNode n;
  n.kind = NodeKind::negation;
  n.children.push_back(std::move(child));
  return n;
}

QueryNode QueryNode::make_and(std::vector<QueryNode> children) {
  QueryNode n;
  n.kind = NodeKind::all_of;
  n.children = std::move(children);
  return n;
}

QueryNode QueryNode::make_or(std::vector<QueryNode> children) {
  QueryNode n;
  n.kind = NodeKind::any_of;
  n.children = std::move(children);
  return n;
}

std::size_t QueryNode::leaf_count() const {
  if (kind == NodeKind::literal || kind == NodeKind::pattern) return 1;
  std::size_t total = 0;
  for (const auto& c : children) total += c.leaf_count();
  return total;
}

QueryNode normalize(QueryNode node) {
  switch (node.kind) {
    case NodeKind::literal:
    case NodeKind::pattern:
      return node;
    case NodeKind::negation: {
      auto inner = normalize(std::move(node.children.front()));
      if (inner.kind == NodeKind::negation) return std::move(inner.children.front());
      return QueryNode::make_not(std::move(inner));
    }
    case NodeKind::all_of:
    case NodeKind::any_of: {
      std::vector<QueryNode> flat;
      for (auto& child : node.children) {
        auto c = normalize(std::move(child));
        if (c.kind == node.kind) {
          for (auto& g : c.children) flat.push_back(std::move(g));
        } else {
          flat.push_back(std::move(c));
        }
      }
      if (flat.size() == 1) return std::move(flat.front());
      node.children = std::move(flat);
      return node;
    }
  }
  return node;
}

namespace {

std::size_t count_leaves(const QueryNode& n, bool negated, bool want_positive) {
  switch (n.kind) {
    case NodeKind::literal:
    case NodeKind::pattern:
      return negated != want_positive ? 1 : 0;
    case NodeKind::negation:
      return count_leaves(n.children.front(), !negated, want_positive);
    default: {
      std::size_t total = 0;
      for (const auto& c : n.children) total += count_leaves(c, negated, want_positive);
      return total;
    }
  }
}

}  // namespace

std::size_t positive_leaf_count(const QueryNode& node) { return count_leaves(node, false, true); }

QueryNode parse_expression(const json& j, const std::string& path) {
  auto fail = [&](const std::string& msg) -> QueryNode {
    throw Error(ErrorKind::parse, "query" + (path.empty() ? std::string("") : " at " + path) + ": " + msg);
  };
  if (!j.is_object() || j.size() == 0) return fail("expected an object node");

  if (j.contains("lit")) {
    if (!j["lit"].is_string()) return fail("'lit' must be a string");
    try {
      return QueryNode::make_literal(j["lit"].get<std::string>());
    } catch (const Error& e) {
      return fail(e.what());
    }
  }
  if (j.contains("regex")) {
    if (!j["regex"].is_string()) return fail("'regex' must be a string");
    bool cs = j.value("case_sensitive", false);
    try {
      return QueryNode::make_pattern(j["regex"].get<std::string>(), cs);
    } catch (const Error& e) {
      return fail(e.what());
    }
  }
  if (j.size() != 1) return fail("an operator node must have exactly one key");
  const auto& [op, body] = *j.items().begin();
  if (op == "NOT") {
    return QueryNode::make_not(parse_expression(body, path + "/NOT"));
  }
  if (op == "AND" || op == "OR") {
    if (!body.is_array() || body.empty()) return fail("'" + op + "' needs a non-empty array");
    std::vector<QueryNode> children;
    for (std::size_t i = 0; i < body.size(); ++i) {
      children.push_back(parse_expression(body[i], path + "/" + op + "/" + std::to_string(i)));
    }
    return op == "AND" ? QueryNode::make_and(std::move(children))
                       : QueryNode::make_or(std::move(children));
  }
  return fail("unknown operator '" + op + "'");
}

QueryOntology compile_query(const json& spec, const std::string& default_name) {
  QueryOntology q;
  q.name = default_name;
  const json* expr = &spec;
  std::string path;
  if (spec.is_object() && (spec.contains("query") || spec.contains("expression"))) {
    const char* key = spec.contains("query") ? "query" : "expression";
    expr = &spec[key];
    path = std::string("/") + key;
    if (spec.contains("name")) {
      if (!spec["name"].is_string()) throw Error(ErrorKind::parse, "query: 'name' must be a string");
      q.name = spec["name"].get<std::string>();
    }
    if (spec.contains("scope")) {
      if (!spec["scope"].is_array()) throw Error(ErrorKind::parse, "query: 'scope' must be an array");
      for (const auto& s : spec["scope"]) {
        auto sec = s.is_string() ? corpus::parse_section(s.get<std::string>()) : std::nullopt;
        if (!sec) throw Error(ErrorKind::parse, "query: unknown scope section " + s.dump());
        q.scope.insert(*sec);
      }
    }
  }
  if (q.scope.empty()) q.scope.insert(std::begin(corpus::kAllSections), std::end(corpus::kAllSections));
  q.expression = normalize(parse_expression(*expr, path));
  if (positive_leaf_count(q.expression) == 0) {
    throw Error(ErrorKind::validation, "query has no positive leaf");
  }
  return q;
}

QueryOntology compile_query_file(const std::filesystem::path& path) {
  auto spec = read_json_file(path);
  try {
    return compile_query(spec, path.stem().string());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

json to_json(const QueryNode& node) {
  switch (node.kind) {
    case NodeKind::literal:
      return {{"lit", node.text}};
    case NodeKind::pattern: {
      json j = {{"regex", node.text}};
      if (node.case_sensitive) j["case_sensitive"] = true;
      return j;
    }
    case NodeKind::negation:
      return {{"NOT", to_json(node.children.front())}};
    default: {
      json arr = json::array();
      for (const auto& c : node.children) arr.push_back(to_json(c));
      return {{node.kind == NodeKind::all_of ? "AND" : "OR", arr}};
    }
  }
}

json to_json(const QueryOntology& q) {
  json scope = json::array();
  for (auto s : q.scope) scope.push_back(corpus::to_string(s));
  return {{"name", q.name}, {"scope", scope}, {"query", to_json(q.expression)}};
}

DocumentView::DocumentView(const corpus::PatentDocument& doc,
                           const std::set<corpus::Section>& scope) {
  for (auto& s : corpus::segment_sentences(doc)) {
    if (scope.contains(s.section)) sentences_.push_back(std::move(s));
  }
}

bool DocumentView::contains_lemmas(const std::vector<std::string>& lemmas) const {
  if (lemmas.empty()) return false;
  for (const auto& s : sentences_) {
    auto it = std::search(s.tokens.begin(), s.tokens.end(), lemmas.begin(), lemmas.end(),
                          [](const corpus::Token& t, const std::string& l) { return t.lemma == l; });
    if (it != s.tokens.end()) return true;
  }
  return false;
}

bool DocumentView::matches(const std::regex& re) const {
  return std::any_of(sentences_.begin(), sentences_.end(),
                     [&](const corpus::Sentence& s) { return std::regex_search(s.text, re); });
}

bool evaluate(const QueryNode& node, const DocumentView& doc) {
  switch (node.kind) {
    case NodeKind::literal:
      return doc.contains_lemmas(node.lemmas);
    case NodeKind::pattern:
      return doc.matches(*node.regex);
    case NodeKind::negation:
      return !evaluate(node.children.front(), doc);
    case NodeKind::all_of:
      return std::all_of(node.children.begin(), node.children.end(),
                         [&](const QueryNode& c) { return evaluate(c, doc); });
    case NodeKind::any_of:
      return std::any_of(node.children.begin(), node.children.end(),
                         [&](const QueryNode& c) { return evaluate(c, doc); });
  }
  return false;
}

}  // namespace wprof::patentset
