#include "wprof/corpus/document.h"

namespace wprof::corpus {

std::string_view to_string(Section s) {
  switch (s) {
    case Section::title: return "title";
    case Section::abstract: return "abstract";
    case Section::claims: return "claims";
    case Section::description: return "description";
  }
  return "title";
}

std::string_view to_string(DocStatus s) {
  switch (s) {
    case DocStatus::pending: return "pending";
    case DocStatus::granted: return "granted";
    case DocStatus::lapsed: return "lapsed";
    case DocStatus::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Role r) {
  switch (r) {
    case Role::noun: return "noun";
    case Role::adjective: return "adjective";
    case Role::verb: return "verb";
    case Role::determiner: return "determiner";
    case Role::conjunction: return "conjunction";
    case Role::preposition: return "preposition";
    case Role::other: return "other";
  }
  return "other";
}

std::optional<Section> parse_section(std::string_view s) {
  for (auto sec : kAllSections) {
    if (to_string(sec) == s) return sec;
  }
  return std::nullopt;
}

std::optional<DocStatus> parse_status(std::string_view s) {
  for (auto st : {DocStatus::pending, DocStatus::granted, DocStatus::lapsed, DocStatus::unknown}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::optional<Role> parse_role(std::string_view s) {
  for (auto r : {Role::noun, Role::adjective, Role::verb, Role::determiner, Role::conjunction,
                 Role::preposition, Role::other}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

}  // namespace wprof::corpus
