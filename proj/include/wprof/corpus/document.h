#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wprof::corpus {

enum class Section { title, abstract, claims, description };

enum class DocStatus { pending, granted, lapsed, unknown };

enum class Role { noun, adjective, verb, determiner, conjunction, preposition, other };

std::string_view to_string(Section s);
std::string_view to_string(DocStatus s);
std::string_view to_string(Role r);

std::optional<Section> parse_section(std::string_view s);
std::optional<DocStatus> parse_status(std::string_view s);
std::optional<Role> parse_role(std::string_view s);

inline constexpr Section kAllSections[] = {Section::title, Section::abstract, Section::claims,
                                           Section::description};

struct PatentDocument {
  std::string doc_id;
  std::string family_id;
  int filing_year = 0;
  std::string title;
  std::string abstract;
  std::vector<std::string> claims;
  std::optional<std::string> description;
  std::vector<std::string> cpc_codes;
  std::vector<std::string> ipc_codes;
  std::optional<DocStatus> status;

  bool operator==(const PatentDocument&) const = default;
};

struct Token {
  std::string surface;  // lowercased
  std::string lemma;
  Role role = Role::other;
  std::size_t offset = 0;  // byte offset into the tagged text
  std::size_t length = 0;

  bool operator==(const Token&) const = default;
};

struct SentenceRef {
  std::string doc_id;
  Section section = Section::title;
  std::size_t index = 0;

  auto operator<=>(const SentenceRef&) const = default;
};

struct Sentence {
  std::string doc_id;
  Section section = Section::title;
  std::size_t index = 0;
  std::string text;
  std::vector<Token> tokens;

  SentenceRef ref() const { return {doc_id, section, index}; }
};

}  // namespace wprof::corpus
