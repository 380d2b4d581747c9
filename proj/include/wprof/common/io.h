#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wprof {

using Json = nlohmann::json;

std::string read_file(const std::filesystem::path& path);

// Writes through a temporary sibling and renames, so readers never observe a
// partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

Json read_json_file(const std::filesystem::path& path);

// Canonical serialization used for every artifact: two-space indent, sorted
// keys, trailing newline.
std::string dump_canonical(const Json& value);

// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string> split_lines(std::string_view text);

// Reads a one-entry-per-line data file: blank lines and '#' comments skipped,
// surrounding whitespace trimmed.
std::vector<std::string> parse_entry_lines(std::string_view text);

std::string_view trim(std::string_view s);

std::string to_lower_ascii(std::string_view s);

}  // namespace wprof
