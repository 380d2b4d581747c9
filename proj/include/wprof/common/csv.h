#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wprof::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Empty trailing lines are ignored.
std::vector<Row> parse(std::string_view text);

// Quotes a field only when it contains a delimiter, quote or newline.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

bool parse_bool(std::string_view field, bool& out);

}  // namespace wprof::csv
