#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wprof::cli {

// Runs one command line (args excludes the program name). Results go to
// `out`; failures are reported on `err` as {"error": {...}} JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wprof::cli
