#pragma once

#include <string_view>

namespace wprof {

std::string_view tool_version();

}  // namespace wprof
