#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace wprof {

// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

std::string sha256_file(const std::filesystem::path& path);

// Hex encoding of `bytes` bytes from the OpenSSL CSPRNG.
std::string random_hex(std::size_t bytes);

// Equality check whose run time does not depend on where inputs differ.
bool constant_time_equal(std::string_view a, std::string_view b);

}  // namespace wprof
