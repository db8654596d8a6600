#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace qcs {

/// Hex-encoded SHA-256 digest (FIPS 180-4).
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace qcs
