#pragma once

#include "qcs/serialize.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qcs {

/// Record of one CLI run: command, resolved configuration, SHA-256 digests
/// of every input file, the seed when the command is randomized, tool
/// version and timestamp. Written alongside every file output so a run
/// can be reproduced bit for bit.
struct RunManifest {
  std::string command;
  json config;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::optional<std::uint64_t> seed;

  void add_input(const std::filesystem::path& path);
  json to_json() const;
  void write(const std::filesystem::path& path) const;
};

}  // namespace qcs
