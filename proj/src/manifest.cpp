#include "qcs/manifest.hpp"

#include "qcs/sha256.hpp"
#include "qcs/version.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace qcs {

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[24];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.emplace_back(path.string(), sha256_file(path));
}

json RunManifest::to_json() const {
  json in = json::array();
  for (const auto& [path, digest] : inputs)
    in.push_back(json{{"path", path}, {"sha256", digest}});
  json j{{"command", command},
         {"config", config},
         {"inputs", std::move(in)},
         {"version", kVersion},
         {"timestamp", utc_timestamp()}};
  if (seed) j["seed"] = *seed;
  return j;
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write manifest: " + path.string());
  out << to_json().dump(2) << '\n';
}

}  // namespace qcs
