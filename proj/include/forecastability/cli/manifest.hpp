#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace fcast::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Provenance attached to every output: rerunning with the same command,
/// config, inputs and seed reproduces the outputs byte for byte (the
/// timestamp aside).
struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::map<std::string, std::string> input_digests;  // path -> sha256 hex
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::string timestamp;  // ISO-8601 UTC

  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Lower-case hex SHA-256 of a file's bytes. Throws ParseError if unreadable.
std::string sha256_file(const std::string& path);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace fcast::cli
