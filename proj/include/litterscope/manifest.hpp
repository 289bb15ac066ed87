#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "litterscope/config.hpp"

namespace litterscope {

inline constexpr std::string_view kToolName = "litterscope";
inline constexpr std::string_view kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);

struct InputDigest {
  std::string path;
  std::string sha256;
};

/// Provenance of one CLI invocation. The run id is the digest of everything
/// except the timestamp and the output list, so identical invocations share
/// it and reports stay byte-identical.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> options;
  std::optional<SurveyConfig> config;
  std::vector<InputDigest> inputs;

  void add_input(const std::string& path, std::string_view contents);

  nlohmann::json core_json() const;
  std::string run_id() const;
  /// Full manifest document; `timestamp` is ISO-8601 UTC.
  nlohmann::json document(std::string_view timestamp,
                          const std::vector<InputDigest>& outputs) const;
};

/// SOURCE_DATE_EPOCH when set, otherwise the current time, as ISO-8601 UTC.
std::string manifest_timestamp();

}  // namespace litterscope
