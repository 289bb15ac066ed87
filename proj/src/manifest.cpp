#include "litterscope/manifest.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <memory>

#include <openssl/evp.h>

#include "litterscope/error.hpp"
#include "litterscope/text.hpp"

namespace litterscope {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
    throw Error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

void RunManifest::add_input(const std::string& path, std::string_view contents) {
  inputs.push_back({path, sha256_hex(contents)});
}

nlohmann::json RunManifest::core_json() const {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["options"] = options;
  if (config) {
    j["config"] = {{"gsd", config->gsd},
                   {"tile_size", config->tile_size},
                   {"bin_min", config->bin_min},
                   {"bin_max", config->bin_max},
                   {"bin_count", config->bin_count},
                   {"macro_meso_threshold", config->macro_meso_threshold},
                   {"sector_count", config->sector_count}};
  }
  j["inputs"] = nlohmann::json::array();
  for (const auto& in : inputs) {
    j["inputs"].push_back({{"path", in.path}, {"sha256", in.sha256}});
  }
  return j;
}

std::string RunManifest::run_id() const { return sha256_hex(core_json().dump()); }

nlohmann::json RunManifest::document(std::string_view timestamp,
                                     const std::vector<InputDigest>& outputs) const {
  auto j = core_json();
  j["run_id"] = run_id();
  j["timestamp"] = timestamp;
  j["outputs"] = nlohmann::json::array();
  for (const auto& out : outputs) {
    j["outputs"].push_back({{"path", out.path}, {"sha256", out.sha256}});
  }
  return j;
}

std::string manifest_timestamp() {
  std::time_t seconds = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    seconds = static_cast<std::time_t>(parse_integer(epoch));
  } else {
    seconds = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf.data();
}

}  // namespace litterscope
