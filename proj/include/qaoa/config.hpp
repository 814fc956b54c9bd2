#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qaoa {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSeedEnvVar = "QAOA_WS_SEED";
inline constexpr uint64_t kDefaultSeed = 1;

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// Precedence: CLI flag > config file > documented default. Keys present in the
// file but absent from the defaults are rejected as usage errors so typos
// cannot silently pass through.
nlohmann::ordered_json resolve_config(const nlohmann::ordered_json& defaults,
                                      const nlohmann::ordered_json& file_config,
                                      const nlohmann::ordered_json& cli_overrides);

nlohmann::ordered_json load_config_file(const std::filesystem::path& path);

// Master seed fallback chain: explicit value > QAOA_WS_SEED env var > default.
uint64_t seed_from_env_or_default();

struct RunManifest {
  std::string command_line;
  nlohmann::ordered_json resolved_config;
  std::vector<std::pair<std::string, std::string>> inputs;  // (path, sha256)
  uint64_t master_seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  void add_input(const std::filesystem::path& path);  // hashes the file now
};

std::string utc_timestamp();

// Serialized to a temp file first, then renamed into place, so a crash cannot
// leave a partial manifest behind.
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

void log_info(const std::string& msg);
void log_warn(const std::string& msg);

}  // namespace qaoa
