#include "qaoa/config.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qaoa {

namespace {

std::string digest_to_hex(const unsigned char* digest, unsigned len) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

struct DigestCtx {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  DigestCtx() {
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("failed to initialize sha256 context");
    }
  }
  ~DigestCtx() { EVP_MD_CTX_free(ctx); }
  DigestCtx(const DigestCtx&) = delete;
  DigestCtx& operator=(const DigestCtx&) = delete;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  DigestCtx d;
  EVP_DigestUpdate(d.ctx, bytes.data(), bytes.size());
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned len = 0;
  EVP_DigestFinal_ex(d.ctx, digest.data(), &len);
  return digest_to_hex(digest.data(), len);
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path.string());
  DigestCtx d;
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    const std::streamsize got = in.gcount();
    if (got > 0) EVP_DigestUpdate(d.ctx, buf.data(), static_cast<size_t>(got));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned len = 0;
  EVP_DigestFinal_ex(d.ctx, digest.data(), &len);
  return digest_to_hex(digest.data(), len);
}

nlohmann::ordered_json resolve_config(const nlohmann::ordered_json& defaults,
                                      const nlohmann::ordered_json& file_config,
                                      const nlohmann::ordered_json& cli_overrides) {
  for (const auto& [key, value] : file_config.items()) {
    if (!defaults.contains(key)) {
      throw std::invalid_argument("unknown config file key: " + key);
    }
  }
  for (const auto& [key, value] : cli_overrides.items()) {
    if (!defaults.contains(key)) {
      throw std::invalid_argument("unknown option: " + key);
    }
  }
  nlohmann::ordered_json resolved = defaults;
  for (const auto& [key, value] : file_config.items()) resolved[key] = value;
  for (const auto& [key, value] : cli_overrides.items()) resolved[key] = value;
  return resolved;
}

nlohmann::ordered_json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config file " + path.string() + " must hold a flat JSON object");
  }
  return j;
}

uint64_t seed_from_env_or_default() {
  if (const char* env = std::getenv(kSeedEnvVar)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string{kSeedEnvVar} + " is not a valid unsigned integer: " + env);
    }
  }
  return kDefaultSeed;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.emplace_back(path.string(), sha256_file(path));
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["schema"] = "run-manifest-v1";
  j["tool_version"] = kToolVersion;
  j["command_line"] = manifest.command_line;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["master_seed"] = manifest.master_seed;
  j["resolved_config"] = manifest.resolved_config;
  auto inputs = nlohmann::ordered_json::array();
  for (const auto& [p, hash] : manifest.inputs) {
    inputs.push_back({{"path", p}, {"sha256", hash}});
  }
  j["inputs"] = std::move(inputs);
  j["outputs"] = manifest.outputs;

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write manifest: " + tmp.string());
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("short write on manifest: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {
std::mutex log_mutex;

void log_line(const char* level, const std::string& msg) {
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cerr << utc_timestamp() << " [" << level << "] " << msg << '\n';
}
}  // namespace

void log_info(const std::string& msg) { log_line("info", msg); }
void log_warn(const std::string& msg) { log_line("warn", msg); }

}  // namespace qaoa
