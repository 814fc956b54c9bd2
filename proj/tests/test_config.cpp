#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "qaoa/config.hpp"
#include "qaoa/rng.hpp"

using namespace qaoa;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("file hash changes when the file changes") {
  const fs::path p = fs::temp_directory_path() / "qaoa_ws_hash_test.txt";
  std::ofstream(p) << "first";
  const std::string h1 = sha256_file(p);
  std::ofstream(p) << "second";
  const std::string h2 = sha256_file(p);
  CHECK(h1 != h2);
  CHECK(h1 == sha256_hex("first"));
  fs::remove(p);
}

TEST_CASE("config resolution precedence: flag over file over default") {
  const nlohmann::ordered_json defaults = {{"n", 10}, {"p", 2}, {"seed", 1}};
  const nlohmann::ordered_json file_cfg = {{"n", 12}, {"seed", 5}};
  const nlohmann::ordered_json cli = {{"n", 14}};
  const auto resolved = resolve_config(defaults, file_cfg, cli);
  CHECK(resolved.at("n") == 14);    // flag wins
  CHECK(resolved.at("seed") == 5);  // file beats default
  CHECK(resolved.at("p") == 2);     // documented default
}

TEST_CASE("defaults-only invocation yields the defaults verbatim") {
  const nlohmann::ordered_json defaults = {{"n", 10}, {"p", 2}, {"seed", 1}};
  CHECK(resolve_config(defaults, {}, {}) == defaults);
}

TEST_CASE("unknown config keys are usage errors") {
  const nlohmann::ordered_json defaults = {{"n", 10}};
  CHECK_THROWS_AS(resolve_config(defaults, {{"m", 3}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(resolve_config(defaults, {}, {{"m", 3}}), std::invalid_argument);
}

TEST_CASE("config file loading rejects malformed input") {
  const fs::path p = fs::temp_directory_path() / "qaoa_ws_cfg_test.json";
  std::ofstream(p) << "{\"n\": 10";
  CHECK_THROWS_AS(load_config_file(p), std::invalid_argument);
  std::ofstream(p) << "[1,2,3]";
  CHECK_THROWS_AS(load_config_file(p), std::invalid_argument);
  std::ofstream(p) << "{\"n\": 10}";
  CHECK(load_config_file(p).at("n") == 10);
  fs::remove(p);
}

TEST_CASE("seed env fallback") {
  unsetenv(kSeedEnvVar);
  CHECK(seed_from_env_or_default() == kDefaultSeed);
  setenv(kSeedEnvVar, "777", 1);
  CHECK(seed_from_env_or_default() == 777);
  setenv(kSeedEnvVar, "not-a-number", 1);
  CHECK_THROWS_AS(seed_from_env_or_default(), std::invalid_argument);
  unsetenv(kSeedEnvVar);
}

TEST_CASE("manifest lists inputs with hashes and writes atomically") {
  const fs::path dir = fs::temp_directory_path() / "qaoa_ws_manifest_test";
  fs::create_directories(dir);
  const fs::path input = dir / "input.jsonl";
  std::ofstream(input) << "{}\n";

  RunManifest m;
  m.command_line = "qaoa-warmstart gen-data --n 6";
  m.master_seed = 42;
  m.started_at = utc_timestamp();
  m.resolved_config = {{"n", 6}};
  m.add_input(input);
  m.outputs.push_back((dir / "out.jsonl").string());
  m.finished_at = utc_timestamp();

  const fs::path target = dir / "run_manifest.json";
  write_manifest(m, target);

  CHECK(!fs::exists(target.string() + ".tmp"));  // temp renamed away
  const auto j = nlohmann::json::parse(slurp(target));
  CHECK(j.at("schema") == "run-manifest-v1");
  CHECK(j.at("master_seed") == 42);
  CHECK(j.at("inputs").size() == 1);
  CHECK(j.at("inputs")[0].at("path") == input.string());
  CHECK(j.at("inputs")[0].at("sha256") == sha256_file(input));
  CHECK(j.at("tool_version") == kToolVersion);

  // Changing the input changes its recorded hash on the next run.
  std::ofstream(input) << "{\"x\":1}\n";
  RunManifest m2 = m;
  m2.inputs.clear();
  m2.add_input(input);
  CHECK(m2.inputs[0].second != m.inputs[0].second);

  // A failed write leaves no partial manifest behind.
  const fs::path bad_target = dir / "no-such-dir" / "run_manifest.json";
  CHECK_THROWS(write_manifest(m, bad_target));
  CHECK(!fs::exists(bad_target));

  fs::remove_all(dir);
}

TEST_CASE("derived seeds separate purposes and indices") {
  std::set<uint64_t> seen;
  for (uint64_t i = 0; i < 100; ++i) {
    seen.insert(derive_seed(1, "purpose-a", i));
    seen.insert(derive_seed(1, "purpose-b", i));
    seen.insert(derive_seed(2, "purpose-a", i));
  }
  CHECK(seen.size() == 300);
  CHECK(derive_seed(1, "purpose-a", 5) == derive_seed(1, "purpose-a", 5));
}

TEST_CASE("rng streams are reproducible and well-distributed") {
  Rng a(9, "stream", 0), b(9, "stream", 0);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c(9, "stream", 1);
  double mean = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) mean += c.next_double();
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 0.01);

  Rng d(3, "bounds");
  for (int i = 0; i < 1000; ++i) {
    const double u = d.uniform(0.3, 0.9);
    CHECK(u >= 0.3);
    CHECK(u < 0.9);
  }
}
