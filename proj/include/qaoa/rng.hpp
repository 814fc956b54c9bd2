#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qaoa {

// Every randomized code path in the project draws from a stream derived from
// (master seed, purpose label, index). Streams with distinct labels or indices
// are statistically independent and reproducible on any machine.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, std::string_view purpose, uint64_t index = 0) {
  uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a over the purpose label
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  uint64_t s = splitmix64(master ^ h);
  return splitmix64(s ^ index);
}

// Thin wrapper around mt19937_64 with hand-rolled conversions so draws do not
// depend on the standard library's unspecified distribution algorithms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  Rng(uint64_t master, std::string_view purpose, uint64_t index = 0)
      : engine_(derive_seed(master, purpose, index)) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform in [0, n). Modulo bias is below 2^-32 for the ranges used here.
  uint64_t below(uint64_t n) { return next_u64() % n; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qaoa
