#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace smelldep {

// Deterministic pseudo-randomness with bit-identical behaviour on every
// platform. The standard library's engines are portable but its
// distributions are implementation-defined, so sampling here uses a
// fully-specified generator (splitmix64) plus explicit rejection sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) via rejection; bound must be > 0.
  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(bounded(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 bits of entropy.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// FNV-1a; used wherever a string must hash identically across platforms
// (std::hash is implementation-defined).
constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Sorted sample of k distinct indices from [0, n) — partial Fisher-Yates.
std::vector<std::size_t> sample_indices(Rng& rng, std::size_t n, std::size_t k);

}  // namespace smelldep
