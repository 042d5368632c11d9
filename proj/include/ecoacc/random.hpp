#pragma once

#include <cstdint>
#include <random>

namespace ecoacc {

// Independent generator streams derived from one scenario seed.
namespace stream {
inline constexpr std::uint64_t schedule = 1;
inline constexpr std::uint64_t traffic = 2;
inline constexpr std::uint64_t sensor = 3;
}  // namespace stream

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream_id) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream_id)));
}

// Uniform in [0, 1) with 53 random bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

// Standard normal via Box-Muller on uniform01, for portability.
double standard_normal(std::mt19937_64& rng);

}  // namespace ecoacc
