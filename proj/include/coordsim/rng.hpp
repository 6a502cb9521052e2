#ifndef COORDSIM_RNG_HPP
#define COORDSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace coordsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent stream seed from a base seed and a salt.
inline std::uint64_t deriveSeed(std::uint64_t base, std::uint64_t salt) {
  return splitmix64(base ^ splitmix64(salt));
}

/// Unbiased uniform draw in [0, m). Rejection sampling, no modulo bias.
inline std::uint64_t boundedUniform(std::mt19937_64& rng, std::uint64_t m) {
  if (m <= 1) return 0;
  const std::uint64_t threshold = (0 - m) % m;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % m;
  }
}

/// Uniform double in [0, 1) with 53 random bits. Portable across stdlibs.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe as a log() argument.
inline double uniformPos(std::mt19937_64& rng) { return 1.0 - uniform01(rng); }

}  // namespace coordsim

#endif  // COORDSIM_RNG_HPP
