#pragma once

// Counter-based edge hashing. These constants are part of the file-format
// contract: changing any of them changes every configuration.
//
//   row key   h0 = mix64(seed ^ (d << 56));  h1 = mix64(h0 + kGolden * (axis + 1))
//             for k = d-1 .. 1:  h = mix64(h + kGolden * (uint32(x_k) + 1))
//   edge bits u = mix64(h + kGolden * uint32(x_0)) >> 11      (53 bits)
//   uniform   u * 2^-53
//   t(e) = 0  iff  u < ceil(p * 2^53)

#include <cmath>
#include <cstdint>

#include "fpp/lattice.hpp"

namespace fpp::hash {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kMulA = 0xBF58476D1CE4E5B9ULL;
inline constexpr std::uint64_t kMulB = 0x94D049BB133111EBULL;
inline constexpr int kUniformBits = 53;
inline constexpr std::uint64_t kUniformOne = std::uint64_t{1} << kUniformBits;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= kMulA;
  z ^= z >> 27;
  z *= kMulB;
  z ^= z >> 31;
  return z;
}

/// Key shared by every edge of one lattice row (fixed axis and coordinates
/// 1..d-1); the row varies in coordinate 0.
inline std::uint64_t row_key(std::uint64_t seed, int d, int axis, const Vertex& v) {
  std::uint64_t h = mix64(seed ^ (static_cast<std::uint64_t>(d) << 56));
  h = mix64(h + kGolden * static_cast<std::uint64_t>(axis + 1));
  for (int k = d - 1; k >= 1; --k) {
    h = mix64(h + kGolden * (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v[k])) + 1));
  }
  return h;
}

constexpr std::uint64_t edge_bits(std::uint64_t row, std::int32_t x0) {
  return mix64(row + kGolden * static_cast<std::uint64_t>(static_cast<std::uint32_t>(x0))) >> 11;
}

constexpr double bits_to_uniform(std::uint64_t bits) {
  return static_cast<double>(bits) * (1.0 / static_cast<double>(kUniformOne));
}

/// Integer threshold such that bits < threshold(p) iff bits * 2^-53 < p.
inline std::uint64_t threshold(double p) {
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return kUniformOne;
  return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, kUniformBits)));
}

/// Inverse of bits_to_uniform for overrides given as uniforms.
inline std::uint64_t uniform_to_bits(double u) {
  if (!(u > 0.0)) return 0;
  if (u >= 1.0) return kUniformOne - 1;
  return static_cast<std::uint64_t>(std::ldexp(u, kUniformBits));
}

}  // namespace fpp::hash
