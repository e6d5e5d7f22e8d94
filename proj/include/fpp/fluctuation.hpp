#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fpp/ball.hpp"
#include "fpp/lattice.hpp"
#include "fpp/region.hpp"

namespace fpp {

inline constexpr std::int64_t kNoFeature = std::numeric_limits<std::int64_t>::max();

/// Exact squared Euclidean distance from every vertex of `box` to the
/// nearest vertex with features[i] != 0 (separable lower-envelope method).
/// kNoFeature when the box has no feature at all.
std::vector<std::int64_t> squared_distance_transform(const Box& box, std::span<const std::uint8_t> features);

/// F(B(t), Gamma) at lattice resolution with Euclidean distances:
/// l_out = max over v in B' of dist(v, Gamma'),
/// l_in  = max over v in Gamma' \ B' of dist(v, Z^d \ Gamma'),
/// F = max(l_out, l_in). Squared values are exact integers.
struct FluctuationReport {
  std::int32_t t = 0;
  std::int64_t l_out_sq = 0;
  std::int64_t l_in_sq = 0;
  double l_out = 0;
  double l_in = 0;
  double F = 0;
  std::int64_t F_sq() const { return std::max(l_out_sq, l_in_sq); }
};

FluctuationReport fluctuation(const Ball& ball, const Region& region);

/// Direct set check that Gamma^-_F <= B' <= Gamma^+_F, where
/// Gamma^-_F = {v in Gamma' : dist(v, Z^d \ Gamma') > F} and
/// Gamma^+_F = {v : dist(v, Gamma') <= F}.
struct SandwichReport {
  bool inner_ok = true;
  bool outer_ok = true;
  std::size_t inner_size = 0;
  std::size_t outer_size = 0;
  bool ok() const { return inner_ok && outer_ok; }
};

SandwichReport verify_sandwich(const Ball& ball, const Region& region, std::int64_t f_sq);

}  // namespace fpp
