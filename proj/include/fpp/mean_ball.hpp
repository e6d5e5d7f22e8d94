#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fpp/lattice.hpp"
#include "fpp/polytope.hpp"
#include "fpp/region.hpp"

namespace fpp {

struct MeanBallOptions {
  int d = 2;
  double p = 0.25;
  std::int32_t t = 100;
  int reps = 50;
  std::uint64_t seed_base = 1;
  /// Replicates are grown to cap = ceil(cap_factor * t) + cap_extra; times
  /// above the cap are only known to exceed it.
  double cap_factor = 1.5;
  std::int32_t cap_extra = 10;
  int workers = 1;
};

/// Pointwise sample means of T(0, v) and the thresholded set
/// G'(t) = {v : mean <= t}.
struct MeanBall {
  std::int32_t t = 0;
  int reps = 0;
  std::int32_t cap = 0;
  Box box;
  /// Sum of the known times (<= cap) and the number of replicates above cap.
  std::vector<std::int64_t> sums;
  std::vector<std::uint32_t> unknown;
  /// 1 where the mean is certainly <= t.
  std::vector<std::uint8_t> members;
  std::size_t size = 0;
  /// Vertices whose mean could still be <= t given capped replicates;
  /// treated as non-members.
  std::size_t ambiguous = 0;
  bool connected = true;

  /// Mean time at a box index, NaN if some replicate exceeded the cap.
  double mean_at(std::int64_t i) const;
  /// The origin's connected component of the member set as a region.
  Region region() const;
};

MeanBall empirical_mean_ball(const MeanBallOptions& opt);

/// Fraction of the boundary vertices of (t B)' that lie in G'(t); the
/// containment t B <= G(t) predicts 1 up to noise.
double shape_containment(const MeanBall& mb, const ConvexPolytope& shape);

/// Fraction of the boundary vertices of G'(t) inside t B. Since
/// E T(0, x) >= mu(x), G(t) <= t B, so this is the containment that holds.
double mean_set_in_shape(const MeanBall& mb, const ConvexPolytope& shape);

}  // namespace fpp
