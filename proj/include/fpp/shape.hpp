#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fpp/lattice.hpp"
#include "fpp/polytope.hpp"

namespace fpp {

struct LadderPoint {
  std::int64_t n = 0;
  /// Mean over replicates of T(0, round(n x)) / n, images averaged first.
  double mean = 0;
  double se = 0;
};

struct DirectionEstimate {
  std::vector<double> direction;
  double mu_hat = 0;
  double se = 0;
  std::int64_t n_used = 0;
  std::vector<LadderPoint> ladder;
};

/// Time-constant estimates over directions of the fundamental domain and the
/// convex hull of the symmetry-expanded points x / mu_hat(x).
struct ShapeEstimate {
  int d = 2;
  double p = 0;
  std::int64_t n_max = 0;
  int reps = 0;
  std::uint64_t seed_base = 0;
  std::vector<DirectionEstimate> directions;
  ConvexPolytope polytope;
};

struct ShapeOptions {
  int d = 2;
  double p = 0.25;
  int n_dirs = 16;
  std::int64_t n_max = 512;
  int reps = 200;
  std::uint64_t seed_base = 1;
  int workers = 1;
  std::optional<double> p_c_override;
  /// Tests may switch the subcritical guard off to probe p near p_c.
  bool enforce_subcritical = true;
};

/// Directions of the fundamental domain of the lattice symmetry group.
/// d = 2: n_dirs angles evenly spaced in [0, pi/4]. d = 3: a barycentric
/// grid on the spherical triangle (1,0,0), (1,1,0)/sqrt2, (1,1,1)/sqrt3,
/// the first level with at least n_dirs points.
std::vector<std::vector<double>> direction_ladder(int d, int n_dirs);

/// Distinct images of x under coordinate permutations and sign changes.
std::vector<std::vector<double>> symmetric_images(std::span<const double> x);

/// Nearest lattice point; coordinate ties go to the smaller integer, which
/// picks the lexicographically smallest of the nearest points.
Vertex nearest_lattice_point(std::span<const double> y);

/// n_max, n_max / 2, ... down to 8 (or n_max if smaller), ascending.
std::vector<std::int64_t> geometric_ladder(std::int64_t n_max);

DirectionEstimate estimate_time_constant(int d, double p, std::span<const double> x, std::int64_t n_max, int reps,
                                         std::uint64_t seed_base = 1, int workers = 1);

ShapeEstimate estimate_shape(const ShapeOptions& opt);

/// Rebuilds the hull from directions and mu_hat.
ConvexPolytope shape_polytope(int d, const std::vector<DirectionEstimate>& dirs);

}  // namespace fpp
