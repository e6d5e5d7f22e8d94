#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpp/lattice.hpp"
#include "fpp/region.hpp"
#include "fpp/weights.hpp"

namespace fpp {

class EmptyBoundary : public Error {
 public:
  using Error::Error;
};

/// The edge {base, base + e_axis}, indices into the region box.
struct RouteEdge {
  std::int64_t base = 0;
  int axis = 0;
  int weight = 0;
  bool on_min_route = false;
};

/// Forward/backward times inside Gamma', the union of all routes of
/// T_Gamma(0, boundary) and the route-length extremes.
///
/// Routes are self-avoiding paths in Gamma' from the origin to a boundary
/// vertex. A unit edge is a route edge iff forward + 1 + backward = total.
/// Zero edges are filtered further: at each passage-time level a zero edge
/// counts only if some simple path from an entry port to an exit port of
/// that level uses it.
struct GeodesicField {
  Box box;
  std::vector<std::int32_t> forward;
  std::vector<std::int32_t> backward;
  std::int64_t total = 0;
  /// Sorted by (base, axis).
  std::vector<RouteEdge> route_edges;
  /// Vertex support of the route edges plus the origin.
  std::vector<std::uint8_t> route_vertex;
  std::size_t route_vertex_count = 0;
  /// Unit-weight route edges.
  std::int64_t pivotal_count = 0;
  /// Fewest and most edges over all routes.
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  /// False when some zero plateau was too large for exact longest paths;
  /// n_max is then a lower bound.
  bool n_max_exact = true;
};

/// `weights` must be defined on region.box().
GeodesicField geodesic_field(const WeightGrid& weights, const Region& region);
GeodesicField geodesic_field(const Configuration& cfg, const Region& region);

/// Minimal passage time over paths inside Gamma' from the origin to the
/// boundary of Gamma'.
std::int64_t restricted_passage_time(const WeightGrid& weights, const Region& region);
std::int64_t restricted_passage_time(const Configuration& cfg, const Region& region);

std::int64_t pivotal_count(const Configuration& cfg, const Region& region);

struct BadCubeReport {
  int k = 1;
  /// Cubes B_k(u) that meet a route vertex.
  std::int64_t occupied = 0;
  /// Occupied cubes whose 3^d block of cubes holds no unit route edge.
  std::int64_t bad = 0;
};

BadCubeReport bad_cube_count(const GeodesicField& field, int k);

}  // namespace fpp
