#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpp/lattice.hpp"
#include "fpp/zero_one_bfs.hpp"

namespace fpp {

/// The wet region B'(t) = {v : T(0, v) <= t} with its inner boundary
/// (members adjacent to the complement) and outer boundary (non-members
/// adjacent to a member).
class Ball {
 public:
  Ball() = default;

  /// Synthetic ball from explicit (vertex, time) pairs; boundaries are
  /// derived from membership and outer-boundary times are left unknown.
  static Ball from_vertices(const Box& box, std::int32_t t,
                            std::span<const std::pair<Vertex, std::int32_t>> members);

  std::int32_t t() const { return t_; }
  const Box& box() const { return box_; }
  int dim() const { return box_.dim(); }
  std::size_t size() const { return members_.size(); }

  /// Member indices (into box()) in settle order.
  std::span<const std::int64_t> members() const { return members_; }
  std::span<const std::int64_t> inner_boundary() const { return inner_; }
  std::span<const std::int64_t> outer_boundary() const { return outer_; }

  bool contains(const Vertex& v) const;
  bool contains_index(std::int64_t i) const { return dist_[static_cast<std::size_t>(i)] <= t_; }
  /// Recorded passage time, if known (members and outer boundary).
  std::optional<std::int32_t> time(const Vertex& v) const;
  std::int32_t time_at(std::int64_t i) const { return dist_[static_cast<std::size_t>(i)]; }
  /// Raw labels over box(): exact up to t + 1, larger values mean "more
  /// than t + 1" (kUnreached when never touched).
  std::span<const std::int32_t> times() const { return dist_; }

  /// Overwrites a recorded time without touching membership; for negative
  /// controls in tests.
  void corrupt_time(const Vertex& v, std::int32_t time);

  template <typename Weight>
  friend Ball grow_ball_with(const Box& box, std::int32_t t, const Weight& weight, BfsStats* stats);

 private:
  void collect_boundaries();

  std::int32_t t_ = 0;
  Box box_;
  std::vector<std::int32_t> dist_;
  std::vector<std::int64_t> members_;
  std::vector<std::int64_t> inner_;
  std::vector<std::int64_t> outer_;
};

/// Grows B'(t) inside cfg.box(). Throws BoxExhausted if a member lies on
/// the box face.
Ball grow_ball(const Configuration& cfg, std::int32_t t, BfsStats* stats = nullptr);

/// Grows in a centered box, doubling the radius on BoxExhausted. The
/// returned ball's box is the one that succeeded.
Ball grow_ball_auto(const Configuration& cfg, std::int32_t t, std::int32_t initial_radius = 0,
                    std::int64_t max_volume = std::int64_t{1} << 28);

/// Exact T(u, v) over all lattice paths. Throws BoxExhausted when a path
/// leaving cfg.box() could still be shorter.
std::int64_t passage_time(const Configuration& cfg, const Vertex& u, const Vertex& v);

/// passage_time with a box centered on u that doubles until certified.
std::int64_t passage_time_auto(const Configuration& cfg, const Vertex& u, const Vertex& v,
                               std::int64_t max_volume = std::int64_t{1} << 28);

/// Exact T(0, target) for a list of targets from one search. Targets must
/// lie in box.
std::vector<std::int64_t> passage_times_from_origin(const Configuration& cfg, const Box& box,
                                                    std::span<const Vertex> targets);

struct BoundaryReport {
  bool pass = true;
  struct Violation {
    Vertex vertex;
    std::int32_t time;
    std::int32_t expected;
    bool outer;
  };
  std::vector<Violation> violations;
  std::size_t inner_checked = 0;
  std::size_t outer_checked = 0;
};

/// Inner-boundary members must have time t, outer-boundary vertices t + 1.
BoundaryReport verify_boundary_times(const Ball& ball);

/// Members form one lattice-connected component containing the origin.
bool verify_connected(const Ball& ball);

enum class LocalityControl {
  /// Resample every edge that does not have both endpoints in the ball or
  /// its outer boundary.
  kResampleOutside,
  /// Negative control: resample every edge with both endpoints in the ball.
  kResampleInterior,
};

struct LocalityReport {
  bool unchanged = true;
  std::size_t ball_size = 0;
  std::size_t resampled_ball_size = 0;
  std::size_t symmetric_difference = 0;
};

/// Regrows B'(t) after re-randomizing edges with `resample_seed` and
/// compares vertex sets.
LocalityReport verify_locality(const Configuration& cfg, std::int32_t t, std::uint64_t resample_seed,
                               LocalityControl control = LocalityControl::kResampleOutside);

// Implementation of the weight-generic growth.
template <typename Weight>
Ball grow_ball_with(const Box& box, std::int32_t t, const Weight& weight, BfsStats* stats) {
  if (t < 0) throw InvalidArgument("grow_ball: t must be >= 0");
  Ball b;
  b.t_ = t;
  b.box_ = box;
  Vertex origin{};
  if (!box.contains(origin)) throw BoxExhausted("grow_ball: origin outside the box");
  b.dist_.assign(static_cast<std::size_t>(box.volume()), kUnreached);
  const std::int64_t src[] = {box.index(origin)};
  zero_one_bfs(
      box, std::span<std::int32_t>(b.dist_), std::span<const std::int64_t>(src), t, weight, AllowAll{},
      [&](std::int64_t i, const Vertex& v, std::int32_t) {
        if (box.on_face(v)) throw BoxExhausted("grow_ball: ball reached the bounding box");
        b.members_.push_back(i);
        return true;
      },
      stats);
  b.collect_boundaries();
  return b;
}

}  // namespace fpp
