#include "fpp/ball.hpp"

#include <algorithm>

#include "fpp/edge_hash.hpp"
#include "fpp/weights.hpp"

namespace fpp {

namespace {

template <typename Fn>
void for_each_neighbor(const Box& box, std::int64_t i, const Vertex& v, Fn&& fn) {
  for (int a = 0; a < box.dim(); ++a) {
    if (v[a] < box.hi()[a]) fn(i + box.stride(a));
    if (v[a] > box.lo()[a]) fn(i - box.stride(a));
  }
}

std::int32_t radius_for(const Box& box) {
  std::int32_t r = 0;
  for (int a = 0; a < box.dim(); ++a) r = std::max({r, -box.lo()[a], box.hi()[a]});
  return r;
}

}  // namespace

Ball Ball::from_vertices(const Box& box, std::int32_t t, std::span<const std::pair<Vertex, std::int32_t>> members) {
  Ball b;
  b.t_ = t;
  b.box_ = box;
  b.dist_.assign(static_cast<std::size_t>(box.volume()), kUnreached);
  for (const auto& [v, time] : members) {
    if (!box.contains(v)) throw InvalidArgument("Ball::from_vertices: vertex outside box");
    if (time > t) throw InvalidArgument("Ball::from_vertices: member time exceeds t");
    const auto i = box.index(v);
    if (b.dist_[static_cast<std::size_t>(i)] == kUnreached) b.members_.push_back(i);
    b.dist_[static_cast<std::size_t>(i)] = time;
  }
  b.collect_boundaries();
  // Outer-boundary times are unknown for synthetic balls.
  return b;
}

void Ball::collect_boundaries() {
  inner_.clear();
  outer_.clear();
  std::vector<std::uint8_t> seen(members_.empty() ? 0 : dist_.size(), 0);
  for (auto i : members_) {
    const Vertex v = box_.vertex(i);
    bool inner = box_.on_face(v);
    for_each_neighbor(box_, i, v, [&](std::int64_t n) {
      if (contains_index(n)) return;
      inner = true;
      if (!seen[static_cast<std::size_t>(n)]) {
        seen[static_cast<std::size_t>(n)] = 1;
        outer_.push_back(n);
      }
    });
    if (inner) inner_.push_back(i);
  }
}

bool Ball::contains(const Vertex& v) const { return box_.contains(v) && contains_index(box_.index(v)); }

std::optional<std::int32_t> Ball::time(const Vertex& v) const {
  if (!box_.contains(v)) return std::nullopt;
  const auto d = dist_[static_cast<std::size_t>(box_.index(v))];
  if (d == kUnreached) return std::nullopt;
  return d;
}

void Ball::corrupt_time(const Vertex& v, std::int32_t time) {
  if (!box_.contains(v)) throw InvalidArgument("corrupt_time: vertex outside box");
  auto& d = dist_[static_cast<std::size_t>(box_.index(v))];
  const bool member = d <= t_;
  // Keep membership stable: members stay <= t, non-members stay > t.
  d = member ? std::min(time, t_) : std::max(time, t_ + 1);
}

Ball grow_ball(const Configuration& cfg, std::int32_t t, BfsStats* stats) {
  HashedWeights w(cfg, cfg.box());
  return grow_ball_with(cfg.box(), t, w, stats);
}

Ball grow_ball_auto(const Configuration& cfg, std::int32_t t, std::int32_t initial_radius, std::int64_t max_volume) {
  std::int32_t r = initial_radius > 0 ? initial_radius : 2 * t + 8;
  for (;;) {
    const Box box = Box::centered(cfg.dim(), r);
    if (box.volume() > max_volume) throw BoxExhausted("grow_ball_auto: box volume limit reached");
    try {
      return grow_ball(cfg.with_box(box), t);
    } catch (const BoxExhausted&) {
      r *= 2;
    }
  }
}

std::int64_t passage_time(const Configuration& cfg, const Vertex& u, const Vertex& v) {
  const Box& box = cfg.box();
  if (!box.contains(u) || !box.contains(v)) throw BoxExhausted("passage_time: endpoint outside the box");
  if (u == v) return 0;
  HashedWeights w(cfg, box);
  std::vector<std::int32_t> dist(static_cast<std::size_t>(box.volume()), kUnreached);
  const std::int64_t src[] = {box.index(u)};
  const std::int64_t target = box.index(v);
  std::int64_t result = -1;
  std::int32_t face_level = kUnreached;
  zero_one_bfs(box, std::span<std::int32_t>(dist), std::span<const std::int64_t>(src), kUnreached - 1, w,
               AllowAll{}, [&](std::int64_t i, const Vertex& x, std::int32_t level) {
                 if (face_level == kUnreached && box.on_face(x)) face_level = level;
                 if (i == target) {
                   result = level;
                   return false;
                 }
                 return true;
               });
  if (result < 0 || face_level < result) throw BoxExhausted("passage_time: search reached the bounding box");
  return result;
}

std::int64_t passage_time_auto(const Configuration& cfg, const Vertex& u, const Vertex& v, std::int64_t max_volume) {
  std::int32_t r = 8;
  for (int a = 0; a < cfg.dim(); ++a) r = std::max<std::int32_t>(r, 2 * std::abs(v[a] - u[a]) + 4);
  for (;;) {
    Vertex lo = u, hi = u;
    for (int a = 0; a < cfg.dim(); ++a) {
      lo[a] -= r;
      hi[a] += r;
    }
    const Box box(cfg.dim(), lo, hi);
    if (box.volume() > max_volume) throw BoxExhausted("passage_time_auto: box volume limit reached");
    try {
      return passage_time(cfg.with_box(box), u, v);
    } catch (const BoxExhausted&) {
      r *= 2;
    }
  }
}

std::vector<std::int64_t> passage_times_from_origin(const Configuration& cfg, const Box& box,
                                                    std::span<const Vertex> targets) {
  HashedWeights w(cfg, box);
  std::vector<std::int32_t> dist(static_cast<std::size_t>(box.volume()), kUnreached);
  std::vector<std::uint8_t> is_target(dist.size(), 0);
  std::size_t remaining = 0;
  for (const auto& t : targets) {
    if (!box.contains(t)) throw InvalidArgument("passage_times_from_origin: target outside box");
    auto& flag = is_target[static_cast<std::size_t>(box.index(t))];
    if (!flag) ++remaining;
    flag = 1;
  }
  const std::int64_t src[] = {box.index(Vertex{})};
  std::int32_t face_level = kUnreached;
  std::int32_t last_level = 0;
  if (remaining > 0) {
    zero_one_bfs(box, std::span<std::int32_t>(dist), std::span<const std::int64_t>(src), kUnreached - 1, w,
                 AllowAll{}, [&](std::int64_t i, const Vertex& x, std::int32_t level) {
                   if (face_level == kUnreached && box.on_face(x)) face_level = level;
                   if (is_target[static_cast<std::size_t>(i)]) {
                     last_level = level;
                     if (--remaining == 0) return false;
                   }
                   return true;
                 });
  }
  if (remaining > 0 || face_level < last_level) {
    throw BoxExhausted("passage_times_from_origin: search reached the bounding box");
  }
  std::vector<std::int64_t> out;
  out.reserve(targets.size());
  for (const auto& t : targets) out.push_back(dist[static_cast<std::size_t>(box.index(t))]);
  return out;
}

BoundaryReport verify_boundary_times(const Ball& ball) {
  BoundaryReport r;
  const Box& box = ball.box();
  for (auto i : ball.inner_boundary()) {
    ++r.inner_checked;
    if (ball.time_at(i) != ball.t()) {
      r.violations.push_back({box.vertex(i), ball.time_at(i), ball.t(), false});
    }
  }
  for (auto i : ball.outer_boundary()) {
    ++r.outer_checked;
    if (ball.time_at(i) != ball.t() + 1) {
      r.violations.push_back({box.vertex(i), ball.time_at(i), ball.t() + 1, true});
    }
  }
  r.pass = r.violations.empty();
  return r;
}

bool verify_connected(const Ball& ball) {
  const Box& box = ball.box();
  if (!ball.contains(Vertex{})) return false;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(box.volume()), 0);
  std::vector<std::int64_t> stack{box.index(Vertex{})};
  seen[static_cast<std::size_t>(stack.back())] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    ++reached;
    for_each_neighbor(box, i, box.vertex(i), [&](std::int64_t n) {
      if (!seen[static_cast<std::size_t>(n)] && ball.contains_index(n)) {
        seen[static_cast<std::size_t>(n)] = 1;
        stack.push_back(n);
      }
    });
  }
  return reached == ball.size();
}

namespace {

// Original weights on kept edges, resampled weights elsewhere. An edge is
// kept when both endpoints are in `keep`; with `invert` it is kept unless
// both endpoints are in `keep`.
struct MixedWeights {
  const HashedWeights* original;
  const HashedWeights* resampled;
  const std::vector<std::uint8_t>* keep;
  const Box* box;
  bool invert = false;

  int operator()(std::int64_t base_index, const Vertex& base, int axis) const {
    const std::int64_t other = base_index + box->stride(axis);
    const bool inside = (*keep)[static_cast<std::size_t>(base_index)] && (*keep)[static_cast<std::size_t>(other)];
    return inside != invert ? (*original)(base_index, base, axis) : (*resampled)(base_index, base, axis);
  }
};

}  // namespace

LocalityReport verify_locality(const Configuration& cfg, std::int32_t t, std::uint64_t resample_seed,
                               LocalityControl control) {
  const Ball kappa = grow_ball_auto(cfg, t, radius_for(cfg.box()));
  const Box& box = kappa.box();
  const Configuration boxed = cfg.with_box(box);
  const Configuration other = boxed.with_seed(resample_seed);
  const HashedWeights original(boxed, box);
  const HashedWeights resampled(other, box);

  std::vector<std::uint8_t> keep(static_cast<std::size_t>(box.volume()), 0);
  for (auto i : kappa.members()) keep[static_cast<std::size_t>(i)] = 1;
  MixedWeights w{&original, &resampled, &keep, &box};
  if (control == LocalityControl::kResampleOutside) {
    for (auto i : kappa.outer_boundary()) keep[static_cast<std::size_t>(i)] = 1;
  } else {
    w.invert = true;
  }

  LocalityReport r;
  r.ball_size = kappa.size();
  Ball again;
  try {
    again = grow_ball_with(box, t, w, nullptr);
  } catch (const BoxExhausted&) {
    // The resampled ball escaped the box, so it differs from kappa.
    r.unchanged = false;
    r.resampled_ball_size = 0;
    r.symmetric_difference = kappa.size();
    return r;
  }
  r.resampled_ball_size = again.size();
  std::size_t diff = 0;
  for (auto i : kappa.members()) diff += again.contains_index(i) ? 0 : 1;
  for (auto i : again.members()) diff += kappa.contains_index(i) ? 0 : 1;
  r.symmetric_difference = diff;
  r.unchanged = diff == 0;
  return r;
}

}  // namespace fpp
