#include "fpp/mean_ball.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "fpp/ball.hpp"
#include "fpp/parallel.hpp"
#include "fpp/simd/kernels.hpp"
#include "fpp/weights.hpp"

namespace fpp {

double MeanBall::mean_at(std::int64_t i) const {
  if (unknown[static_cast<std::size_t>(i)] > 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(sums[static_cast<std::size_t>(i)]) / reps;
}

Region MeanBall::region() const {
  // Keep the origin's component only.
  std::vector<std::uint8_t> keep(members.size(), 0);
  std::vector<std::int64_t> stack{box.index(Vertex{})};
  if (!members[static_cast<std::size_t>(stack.back())]) throw InvalidArgument("mean ball: origin is not a member");
  keep[static_cast<std::size_t>(stack.back())] = 1;
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    const Vertex v = box.vertex(i);
    for (int a = 0; a < box.dim(); ++a) {
      for (int s : {-1, 1}) {
        if ((s < 0 && v[a] == box.lo()[a]) || (s > 0 && v[a] == box.hi()[a])) continue;
        const auto n = i + s * box.stride(a);
        if (members[static_cast<std::size_t>(n)] && !keep[static_cast<std::size_t>(n)]) {
          keep[static_cast<std::size_t>(n)] = 1;
          stack.push_back(n);
        }
      }
    }
  }
  return Region::from_mask(box, keep, RegionKind::kExplicit);
}

MeanBall empirical_mean_ball(const MeanBallOptions& opt) {
  if (opt.reps < 1) throw InvalidArgument("mean ball: reps must be >= 1");
  if (opt.t < 0) throw InvalidArgument("mean ball: t must be >= 0");
  const auto cap = static_cast<std::int32_t>(std::ceil(opt.cap_factor * opt.t)) + opt.cap_extra;
  if (cap < opt.t) throw InvalidArgument("mean ball: cap below t");
  const auto& k = simd::active();

  std::int32_t radius = 2 * cap + 8;
  for (;;) {
    const Box box = Box::centered(opt.d, radius);
    const auto vol = static_cast<std::size_t>(box.volume());
    // Contiguous replicate chunks per worker; integer sums merge exactly.
    const int chunks = std::max(1, std::min(opt.workers, opt.reps));
    std::vector<std::vector<std::int64_t>> sums(static_cast<std::size_t>(chunks));
    std::vector<std::vector<std::uint32_t>> unknown(static_cast<std::size_t>(chunks));
    try {
      parallel_for(static_cast<std::size_t>(chunks), chunks, [&](std::size_t c) {
        sums[c].assign(vol, 0);
        unknown[c].assign(vol, 0);
        const std::size_t lo = c * static_cast<std::size_t>(opt.reps) / static_cast<std::size_t>(chunks);
        const std::size_t hi = (c + 1) * static_cast<std::size_t>(opt.reps) / static_cast<std::size_t>(chunks);
        for (std::size_t r = lo; r < hi; ++r) {
          const Configuration cfg(opt.d, opt.p, opt.seed_base + r, box);
          const HashedWeights w(cfg, box);
          const Ball b = grow_ball_with(box, cap, w, nullptr);
          const auto times = b.times();
          k.accumulate_times(times.data(), vol, cap, sums[c].data(), unknown[c].data());
        }
      });
    } catch (const BoxExhausted&) {
      if (box.volume() > (std::int64_t{1} << 28)) throw;
      radius *= 2;
      continue;
    }
    MeanBall mb;
    mb.t = opt.t;
    mb.reps = opt.reps;
    mb.cap = cap;
    mb.box = box;
    mb.sums = std::move(sums[0]);
    mb.unknown = std::move(unknown[0]);
    for (std::size_t c = 1; c < sums.size(); ++c) {
      for (std::size_t i = 0; i < vol; ++i) {
        mb.sums[i] += sums[c][i];
        mb.unknown[i] += unknown[c][i];
      }
    }
    mb.members.assign(vol, 0);
    const std::int64_t limit = static_cast<std::int64_t>(opt.t) * opt.reps;
    for (std::size_t i = 0; i < vol; ++i) {
      if (mb.unknown[i] == 0) {
        if (mb.sums[i] <= limit) {
          mb.members[i] = 1;
          ++mb.size;
        }
      } else if (mb.sums[i] + static_cast<std::int64_t>(mb.unknown[i]) * (cap + 1) <= limit) {
        ++mb.ambiguous;
      }
    }
    // Connectivity of the member set.
    std::size_t reached = 0;
    {
      std::vector<std::uint8_t> seen(vol, 0);
      std::vector<std::int64_t> stack;
      const auto o = box.index(Vertex{});
      if (mb.members[static_cast<std::size_t>(o)]) {
        stack.push_back(o);
        seen[static_cast<std::size_t>(o)] = 1;
      }
      while (!stack.empty()) {
        const auto i = stack.back();
        stack.pop_back();
        ++reached;
        const Vertex v = box.vertex(i);
        for (int a = 0; a < box.dim(); ++a) {
          for (int s : {-1, 1}) {
            if ((s < 0 && v[a] == box.lo()[a]) || (s > 0 && v[a] == box.hi()[a])) continue;
            const auto n = i + s * box.stride(a);
            if (mb.members[static_cast<std::size_t>(n)] && !seen[static_cast<std::size_t>(n)]) {
              seen[static_cast<std::size_t>(n)] = 1;
              stack.push_back(n);
            }
          }
        }
      }
    }
    mb.connected = reached == mb.size;
    return mb;
  }
}

double shape_containment(const MeanBall& mb, const ConvexPolytope& shape) {
  const Region target = Region::scaled_shape(shape, static_cast<double>(mb.t));
  std::size_t inside = 0;
  for (auto i : target.boundary()) {
    const Vertex v = target.box().vertex(i);
    if (mb.box.contains(v) && mb.members[static_cast<std::size_t>(mb.box.index(v))]) ++inside;
  }
  return target.boundary().empty() ? 1.0 : static_cast<double>(inside) / static_cast<double>(target.boundary().size());
}

double mean_set_in_shape(const MeanBall& mb, const ConvexPolytope& shape) {
  const Region g = mb.region();
  std::size_t inside = 0;
  std::vector<double> x(static_cast<std::size_t>(g.dim()));
  for (auto i : g.boundary()) {
    const Vertex v = g.box().vertex(i);
    for (int a = 0; a < g.dim(); ++a) x[static_cast<std::size_t>(a)] = v[a];
    if (shape.gauge(x) <= static_cast<double>(mb.t) * (1 + 1e-12)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(g.boundary().size());
}

}  // namespace fpp
