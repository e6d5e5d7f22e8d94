#include "fpp/shape.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "fpp/ball.hpp"
#include "fpp/parallel.hpp"
#include "fpp/stats.hpp"

namespace fpp {

std::vector<std::vector<double>> direction_ladder(int d, int n_dirs) {
  if (n_dirs < 1) throw InvalidArgument("direction_ladder: n_dirs must be >= 1");
  std::vector<std::vector<double>> out;
  if (d == 2) {
    for (int i = 0; i < n_dirs; ++i) {
      const double th = n_dirs == 1 ? 0.0 : (std::numbers::pi / 4) * i / (n_dirs - 1);
      out.push_back({std::cos(th), std::sin(th)});
    }
    return out;
  }
  if (d == 3) {
    int m = 0;
    while ((m + 1) * (m + 2) / 2 < n_dirs) ++m;
    const double r2 = 1 / std::sqrt(2.0), r3 = 1 / std::sqrt(3.0);
    const double v1[3] = {1, 0, 0}, v2[3] = {r2, r2, 0}, v3[3] = {r3, r3, r3};
    if (m == 0) return {{1, 0, 0}};
    for (int i = m; i >= 0; --i) {
      for (int j = m - i; j >= 0; --j) {
        const int k = m - i - j;
        std::vector<double> x(3);
        double norm = 0;
        for (int a = 0; a < 3; ++a) {
          x[static_cast<std::size_t>(a)] = (i * v1[a] + j * v2[a] + k * v3[a]) / m;
          norm += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
        }
        norm = std::sqrt(norm);
        for (auto& c : x) c /= norm;
        out.push_back(std::move(x));
      }
    }
    return out;
  }
  throw InvalidArgument("direction_ladder: shape estimation supports d = 2 and d = 3");
}

std::vector<std::vector<double>> symmetric_images(std::span<const double> x) {
  const std::size_t d = x.size();
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  std::vector<std::vector<double>> out;
  do {
    for (std::size_t signs = 0; signs < (std::size_t{1} << d); ++signs) {
      std::vector<double> y(d);
      for (std::size_t i = 0; i < d; ++i) {
        const double c = x[perm[i]];
        y[i] = (signs >> i) & 1 ? -c : c;
        if (y[i] == 0) y[i] = 0;  // drop negative zero
      }
      out.push_back(std::move(y));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vertex nearest_lattice_point(std::span<const double> y) {
  Vertex v{};
  for (std::size_t i = 0; i < y.size(); ++i) v[static_cast<int>(i)] = static_cast<std::int32_t>(std::ceil(y[i] - 0.5));
  return v;
}

std::vector<std::int64_t> geometric_ladder(std::int64_t n_max) {
  if (n_max < 1) throw InvalidArgument("geometric_ladder: n_max must be >= 1");
  std::vector<std::int64_t> out{n_max};
  while (out.back() / 2 >= 8) out.push_back(out.back() / 2);
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

// One search per replicate serves every (direction, ladder n, image) target.
std::vector<DirectionEstimate> estimate_directions(int d, double p, const std::vector<std::vector<double>>& dirs,
                                                   std::int64_t n_max, int reps, std::uint64_t seed_base,
                                                   int workers) {
  if (reps < 1) throw InvalidArgument("shape: reps must be >= 1");
  const auto ladder = geometric_ladder(n_max);
  std::vector<Vertex> targets;
  std::map<Vertex, std::size_t> target_id;
  // slots[dir][rung] = target ids of the images
  std::vector<std::vector<std::vector<std::size_t>>> slots(dirs.size());
  std::int32_t reach = 0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const auto images = symmetric_images(dirs[i]);
    for (auto n : ladder) {
      std::vector<std::size_t> ids;
      for (const auto& y : images) {
        std::vector<double> ny(y.size());
        for (std::size_t a = 0; a < y.size(); ++a) ny[a] = static_cast<double>(n) * y[a];
        const Vertex v = nearest_lattice_point(ny);
        for (int a = 0; a < d; ++a) reach = std::max(reach, std::abs(v[a]));
        auto [it, fresh] = target_id.emplace(v, targets.size());
        if (fresh) targets.push_back(v);
        ids.push_back(it->second);
      }
      slots[i].push_back(std::move(ids));
    }
  }

  std::vector<std::vector<std::int64_t>> times(static_cast<std::size_t>(reps));
  parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t r) {
    std::int32_t radius = reach + 4;
    for (;;) {
      const Configuration cfg(d, p, seed_base + r, Box::centered(d, radius));
      try {
        times[r] = passage_times_from_origin(cfg, cfg.box(), targets);
        return;
      } catch (const BoxExhausted&) {
        if (radius > (1 << 20)) throw;
        radius *= 2;
      }
    }
  });

  std::vector<DirectionEstimate> out(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    out[i].direction = dirs[i];
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      std::vector<double> per_rep(static_cast<std::size_t>(reps));
      const auto& ids = slots[i][k];
      for (std::size_t r = 0; r < per_rep.size(); ++r) {
        double s = 0;
        for (auto id : ids) s += static_cast<double>(times[r][id]);
        per_rep[r] = s / static_cast<double>(ids.size()) / static_cast<double>(ladder[k]);
      }
      const Moments m = moments(per_rep);
      out[i].ladder.push_back({ladder[k], m.mean, m.se});
    }
    out[i].mu_hat = out[i].ladder.back().mean;
    out[i].se = out[i].ladder.back().se;
    out[i].n_used = ladder.back();
  }
  return out;
}

}  // namespace

DirectionEstimate estimate_time_constant(int d, double p, std::span<const double> x, std::int64_t n_max, int reps,
                                         std::uint64_t seed_base, int workers) {
  if (static_cast<int>(x.size()) != d) throw InvalidArgument("estimate_time_constant: direction has wrong dimension");
  std::vector<double> dir(x.begin(), x.end());
  double norm = 0;
  for (double c : dir) norm += c * c;
  norm = std::sqrt(norm);
  if (!(norm > 0)) throw InvalidArgument("estimate_time_constant: zero direction");
  for (auto& c : dir) c /= norm;
  return estimate_directions(d, p, {dir}, n_max, reps, seed_base, workers).front();
}

ConvexPolytope shape_polytope(int d, const std::vector<DirectionEstimate>& dirs) {
  std::vector<double> pts;
  for (const auto& e : dirs) {
    if (!(e.mu_hat > 0)) throw InvalidArgument("shape: mu_hat must be positive to build a polytope");
    for (const auto& y : symmetric_images(e.direction)) {
      for (double c : y) pts.push_back(c / e.mu_hat);
    }
  }
  return ConvexPolytope::hull(d, pts);
}

ShapeEstimate estimate_shape(const ShapeOptions& opt) {
  const Configuration probe(opt.d, opt.p, opt.seed_base, Box::centered(opt.d, 1));
  if (opt.enforce_subcritical) probe.require_subcritical(opt.p_c_override);
  ShapeEstimate s;
  s.d = opt.d;
  s.p = opt.p;
  s.n_max = opt.n_max;
  s.reps = opt.reps;
  s.seed_base = opt.seed_base;
  s.directions = estimate_directions(opt.d, opt.p, direction_ladder(opt.d, opt.n_dirs), opt.n_max, opt.reps,
                                     opt.seed_base, opt.workers);
  s.polytope = shape_polytope(opt.d, s.directions);
  return s;
}

}  // namespace fpp
