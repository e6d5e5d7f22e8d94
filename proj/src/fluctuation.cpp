#include "fpp/fluctuation.hpp"

#include <algorithm>
#include <cmath>

#include "fpp/simd/kernels.hpp"

namespace fpp {

namespace {

// One axis pass of the lower-envelope transform over a strided line.
void edt_line(std::int64_t* line, std::int64_t stride, std::int64_t n, std::vector<std::int64_t>& f,
              std::vector<std::int64_t>& v, std::vector<double>& z) {
  f.resize(static_cast<std::size_t>(n));
  for (std::int64_t q = 0; q < n; ++q) f[static_cast<std::size_t>(q)] = line[q * stride];
  v.resize(static_cast<std::size_t>(n));
  z.resize(static_cast<std::size_t>(n) + 1);
  std::int64_t k = -1;
  for (std::int64_t q = 0; q < n; ++q) {
    const std::int64_t fq = f[static_cast<std::size_t>(q)];
    if (fq == kNoFeature) continue;
    double s = 0;
    while (k >= 0) {
      const std::int64_t p = v[static_cast<std::size_t>(k)];
      const std::int64_t fp = f[static_cast<std::size_t>(p)];
      s = (static_cast<double>(fq + q * q) - static_cast<double>(fp + p * p)) / static_cast<double>(2 * (q - p));
      if (s > z[static_cast<std::size_t>(k)]) break;
      --k;
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = k == 0 ? -HUGE_VAL : s;
    z[static_cast<std::size_t>(k) + 1] = HUGE_VAL;
  }
  if (k < 0) return;  // no finite entry on this line
  std::int64_t j = 0;
  for (std::int64_t q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(j) + 1] < static_cast<double>(q)) ++j;
    const std::int64_t p = v[static_cast<std::size_t>(j)];
    line[q * stride] = (q - p) * (q - p) + f[static_cast<std::size_t>(p)];
  }
}

}  // namespace

std::vector<std::int64_t> squared_distance_transform(const Box& box, std::span<const std::uint8_t> features) {
  if (features.size() != static_cast<std::size_t>(box.volume())) throw InvalidArgument("distance transform: size mismatch");
  std::vector<std::int64_t> out(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) out[i] = features[i] ? 0 : kNoFeature;
  std::vector<std::int64_t> f, v;
  std::vector<double> z;
  for (int a = 0; a < box.dim(); ++a) {
    const std::int64_t n = box.extent(a);
    const std::int64_t stride = box.stride(a);
    // Line starts: every index whose coordinate along `a` is the lowest.
    for (std::int64_t i = 0; i < box.volume(); ++i) {
      if ((i / stride) % n != 0) continue;
      edt_line(out.data() + i, stride, n, f, v, z);
    }
  }
  return out;
}

namespace {

struct Common {
  Box box;
  std::vector<std::uint8_t> in_ball;
  std::vector<std::uint8_t> in_gamma;
};

Common rasterize(const Ball& ball, const Region& region) {
  if (ball.dim() != region.dim()) throw InvalidArgument("fluctuation: dimension mismatch");
  Common c;
  c.box = ball.box().hull(region.box()).padded(1);
  const auto vol = static_cast<std::size_t>(c.box.volume());
  c.in_ball.assign(vol, 0);
  c.in_gamma.assign(vol, 0);
  for (auto i : ball.members()) c.in_ball[static_cast<std::size_t>(c.box.index(ball.box().vertex(i)))] = 1;
  for (auto i : region.members()) c.in_gamma[static_cast<std::size_t>(c.box.index(region.box().vertex(i)))] = 1;
  return c;
}

}  // namespace

FluctuationReport fluctuation(const Ball& ball, const Region& region) {
  const Common c = rasterize(ball, region);
  const auto& k = simd::active();
  const auto vol = c.in_ball.size();

  const auto to_gamma = squared_distance_transform(c.box, c.in_gamma);
  std::vector<std::uint8_t> outside(vol), missing(vol);
  for (std::size_t i = 0; i < vol; ++i) {
    outside[i] = c.in_gamma[i] ? 0 : 1;
    missing[i] = (c.in_gamma[i] && !c.in_ball[i]) ? 1 : 0;
  }
  const auto to_outside = squared_distance_transform(c.box, outside);

  FluctuationReport r;
  r.t = ball.t();
  r.l_out_sq = k.masked_max(to_gamma.data(), c.in_ball.data(), vol, 0);
  r.l_in_sq = k.masked_max(to_outside.data(), missing.data(), vol, 0);
  r.l_out = std::sqrt(static_cast<double>(r.l_out_sq));
  r.l_in = std::sqrt(static_cast<double>(r.l_in_sq));
  r.F = std::sqrt(static_cast<double>(r.F_sq()));
  return r;
}

SandwichReport verify_sandwich(const Ball& ball, const Region& region, std::int64_t f_sq) {
  const Common c = rasterize(ball, region);
  const auto vol = c.in_ball.size();
  std::vector<std::uint8_t> outside(vol);
  for (std::size_t i = 0; i < vol; ++i) outside[i] = c.in_gamma[i] ? 0 : 1;
  const auto to_gamma = squared_distance_transform(c.box, c.in_gamma);
  const auto to_outside = squared_distance_transform(c.box, outside);
  SandwichReport r;
  for (std::size_t i = 0; i < vol; ++i) {
    const bool inner = c.in_gamma[i] && to_outside[i] > f_sq;
    const bool outer = to_gamma[i] <= f_sq;
    r.inner_size += inner ? 1 : 0;
    r.outer_size += outer ? 1 : 0;
    if (inner && !c.in_ball[i]) r.inner_ok = false;
    if (c.in_ball[i] && !outer) r.outer_ok = false;
  }
  return r;
}

}  // namespace fpp
