#include <doctest.h>

#include <random>
#include <vector>

#include "fpp/polytope.hpp"
#include "fpp/region.hpp"
#include "fpp/simd/kernels.hpp"
#include "fpp/weights.hpp"

using namespace fpp;

namespace {

const simd::Kernels* wide() { return simd::avx2_kernels(); }

}  // namespace

TEST_CASE("scalar kernels agree with the per-edge hash") {
  const auto& k = simd::scalar_kernels();
  std::vector<std::uint64_t> out(37);
  k.edge_bits_row(0x1234, -5, out.size(), out.data());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i] == hash::edge_bits(0x1234, -5 + static_cast<std::int32_t>(i)));
  }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  if (wide() == nullptr) {
    MESSAGE("AVX2 kernels unavailable; equivalence not exercised");
    return;
  }
  const auto& s = simd::scalar_kernels();
  const auto& v = *wide();
  std::mt19937_64 rng(7);
  for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 31, 64, 67, 200}) {
    const std::uint64_t key = rng();
    const auto x0 = static_cast<std::int32_t>(rng() % 1000) - 500;
    std::vector<std::uint64_t> a(n), b(n);
    s.edge_bits_row(key, x0, n, a.data());
    v.edge_bits_row(key, x0, n, b.data());
    CHECK(a == b);

    const std::uint64_t thr = hash::threshold(0.37);
    std::vector<std::uint8_t> wa(n, 2), wb(n, 2);
    s.edge_weight_row(key, x0, n, thr, 1, wa.data());
    v.edge_weight_row(key, x0, n, thr, 1, wb.data());
    CHECK(wa == wb);

    std::vector<std::uint8_t> ta(n, 0), tb(n, 0);
    s.threshold_row(a.data(), n, thr, 4, ta.data());
    v.threshold_row(a.data(), n, thr, 4, tb.data());
    CHECK(ta == tb);

    std::vector<std::int32_t> times(n);
    for (auto& t : times) t = static_cast<std::int32_t>(rng() % 40);
    if (n > 2) times[1] = INT32_MAX;
    std::vector<std::int64_t> sa(n, 5), sb(n, 5);
    std::vector<std::uint32_t> ua(n, 1), ub(n, 1);
    s.accumulate_times(times.data(), n, 30, sa.data(), ua.data());
    v.accumulate_times(times.data(), n, 30, sb.data(), ub.data());
    CHECK(sa == sb);
    CHECK(ua == ub);

    std::uniform_real_distribution<double> U(-2, 2);
    std::vector<double> slope(5), offset(5);
    for (auto& x : slope) x = U(rng);
    for (auto& x : offset) x = U(rng);
    std::vector<double> ha(n), hb(n);
    s.halfspace_max_row(slope.data(), offset.data(), 5, x0, n, ha.data());
    v.halfspace_max_row(slope.data(), offset.data(), 5, x0, n, hb.data());
    CHECK(ha == hb);

    std::vector<std::int64_t> vals(n);
    std::vector<std::uint8_t> mask(n);
    for (std::size_t i = 0; i < n; ++i) {
      vals[i] = static_cast<std::int64_t>(rng() % 100000) - 50000;
      mask[i] = rng() % 3 == 0;
    }
    CHECK(s.masked_max(vals.data(), mask.data(), n, -7) == v.masked_max(vals.data(), mask.data(), n, -7));
  }
}

TEST_CASE("grids and rasterized regions do not depend on the kernel table") {
  if (wide() == nullptr) return;
  const Configuration cfg(3, 0.2, 11, Box::centered(3, 9));
  const auto ga = WeightGrid::from_config(cfg, cfg.box(), simd::scalar_kernels());
  const auto gb = WeightGrid::from_config(cfg, cfg.box(), *wide());
  CHECK(std::equal(ga.raw().begin(), ga.raw().end(), gb.raw().begin(), gb.raw().end()));

  const auto ba = EdgeBitsGrid::from_config(cfg, cfg.box(), simd::scalar_kernels());
  const auto bb = EdgeBitsGrid::from_config(cfg, cfg.box(), *wide());
  for (int a = 0; a < 3; ++a) {
    CHECK(std::equal(ba.plane(a).begin(), ba.plane(a).end(), bb.plane(a).begin(), bb.plane(a).end()));
  }
  const auto ta = WeightGrid::from_bits(ba, 0.2, simd::scalar_kernels());
  const auto tb = WeightGrid::from_bits(ba, 0.2, *wide());
  CHECK(std::equal(ta.raw().begin(), ta.raw().end(), tb.raw().begin(), tb.raw().end()));
  CHECK(std::equal(ta.raw().begin(), ta.raw().end(), ga.raw().begin(), ga.raw().end()));

  const std::vector<double> pts{1.0, 0.1, 0.2, 1.1, -0.9, 0.3, -0.2, -1.0, 0.7, 0.7};
  const auto poly = ConvexPolytope::hull(2, pts);
  const auto ra = Region::scaled_shape(poly, 37.3, simd::scalar_kernels());
  const auto rb = Region::scaled_shape(poly, 37.3, *wide());
  CHECK(ra.box() == rb.box());
  CHECK(std::equal(ra.mask().begin(), ra.mask().end(), rb.mask().begin(), rb.mask().end()));
}

TEST_CASE("weight grid matches per-edge weights") {
  const Configuration cfg(2, 0.35, 4, Box::centered(2, 12));
  const auto g = WeightGrid::from_config(cfg, cfg.box());
  const Box& b = cfg.box();
  for (std::int64_t i = 0; i < b.volume(); ++i) {
    for (int a = 0; a < 2; ++a) CHECK(g.weight(i, a) == edge_weight(cfg, EdgeId{b.vertex(i), a}));
  }
}
