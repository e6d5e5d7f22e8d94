#include <doctest.h>

#include <random>

#include "fpp/russo.hpp"

using namespace fpp;

TEST_CASE("planted uniform in [p - h, p) gives delta = 1") {
  const Region region = Region::diamond(2, 1);
  UniformOverrides o;
  // The four edges at the origin; only the +x one is zero at p = 0.3.
  o[EdgeId{Vertex{}, 0}] = 0.29;
  o[EdgeId{Vertex{}, 1}] = 0.9;
  o[EdgeId{Vertex{{-1, 0}}, 0}] = 0.9;
  o[EdgeId{Vertex{{0, -1}}, 1}] = 0.9;
  const Configuration cfg = Configuration(2, 0.3, 1, region.box()).with_overrides(o);
  const auto c = coupled_delta(cfg, region, 0.02);
  CHECK(c.time_p == 0);
  CHECK(c.time_alt == 1);
  CHECK(c.delta == 1);
  CHECK(c.flip_bound == 1);
  CHECK(c.pivotal == 0);
  // Below the planted value nothing flips.
  CHECK(coupled_delta(cfg, region, 0.005).delta == 0);
}

TEST_CASE("coupling bounds hold per replicate") {
  const Region region = Region::diamond(2, 15);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) {
    const Configuration cfg(2, 0.3, rng(), region.box());
    const auto c = coupled_delta(cfg, region, 0.05);
    CHECK(c.delta >= 0);
    CHECK(c.delta <= c.flip_bound);
  }
}

TEST_CASE("tiny h leaves T unchanged") {
  const Region region = Region::diamond(2, 10);
  const Configuration cfg(2, 0.3, 8, region.box());
  CHECK(coupled_delta(cfg, region, 1e-12).delta == 0);
}

TEST_CASE("p = 1 is degenerate") {
  const auto r = derivative_report(1.0, 0.1, Region::diamond(2, 5), 4);
  CHECK(r.mean_delta == 0);
  CHECK(r.mean_K == 0);
}

TEST_CASE("one replicate leaves the stderr undefined") {
  const auto r = derivative_report(0.3, 0.02, Region::diamond(2, 8), 1);
  CHECK(r.deltas.size() == 1);
  CHECK_FALSE(r.stderr_defined);
  CHECK_FALSE(r.pass);
}

TEST_CASE("bad h is rejected") {
  const Region region = Region::diamond(2, 3);
  const Configuration cfg(2, 0.3, 1, region.box());
  CHECK_THROWS_AS(coupled_delta(cfg, region, 0.0), InvalidArgument);
  CHECK_THROWS_AS(coupled_delta(cfg, region, 0.4), InvalidArgument);
}

TEST_CASE("report is independent of the worker count") {
  const Region region = Region::diamond(2, 12);
  const auto a = derivative_report(0.3, 0.05, region, 30, 5, 1);
  const auto b = derivative_report(0.3, 0.05, region, 30, 5, 3);
  CHECK(a.deltas == b.deltas);
  CHECK(a.pivotals == b.pivotals);
  CHECK(a.z_score == b.z_score);
  CHECK(a.min_delta >= 0);
  CHECK(a.bound_violations == 0);
}
