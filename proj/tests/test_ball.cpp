#include <doctest.h>

#include <random>
#include <set>

#include "fpp/ball.hpp"
#include "oracles.hpp"

using namespace fpp;

TEST_CASE("p = 0 ball is the diamond") {
  for (int t : {0, 1, 5, 17}) {
    const Configuration cfg(2, 0.0, 1, Box::centered(2, t + 2));
    const Ball b = grow_ball(cfg, t);
    CHECK(b.size() == static_cast<std::size_t>(2 * t * t + 2 * t + 1));
    CHECK(b.inner_boundary().size() == static_cast<std::size_t>(t == 0 ? 1 : 4 * t));
    CHECK(b.outer_boundary().size() == static_cast<std::size_t>(4 * t + 4));
  }
  const Configuration c3(3, 0.0, 1, Box::centered(3, 6));
  CHECK(grow_ball(c3, 3).size() == 63u);  // (2t+1)(2t^2+2t+3)/3
}

TEST_CASE("ball equals the Dijkstra ball") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = trial % 4 == 0 ? 3 : 2;
    const double p = d == 3 ? 0.05 + 0.04 * static_cast<double>(trial % 5) : 0.05 + 0.1 * static_cast<double>(trial % 5);
    const auto t = static_cast<std::int32_t>(2 + rng() % 8);
    const Configuration cfg(d, p, rng(), Box::centered(d, 1));
    const Ball b = grow_ball_auto(cfg, t);
    const auto ref = oracle::ball(cfg, b.box(), t);
    std::set<Vertex> got;
    for (auto i : b.members()) got.insert(b.box().vertex(i));
    CHECK(got == ref);
    CHECK(verify_boundary_times(b).pass);
    CHECK(verify_connected(b));
  }
}

TEST_CASE("boundary checker catches a corrupted time") {
  const Configuration cfg(2, 0.3, 8, Box::centered(2, 1));
  Ball b = grow_ball_auto(cfg, 10);
  REQUIRE(verify_boundary_times(b).pass);
  const Vertex v = b.box().vertex(b.inner_boundary()[0]);
  b.corrupt_time(v, 9);
  const auto r = verify_boundary_times(b);
  CHECK_FALSE(r.pass);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].vertex == v);
}

TEST_CASE("growth in a small box reports exhaustion") {
  const Configuration cfg(2, 0.2, 1, Box::centered(2, 3));
  CHECK_THROWS_AS(grow_ball(cfg, 10), BoxExhausted);
  CHECK_THROWS_AS(grow_ball_auto(cfg, 50, 0, 1000), BoxExhausted);
  CHECK_THROWS_AS(grow_ball(cfg, -1), InvalidArgument);
}

TEST_CASE("passage times match the Dijkstra oracle") {
  std::mt19937_64 rng(5);
  int certified_batches = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const double p = 0.1 + 0.05 * static_cast<double>(trial % 8);
    const Box box = Box::centered(2, 10);
    const Configuration cfg(2, p, rng(), box);
    Vertex u{}, v{};
    for (int a = 0; a < 2; ++a) {
      u[a] = static_cast<std::int32_t>(rng() % 9) - 4;
      v[a] = static_cast<std::int32_t>(rng() % 9) - 4;
    }
    const auto big = Box::centered(2, 40);
    const auto ref = oracle::passage_time_certified(cfg, u, v);
    CHECK(passage_time_auto(cfg, u, v) == ref);
    std::int64_t boxed = -1;
    try {
      boxed = passage_time(cfg, u, v);
    } catch (const BoxExhausted&) {
      // allowed: the 21x21 box could not certify
    }
    if (boxed >= 0) CHECK(boxed == ref);
    const std::vector<Vertex> targets{u, v};
    try {
      const auto all = passage_times_from_origin(cfg.with_box(big), big, targets);
      CHECK(all[0] == oracle::passage_time_certified(cfg, Vertex{}, u));
      CHECK(all[1] == oracle::passage_time_certified(cfg, Vertex{}, v));
      ++certified_batches;
    } catch (const BoxExhausted&) {
    }
  }
  CHECK(certified_batches >= 50);
}

TEST_CASE("locality: edges away from the ball do not matter") {
  const Configuration cfg(2, 0.25, 21, Box::centered(2, 1));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto r = verify_locality(cfg, 15, 1000 + s);
    CHECK(r.unchanged);
    CHECK(r.symmetric_difference == 0);
  }
  int changed = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    changed += !verify_locality(cfg, 15, 2000 + s, LocalityControl::kResampleInterior).unchanged;
  }
  CHECK(changed >= 1);
}

TEST_CASE("synthetic ball from vertices") {
  std::vector<std::pair<Vertex, std::int32_t>> pts;
  pts.push_back({Vertex{}, 0});
  Vertex e{};
  e[0] = 1;
  pts.push_back({e, 1});
  const Ball b = Ball::from_vertices(Box::centered(2, 3), 1, pts);
  CHECK(b.size() == 2);
  CHECK(b.contains(e));
  CHECK(b.outer_boundary().size() == 6);
}
