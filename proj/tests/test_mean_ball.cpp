#include <doctest.h>

#include <cmath>
#include <vector>

#include "fpp/ball.hpp"
#include "fpp/mean_ball.hpp"
#include "oracles.hpp"

using namespace fpp;

namespace {

ConvexPolytope diamond2() {
  const std::vector<double> pts{1, 0, -1, 0, 0, 1, 0, -1};
  return ConvexPolytope::hull(2, pts);
}

}  // namespace

TEST_CASE("p = 0 mean ball is the diamond") {
  MeanBallOptions o;
  o.p = 0.0;
  o.t = 7;
  o.reps = 3;
  const MeanBall mb = empirical_mean_ball(o);
  CHECK(mb.size == 2u * 49 + 2 * 7 + 1);
  CHECK(mb.ambiguous == 0u);
  CHECK(mb.connected);
  CHECK(shape_containment(mb, diamond2()) == 1.0);
  CHECK(mean_set_in_shape(mb, diamond2()) == 1.0);
}

TEST_CASE("one replicate gives that replicate's ball") {
  MeanBallOptions o;
  o.p = 0.3;
  o.t = 9;
  o.reps = 1;
  o.seed_base = 42;
  const MeanBall mb = empirical_mean_ball(o);
  const Configuration cfg(2, 0.3, 42, mb.box);
  const Ball b = grow_ball_auto(cfg, 9);
  CHECK(mb.size == b.size());
  for (auto i : b.members()) CHECK(mb.members[static_cast<std::size_t>(mb.box.index(b.box().vertex(i)))] == 1);
}

TEST_CASE("mean times match an averaged oracle") {
  MeanBallOptions o;
  o.p = 0.25;
  o.t = 6;
  o.reps = 5;
  o.seed_base = 100;
  const MeanBall mb = empirical_mean_ball(o);
  for (const Vertex v : {Vertex{2, 1}, Vertex{-3, 0}, Vertex{0, 4}, Vertex{1, -1}}) {
    std::int64_t sum = 0;
    bool capped = false;
    for (int r = 0; r < o.reps; ++r) {
      const Configuration cfg(2, 0.25, o.seed_base + static_cast<std::uint64_t>(r), mb.box);
      const auto tv = oracle::passage_time_certified(cfg, Vertex{}, v);
      if (tv > mb.cap) capped = true;
      sum += tv;
    }
    const double m = mb.mean_at(mb.box.index(v));
    if (capped) {
      CHECK(std::isnan(m));
    } else {
      CHECK(m == doctest::Approx(static_cast<double>(sum) / o.reps));
    }
  }
}

TEST_CASE("mean ball does not depend on the worker count") {
  MeanBallOptions o;
  o.p = 0.25;
  o.t = 12;
  o.reps = 7;
  const MeanBall a = empirical_mean_ball(o);
  o.workers = 3;
  const MeanBall b = empirical_mean_ball(o);
  CHECK(a.sums == b.sums);
  CHECK(a.unknown == b.unknown);
  CHECK(a.members == b.members);
}

TEST_CASE("mean set contains the diamond") {
  // T(0, x) <= |x|_1 in every configuration.
  MeanBallOptions o;
  o.p = 0.2;
  o.t = 10;
  o.reps = 20;
  const MeanBall mb = empirical_mean_ball(o);
  CHECK(shape_containment(mb, diamond2()) == 1.0);
  CHECK(mb.size > 2u * 100 + 2 * 10 + 1);
}

TEST_CASE("mean ball rejects bad options") {
  MeanBallOptions o;
  o.reps = 0;
  CHECK_THROWS_AS(empirical_mean_ball(o), InvalidArgument);
  o.reps = 1;
  o.t = -1;
  CHECK_THROWS_AS(empirical_mean_ball(o), InvalidArgument);
}
