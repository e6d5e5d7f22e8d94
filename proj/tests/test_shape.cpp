#include <doctest.h>

#include <cmath>

#include "fpp/io.hpp"
#include "fpp/shape.hpp"

using namespace fpp;

TEST_CASE("direction ladders cover the fundamental domain") {
  const auto d2 = direction_ladder(2, 16);
  REQUIRE(d2.size() == 16);
  CHECK(d2.front()[0] == doctest::Approx(1.0));
  CHECK(d2.front()[1] == doctest::Approx(0.0));
  CHECK(d2.back()[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(d2.back()[1] == doctest::Approx(std::sqrt(0.5)));
  for (const auto& x : d2) {
    CHECK(x[0] >= x[1]);
    CHECK(x[1] >= 0);
  }
  const auto d3 = direction_ladder(3, 26);
  CHECK(d3.size() >= 26);
  for (const auto& x : d3) {
    CHECK(x[0] >= x[1] - 1e-12);
    CHECK(x[1] >= x[2] - 1e-12);
    CHECK(x[2] >= -1e-12);
    CHECK(std::hypot(x[0], x[1], x[2]) == doctest::Approx(1.0));
  }
}

TEST_CASE("symmetric images") {
  CHECK(symmetric_images(std::vector<double>{1, 0}).size() == 4);
  CHECK(symmetric_images(std::vector<double>{1, 1}).size() == 4);
  CHECK(symmetric_images(std::vector<double>{2, 1}).size() == 8);
  CHECK(symmetric_images(std::vector<double>{3, 2, 1}).size() == 48);
  CHECK(symmetric_images(std::vector<double>{1, 0, 0}).size() == 6);
}

TEST_CASE("nearest lattice point breaks ties downward") {
  CHECK(nearest_lattice_point(std::vector<double>{2.5, -0.5}) == Vertex{{2, -1}});
  CHECK(nearest_lattice_point(std::vector<double>{2.51, -0.49}) == Vertex{{3, 0}});
}

TEST_CASE("geometric ladder") {
  CHECK(geometric_ladder(512) == std::vector<std::int64_t>{8, 16, 32, 64, 128, 256, 512});
  CHECK(geometric_ladder(5) == std::vector<std::int64_t>{5});
  CHECK(geometric_ladder(20) == std::vector<std::int64_t>{10, 20});
}

TEST_CASE("p = 0 recovers the diamond") {
  const std::vector<double> x{1.0, 0.0};
  const auto e = estimate_time_constant(2, 0.0, x, 64, 2);
  CHECK(e.mu_hat == 1.0);
  CHECK(e.se == 0.0);
  const std::vector<double> diag{std::sqrt(0.5), std::sqrt(0.5)};
  const auto g = estimate_time_constant(2, 0.0, diag, 64, 2);
  CHECK(std::abs(g.mu_hat - std::sqrt(2.0)) <= 1.0 / 64);

  ShapeOptions o;
  o.p = 0.0;
  o.n_max = 64;
  o.reps = 2;
  o.n_dirs = 8;
  o.enforce_subcritical = false;
  const auto s = estimate_shape(o);
  for (std::size_t i = 0; i < s.polytope.vertex_count(); ++i) {
    const auto v = s.polytope.vertices().subspan(2 * i, 2);
    CHECK(std::abs(std::abs(v[0]) + std::abs(v[1]) - 1.0) <= 1.0 / 64);
  }
}

TEST_CASE("d = 2, p = 0.25 shape sits inside the norm envelope") {
  ShapeOptions o;
  o.p = 0.25;
  o.n_max = 64;
  o.reps = 20;
  o.n_dirs = 6;
  const auto s = estimate_shape(o);
  const double mu_axis = s.directions.front().mu_hat;
  CHECK(mu_axis > 0.2);
  CHECK(mu_axis < 1.0);
  // {|x|_1 <= 1/mu} <= B <= {|x|_inf <= 1/mu}, checked at vertices.
  const double r = 1.0 / mu_axis;
  const std::vector<double> axis{r * 0.98, 0};
  const std::vector<double> diag{r * 0.49, r * 0.49};
  CHECK(s.polytope.contains(axis));
  CHECK(s.polytope.contains(diag));
  CHECK(s.polytope.max_abs_coordinate() <= r * 1.02);

  // JSON round trip keeps the polytope.
  const auto back = shape_from_json(to_json(s));
  CHECK(back.polytope.facets() == s.polytope.facets());
  CHECK(back.directions.size() == s.directions.size());
  CHECK(back.directions[2].mu_hat == s.directions[2].mu_hat);
}

TEST_CASE("shape estimation is independent of the worker count") {
  ShapeOptions o;
  o.n_max = 32;
  o.reps = 6;
  o.n_dirs = 3;
  const auto a = estimate_shape(o);
  o.workers = 3;
  const auto b = estimate_shape(o);
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("shape estimation refuses supercritical p") {
  ShapeOptions o;
  o.p = 0.6;
  CHECK_THROWS_AS(estimate_shape(o), InvalidArgument);
}
