#include <doctest.h>

#include <cmath>
#include <vector>

#include "fpp/polytope.hpp"
#include "fpp/region.hpp"

using namespace fpp;

namespace {

ConvexPolytope diamond_poly(int d) {
  std::vector<double> pts;
  for (int a = 0; a < d; ++a) {
    for (double s : {1.0, -1.0}) {
      for (int b = 0; b < d; ++b) pts.push_back(a == b ? s : 0.0);
    }
  }
  return ConvexPolytope::hull(d, pts);
}

}  // namespace

TEST_CASE("2d hull drops interior and collinear points") {
  const std::vector<double> pts{1, 1, -1, 1, -1, -1, 1, -1, 0, 1, 0.2, 0.3, 1, 0};
  const auto P = ConvexPolytope::hull(2, pts);
  CHECK(P.vertex_count() == 4);
  CHECK(P.facets() == 4);
  const std::vector<double> x{0.5, 0.25};
  CHECK(P.gauge(x) == doctest::Approx(0.5));
  CHECK(P.contains(x));
  const std::vector<double> y{2, 0};
  CHECK_FALSE(P.contains(y));
  CHECK(P.contains(y, 2.0));
  CHECK(P.max_abs_coordinate() == 1.0);
}

TEST_CASE("3d hulls of the cube and the octahedron") {
  std::vector<double> cube;
  for (int i = 0; i < 8; ++i) {
    for (int a = 0; a < 3; ++a) cube.push_back((i >> a) & 1 ? 1.0 : -1.0);
  }
  cube.insert(cube.end(), {0.1, 0.2, 0.3, 1, 0, 0});  // interior and face points
  const auto C = ConvexPolytope::hull(3, cube);
  CHECK(C.facets() == 6);
  CHECK(C.vertex_count() == 8);
  const auto O = diamond_poly(3);
  CHECK(O.facets() == 8);
  CHECK(O.vertex_count() == 6);
  const std::vector<double> x{0.2, -0.3, 0.1};
  CHECK(O.gauge(x) == doctest::Approx(0.6));
  CHECK(C.gauge(x) == doctest::Approx(0.3));
}

TEST_CASE("degenerate hulls are rejected") {
  const std::vector<double> line{1, 0, -1, 0, 2, 0};
  CHECK_THROWS_AS(ConvexPolytope::hull(2, line), InvalidArgument);
  const std::vector<double> off{1, 1, 2, 1, 1, 2};  // origin outside
  CHECK_THROWS_AS(ConvexPolytope::hull(2, off), InvalidArgument);
}

TEST_CASE("diamond region") {
  for (int r : {0, 1, 4, 10}) {
    const auto R = Region::diamond(2, r);
    CHECK(R.size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
    CHECK(R.boundary().size() == static_cast<std::size_t>(r == 0 ? 1 : 4 * r));
    CHECK(R.kind() == RegionKind::kDiamond);
  }
  const auto R3 = Region::diamond(3, 2);
  CHECK(R3.size() == 25u);
}

TEST_CASE("box region and explicit sets") {
  Vertex lo{}, hi{};
  lo[0] = -2; lo[1] = -1;
  hi[0] = 3; hi[1] = 1;
  const auto B = Region::axis_box(2, lo, hi);
  CHECK(B.size() == 18u);
  CHECK(B.boundary().size() == 14u);
  Vertex lo2 = lo;
  lo2[0] = 1;
  CHECK_THROWS_AS(Region::axis_box(2, lo2, hi), InvalidArgument);  // origin outside

  Vertex a{}, b{};
  a[0] = 2;
  b[0] = 1;
  const std::vector<Vertex> gap{Vertex{}, a};
  CHECK_THROWS_AS(Region::explicit_set(2, gap), InvalidArgument);
  const std::vector<Vertex> ok{Vertex{}, a, b};
  const auto E = Region::explicit_set(2, ok);
  CHECK(E.size() == 3u);
  CHECK(E.boundary().size() == 3u);
}

TEST_CASE("scaled diamond polytope rasterizes to the diamond") {
  const auto P = diamond_poly(2);
  for (int r : {1, 5, 13}) {
    const auto S = Region::scaled_shape(P, r);
    const auto D = Region::diamond(2, r);
    CHECK(S.size() == D.size());
    for (auto i : D.members()) CHECK(S.contains(D.box().vertex(i)));
  }
  const auto P3 = diamond_poly(3);
  CHECK(Region::scaled_shape(P3, 4).size() == Region::diamond(3, 4).size());
}

TEST_CASE("regularity at lattice resolution") {
  const auto P = diamond_poly(2);
  CHECK(is_regular(Region::diamond(2, 20), P, 20));
  CHECK(is_regular(Region::diamond(2, 39), P, 20));
  CHECK_FALSE(is_regular(Region::diamond(2, 41), P, 20));
  CHECK_FALSE(is_regular(Region::diamond(2, 9), P, 20));
}
