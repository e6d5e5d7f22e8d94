#include "fpp/polytope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "fpp/lattice.hpp"

namespace fpp {

ConvexPolytope::ConvexPolytope(int d, std::vector<double> normals, std::vector<double> offsets,
                               std::vector<double> vertices)
    : d_(d), normals_(std::move(normals)), offsets_(std::move(offsets)), vertices_(std::move(vertices)) {
  if (normals_.size() != offsets_.size() * static_cast<std::size_t>(d)) {
    throw InvalidArgument("ConvexPolytope: normals/offsets size mismatch");
  }
  for (double b : offsets_) {
    if (!(b > 0.0)) throw InvalidArgument("ConvexPolytope: origin must be interior");
  }
}

double ConvexPolytope::gauge(std::span<const double> x) const {
  double g = 0.0;
  for (std::size_t f = 0; f < facets(); ++f) {
    double dot = 0.0;
    auto n = normal(f);
    for (int i = 0; i < d_; ++i) dot += n[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    g = std::max(g, dot / offsets_[f]);
  }
  return g;
}

bool ConvexPolytope::contains(std::span<const double> x, double lambda, double tol) const {
  for (std::size_t f = 0; f < facets(); ++f) {
    double dot = 0.0;
    auto n = normal(f);
    for (int i = 0; i < d_; ++i) dot += n[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    if (dot > lambda * offsets_[f] + tol) return false;
  }
  return true;
}

double ConvexPolytope::max_abs_coordinate() const {
  double m = 0.0;
  for (double c : vertices_) m = std::max(m, std::abs(c));
  return m;
}

namespace {

using P2 = std::array<double, 2>;
using P3 = std::array<double, 3>;

double cross2(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

ConvexPolytope hull2(std::span<const double> pts) {
  std::vector<P2> p;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) p.push_back({pts[i], pts[i + 1]});
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) throw InvalidArgument("hull: need at least 3 distinct points in 2D");
  double scale = 0.0;
  for (const auto& q : p) scale = std::max({scale, std::abs(q[0]), std::abs(q[1])});
  const double eps = 1e-12 * scale * scale;
  // Andrew's monotone chain; collinear points are dropped.
  std::vector<P2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p[i]) <= eps) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross2(h[k - 2], h[k - 1], p[i]) <= eps) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  std::vector<double> normals, offsets, verts;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const P2& a = h[i];
    const P2& b = h[(i + 1) % h.size()];
    double nx = b[1] - a[1], ny = -(b[0] - a[0]);
    const double len = std::hypot(nx, ny);
    nx /= len;
    ny /= len;
    normals.push_back(nx);
    normals.push_back(ny);
    offsets.push_back(nx * a[0] + ny * a[1]);
    verts.push_back(a[0]);
    verts.push_back(a[1]);
  }
  return ConvexPolytope(2, std::move(normals), std::move(offsets), std::move(verts));
}

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross(const P3& a, const P3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const P3& a) { return std::sqrt(dot(a, a)); }

struct Face {
  std::array<int, 3> v;
  P3 n;  // unit outward normal
  double b;
};

// Incremental hull; points within eps of a face plane count as not visible,
// so coplanar points never create faces.
ConvexPolytope hull3(std::span<const double> pts) {
  std::vector<P3> p;
  for (std::size_t i = 0; i + 2 < pts.size(); i += 3) p.push_back({pts[i], pts[i + 1], pts[i + 2]});
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 4) throw InvalidArgument("hull: need at least 4 distinct points in 3D");
  double scale = 0.0;
  for (const auto& q : p) scale = std::max({scale, std::abs(q[0]), std::abs(q[1]), std::abs(q[2])});
  const double eps = 1e-10 * scale;

  // Initial tetrahedron from extreme points.
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  double best = -1;
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    const double dd = norm(sub(p[static_cast<std::size_t>(i)], p[0]));
    if (dd > best) best = dd, i1 = i;
  }
  best = -1;
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    const double a = norm(cross(sub(p[static_cast<std::size_t>(i1)], p[0]), sub(p[static_cast<std::size_t>(i)], p[0])));
    if (a > best) best = a, i2 = i;
  }
  const P3 n012 = cross(sub(p[static_cast<std::size_t>(i1)], p[0]), sub(p[static_cast<std::size_t>(i2)], p[0]));
  best = -1;
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    const double vol = std::abs(dot(n012, sub(p[static_cast<std::size_t>(i)], p[0])));
    if (vol > best) best = vol, i3 = i;
  }
  if (best <= eps * scale * scale) throw InvalidArgument("hull: points are coplanar");

  const auto& P = p;
  const P3 centroid = {(P[static_cast<std::size_t>(i0)][0] + P[static_cast<std::size_t>(i1)][0] + P[static_cast<std::size_t>(i2)][0] + P[static_cast<std::size_t>(i3)][0]) / 4,
                       (P[static_cast<std::size_t>(i0)][1] + P[static_cast<std::size_t>(i1)][1] + P[static_cast<std::size_t>(i2)][1] + P[static_cast<std::size_t>(i3)][1]) / 4,
                       (P[static_cast<std::size_t>(i0)][2] + P[static_cast<std::size_t>(i1)][2] + P[static_cast<std::size_t>(i2)][2] + P[static_cast<std::size_t>(i3)][2]) / 4};
  auto make_face = [&](int a, int b, int c) {
    Face f{{a, b, c}, {}, 0};
    P3 n = cross(sub(P[static_cast<std::size_t>(b)], P[static_cast<std::size_t>(a)]), sub(P[static_cast<std::size_t>(c)], P[static_cast<std::size_t>(a)]));
    const double len = norm(n);
    n = {n[0] / len, n[1] / len, n[2] / len};
    if (dot(n, sub(centroid, P[static_cast<std::size_t>(a)])) > 0) {
      std::swap(f.v[1], f.v[2]);
      n = {-n[0], -n[1], -n[2]};
    }
    f.n = n;
    f.b = dot(n, P[static_cast<std::size_t>(a)]);
    return f;
  };
  std::vector<Face> faces{make_face(i0, i1, i2), make_face(i0, i1, i3), make_face(i0, i2, i3), make_face(i1, i2, i3)};

  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    const P3& q = P[static_cast<std::size_t>(i)];
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (dot(faces[f].n, q) - faces[f].b > eps) visible[f] = 1, any = true;
    }
    if (!any) continue;
    std::set<std::pair<int, int>> edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) edges.insert({v[static_cast<std::size_t>(e)], v[static_cast<std::size_t>((e + 1) % 3)]});
    }
    std::vector<Face> kept;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) kept.push_back(faces[f]);
    }
    for (const auto& [a, b] : edges) {
      if (edges.count({b, a})) continue;  // interior edge of the visible cap
      kept.push_back(make_face(a, b, i));
    }
    faces = std::move(kept);
  }

  // Merge coplanar triangles into one half-space.
  std::vector<double> normals, offsets;
  std::set<int> used;
  for (const auto& f : faces) {
    for (int v : f.v) used.insert(v);
    bool dup = false;
    for (std::size_t g = 0; g < offsets.size(); ++g) {
      const P3 n{normals[3 * g], normals[3 * g + 1], normals[3 * g + 2]};
      if (norm(sub(n, f.n)) < 1e-9 && std::abs(offsets[g] - f.b) < eps) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    normals.insert(normals.end(), f.n.begin(), f.n.end());
    offsets.push_back(f.b);
  }
  std::vector<double> verts;
  for (int v : used) verts.insert(verts.end(), P[static_cast<std::size_t>(v)].begin(), P[static_cast<std::size_t>(v)].end());
  return ConvexPolytope(3, std::move(normals), std::move(offsets), std::move(verts));
}

}  // namespace

ConvexPolytope ConvexPolytope::hull(int d, std::span<const double> points) {
  if (d == 2) return hull2(points);
  if (d == 3) return hull3(points);
  throw InvalidArgument("ConvexPolytope::hull: only d = 2 and d = 3 are supported");
}

}  // namespace fpp
