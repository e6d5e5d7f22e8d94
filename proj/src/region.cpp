#include "fpp/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fpp {

std::string to_string(RegionKind k) {
  switch (k) {
    case RegionKind::kDiamond:
      return "diamond";
    case RegionKind::kAxisBox:
      return "box";
    case RegionKind::kScaledShape:
      return "shape";
    case RegionKind::kExplicit:
      return "explicit";
  }
  return "unknown";
}

namespace {

template <typename Fn>
void for_each_neighbor(const Box& box, std::int64_t i, const Vertex& v, Fn&& fn) {
  for (int a = 0; a < box.dim(); ++a) {
    if (v[a] < box.hi()[a]) fn(i + box.stride(a));
    if (v[a] > box.lo()[a]) fn(i - box.stride(a));
  }
}

}  // namespace

void Region::finish() {
  if (!box_.contains(Vertex{}) || !mask_[static_cast<std::size_t>(origin_index())]) {
    throw InvalidArgument("region: origin is not in the lattice trace");
  }
  members_.clear();
  boundary_.clear();
  is_boundary_.assign(mask_.size(), 0);
  for (std::int64_t i = 0; i < box_.volume(); ++i) {
    if (!mask_[static_cast<std::size_t>(i)]) continue;
    members_.push_back(i);
    const Vertex v = box_.vertex(i);
    if (box_.on_face(v)) throw InvalidArgument("region: member on the storage box face");
    bool edge = false;
    for_each_neighbor(box_, i, v, [&](std::int64_t n) { edge = edge || !mask_[static_cast<std::size_t>(n)]; });
    if (edge) {
      is_boundary_[static_cast<std::size_t>(i)] = 1;
      boundary_.push_back(i);
    }
  }
  // Gamma' must be one connected piece around the origin.
  std::vector<std::uint8_t> seen(mask_.size(), 0);
  std::vector<std::int64_t> stack{origin_index()};
  seen[static_cast<std::size_t>(stack.back())] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    ++reached;
    for_each_neighbor(box_, i, box_.vertex(i), [&](std::int64_t n) {
      if (mask_[static_cast<std::size_t>(n)] && !seen[static_cast<std::size_t>(n)]) {
        seen[static_cast<std::size_t>(n)] = 1;
        stack.push_back(n);
      }
    });
  }
  if (reached != members_.size()) throw InvalidArgument("region: lattice trace is not connected");
}

Region Region::diamond(int d, std::int32_t r) {
  if (r < 0) throw InvalidArgument("diamond: radius must be >= 0");
  Region g;
  g.kind_ = RegionKind::kDiamond;
  g.box_ = Box::centered(d, r + 1);
  g.mask_.assign(static_cast<std::size_t>(g.box_.volume()), 0);
  for (std::int64_t i = 0; i < g.box_.volume(); ++i) {
    g.mask_[static_cast<std::size_t>(i)] = l1_norm(g.box_.vertex(i), d) <= r ? 1 : 0;
  }
  g.description_ = "diamond r=" + std::to_string(r);
  g.finish();
  return g;
}

Region Region::axis_box(int d, const Vertex& lo, const Vertex& hi) {
  const Box inner(d, lo, hi);
  Region g;
  g.kind_ = RegionKind::kAxisBox;
  g.box_ = inner.padded(1);
  g.mask_.assign(static_cast<std::size_t>(g.box_.volume()), 0);
  for (std::int64_t i = 0; i < g.box_.volume(); ++i) {
    g.mask_[static_cast<std::size_t>(i)] = inner.contains(g.box_.vertex(i)) ? 1 : 0;
  }
  std::ostringstream os;
  os << "box";
  for (int a = 0; a < d; ++a) os << (a ? " x " : " ") << "[" << lo[a] << "," << hi[a] << "]";
  g.description_ = os.str();
  g.finish();
  return g;
}

Region Region::scaled_shape(const ConvexPolytope& shape, double lambda, const simd::Kernels& k) {
  if (!(lambda > 0)) throw InvalidArgument("scaled_shape: lambda must be > 0");
  const int d = shape.dim();
  const auto r = static_cast<std::int32_t>(std::ceil(lambda * shape.max_abs_coordinate())) + 1;
  Region g;
  g.kind_ = RegionKind::kScaledShape;
  g.box_ = Box::centered(d, r);
  g.mask_.assign(static_cast<std::size_t>(g.box_.volume()), 0);

  // Per row: max_f (n_f0 x0 + n_f,rest . x_rest - lambda b_f) <= tol.
  const std::size_t nf = shape.facets();
  std::vector<double> slope(nf), offset(nf), row(static_cast<std::size_t>(g.box_.extent(0)));
  for (std::size_t f = 0; f < nf; ++f) slope[f] = shape.normal(f)[0];
  const double tol = 1e-9 * std::max(1.0, lambda);
  const std::int64_t ext0 = g.box_.extent(0);
  for (std::int64_t rr = 0; rr < g.box_.rows(); ++rr) {
    const Vertex v = g.box_.vertex(rr * ext0);
    for (std::size_t f = 0; f < nf; ++f) {
      double s = 0.0;
      for (int a = 1; a < d; ++a) s += shape.normal(f)[static_cast<std::size_t>(a)] * v[a];
      offset[f] = s - lambda * shape.offset(f);
    }
    k.halfspace_max_row(slope.data(), offset.data(), nf, g.box_.lo()[0], row.size(), row.data());
    for (std::int64_t x = 0; x < ext0; ++x) {
      g.mask_[static_cast<std::size_t>(rr * ext0 + x)] = row[static_cast<std::size_t>(x)] <= tol ? 1 : 0;
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "shape lambda=" << lambda;
  g.description_ = os.str();
  g.finish();
  return g;
}

Region Region::explicit_set(int d, std::span<const Vertex> vertices) {
  if (vertices.empty()) throw InvalidArgument("explicit region: empty vertex set");
  Vertex lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    for (int a = 0; a < d; ++a) {
      lo[a] = std::min(lo[a], v[a]);
      hi[a] = std::max(hi[a], v[a]);
    }
  }
  Region g;
  g.kind_ = RegionKind::kExplicit;
  g.box_ = Box(d, lo, hi).padded(1);
  g.mask_.assign(static_cast<std::size_t>(g.box_.volume()), 0);
  for (const auto& v : vertices) g.mask_[static_cast<std::size_t>(g.box_.index(v))] = 1;
  g.description_ = "explicit n=" + std::to_string(vertices.size());
  g.finish();
  return g;
}

Region Region::from_mask(const Box& box, std::span<const std::uint8_t> mask, RegionKind kind) {
  if (mask.size() != static_cast<std::size_t>(box.volume())) throw InvalidArgument("from_mask: size mismatch");
  // Shrink to the tight box plus one.
  const int d = box.dim();
  Vertex lo{}, hi{};
  bool any = false;
  for (std::int64_t i = 0; i < box.volume(); ++i) {
    if (!mask[static_cast<std::size_t>(i)]) continue;
    const Vertex v = box.vertex(i);
    if (!any) {
      lo = hi = v;
      any = true;
    }
    for (int a = 0; a < d; ++a) {
      lo[a] = std::min(lo[a], v[a]);
      hi[a] = std::max(hi[a], v[a]);
    }
  }
  if (!any) throw InvalidArgument("from_mask: empty mask");
  Region g;
  g.kind_ = kind;
  g.box_ = Box(d, lo, hi).padded(1);
  g.mask_.assign(static_cast<std::size_t>(g.box_.volume()), 0);
  for (std::int64_t i = 0; i < box.volume(); ++i) {
    if (mask[static_cast<std::size_t>(i)]) g.mask_[static_cast<std::size_t>(g.box_.index(box.vertex(i)))] = 1;
  }
  g.description_ = to_string(kind) + " n=" + std::to_string(std::count_if(mask.begin(), mask.end(), [](auto m) { return m != 0; }));
  g.finish();
  return g;
}

bool is_regular(const Region& region, const ConvexPolytope& shape, double t) {
  if (shape.dim() != region.dim()) throw InvalidArgument("is_regular: dimension mismatch");
  const int d = region.dim();
  std::vector<double> x(static_cast<std::size_t>(d));
  auto gauge_of = [&](const Vertex& v) {
    for (int a = 0; a < d; ++a) x[static_cast<std::size_t>(a)] = v[a];
    return shape.gauge(x);
  };
  const double eps = 1e-9 * std::max(1.0, t);
  for (auto i : region.members()) {
    if (gauge_of(region.box().vertex(i)) > 2 * t + eps) return false;
  }
  // The inner body must fit in the storage box, otherwise it sticks out.
  const auto reach = static_cast<std::int32_t>(std::ceil(0.5 * t * shape.max_abs_coordinate()));
  const Box inner = Box::centered(d, reach);
  for (std::int64_t i = 0; i < inner.volume(); ++i) {
    const Vertex v = inner.vertex(i);
    if (gauge_of(v) <= 0.5 * t + eps && !region.contains(v)) return false;
  }
  return true;
}

}  // namespace fpp
