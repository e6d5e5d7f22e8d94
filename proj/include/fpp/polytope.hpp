#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fpp {

/// Convex polytope containing the origin in its interior, stored as the
/// intersection of half-spaces n_f . x <= b_f (unit normals, b_f > 0) plus
/// its vertex list.
class ConvexPolytope {
 public:
  ConvexPolytope() = default;
  ConvexPolytope(int d, std::vector<double> normals, std::vector<double> offsets, std::vector<double> vertices);

  /// Convex hull of `points` (flat, d per point). d must be 2 or 3.
  static ConvexPolytope hull(int d, std::span<const double> points);

  int dim() const { return d_; }
  std::size_t facets() const { return offsets_.size(); }
  std::size_t vertex_count() const { return vertices_.size() / static_cast<std::size_t>(d_); }
  std::span<const double> normal(std::size_t f) const {
    return {normals_.data() + f * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  double offset(std::size_t f) const { return offsets_[f]; }
  std::span<const double> normals() const { return normals_; }
  std::span<const double> offsets() const { return offsets_; }
  std::span<const double> vertices() const { return vertices_; }

  /// Minkowski gauge: the smallest lambda with x in lambda * P.
  double gauge(std::span<const double> x) const;
  bool contains(std::span<const double> x, double lambda = 1.0, double tol = 1e-9) const;
  /// Largest |coordinate| over the vertices.
  double max_abs_coordinate() const;

 private:
  int d_ = 0;
  std::vector<double> normals_;
  std::vector<double> offsets_;
  std::vector<double> vertices_;
};

}  // namespace fpp
