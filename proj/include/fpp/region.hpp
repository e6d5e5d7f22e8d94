#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpp/lattice.hpp"
#include "fpp/polytope.hpp"
#include "fpp/simd/kernels.hpp"

namespace fpp {

enum class RegionKind { kDiamond, kAxisBox, kScaledShape, kExplicit };

std::string to_string(RegionKind k);

/// A target set Gamma reduced to its lattice trace Gamma' (the vertices
/// inside Gamma) and the vertex boundary of Gamma' (members with a
/// neighbor outside). The storage box is the tight bounding box of Gamma'
/// grown by one, so every neighbor of a member is addressable.
class Region {
 public:
  Region() = default;

  /// {x : |x|_1 <= r}.
  static Region diamond(int d, std::int32_t r);
  /// Lattice points of [lo, hi].
  static Region axis_box(int d, const Vertex& lo, const Vertex& hi);
  /// lambda * P, rasterized row by row.
  static Region scaled_shape(const ConvexPolytope& shape, double lambda,
                             const simd::Kernels& k = simd::active());
  static Region explicit_set(int d, std::span<const Vertex> vertices);
  /// Members are the nonzero entries of `mask` over `box`.
  static Region from_mask(const Box& box, std::span<const std::uint8_t> mask,
                          RegionKind kind = RegionKind::kExplicit);

  RegionKind kind() const { return kind_; }
  int dim() const { return box_.dim(); }
  const Box& box() const { return box_; }
  std::span<const std::uint8_t> mask() const { return mask_; }
  std::span<const std::int64_t> members() const { return members_; }
  std::span<const std::int64_t> boundary() const { return boundary_; }
  std::size_t size() const { return members_.size(); }
  std::int64_t origin_index() const { return box_.index(Vertex{}); }

  bool contains(const Vertex& v) const { return box_.contains(v) && mask_[static_cast<std::size_t>(box_.index(v))]; }
  bool contains_index(std::int64_t i) const { return mask_[static_cast<std::size_t>(i)] != 0; }
  bool on_boundary_index(std::int64_t i) const { return is_boundary_[static_cast<std::size_t>(i)] != 0; }

  /// Short human description ("diamond r=100", ...), used in outputs.
  const std::string& description() const { return description_; }

 private:
  void finish();

  RegionKind kind_ = RegionKind::kExplicit;
  Box box_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint8_t> is_boundary_;
  std::vector<std::int64_t> members_;
  std::vector<std::int64_t> boundary_;
  std::string description_;
};

/// (t/2) B <= Gamma <= 2t B checked at lattice resolution: every lattice point
/// with gauge <= t/2 is a member and every member has gauge <= 2t.
bool is_regular(const Region& region, const ConvexPolytope& shape, double t);

}  // namespace fpp
