#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fpp {

inline constexpr int kMaxDim = 6;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Growth or search reached the bounding box before its answer was certified.
class BoxExhausted : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A lattice vertex of Z^d. Unused trailing coordinates are zero.
struct Vertex {
  std::array<std::int32_t, kMaxDim> x{};

  std::int32_t& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
  std::int32_t operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

std::int64_t l1_norm(const Vertex& v, int d);

/// Canonical edge key: the edge {base, base + e_axis}.
struct EdgeId {
  Vertex base;
  int axis = 0;

  friend bool operator==(const EdgeId&, const EdgeId&) = default;
};

/// Canonical id of the edge joining two adjacent vertices.
EdgeId edge_between(const Vertex& u, const Vertex& v, int d);

struct EdgeIdHash {
  std::size_t operator()(const EdgeId& e) const noexcept;
};

/// Axis-aligned box [lo, hi] (inclusive) with a row-major flat index,
/// axis 0 fastest.
class Box {
 public:
  Box() = default;
  Box(int d, const Vertex& lo, const Vertex& hi);

  static Box centered(int d, std::int32_t radius);

  int dim() const { return d_; }
  const Vertex& lo() const { return lo_; }
  const Vertex& hi() const { return hi_; }
  std::int64_t extent(int axis) const { return hi_[axis] - lo_[axis] + 1; }
  std::int64_t stride(int axis) const { return stride_[static_cast<std::size_t>(axis)]; }
  std::int64_t volume() const { return volume_; }
  /// Number of rows along axis 0.
  std::int64_t rows() const { return volume_ / extent(0); }

  bool contains(const Vertex& v) const;
  std::int64_t index(const Vertex& v) const;
  Vertex vertex(std::int64_t index) const;
  /// True when some coordinate of v sits on lo or hi.
  bool on_face(const Vertex& v) const;

  /// Smallest box containing both.
  Box hull(const Box& other) const;
  Box padded(std::int32_t margin) const;

  friend bool operator==(const Box& a, const Box& b) {
    return a.d_ == b.d_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  int d_ = 0;
  Vertex lo_{};
  Vertex hi_{};
  std::array<std::int64_t, kMaxDim> stride_{};
  std::int64_t volume_ = 0;
};

/// Bond percolation thresholds shipped as defaults. p_c(2) = 1/2 is exact;
/// the others are numerical estimates from the percolation literature.
std::optional<double> default_critical_probability(int d);

/// Test-only per-edge uniforms that replace the hashed value.
using UniformOverrides = std::unordered_map<EdgeId, double, EdgeIdHash>;

/// Model configuration. Edge weights are a pure function of (d, seed, edge),
/// with t(e) = 0 iff the edge uniform falls below p.
class Configuration {
 public:
  Configuration() = default;
  Configuration(int d, double p, std::uint64_t seed, Box box);

  int dim() const { return d_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  const Box& box() const { return box_; }

  Configuration with_box(Box box) const;
  Configuration with_seed(std::uint64_t seed) const;
  Configuration with_p(double p) const;
  Configuration with_overrides(UniformOverrides overrides) const;

  const UniformOverrides* overrides() const { return overrides_.get(); }
  bool has_overrides() const { return overrides_ && !overrides_->empty(); }

  /// Throws InvalidArgument unless 0 < p < p_c(d).
  void require_subcritical(std::optional<double> p_c_override = std::nullopt) const;

 private:
  int d_ = 2;
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
  Box box_;
  std::shared_ptr<const UniformOverrides> overrides_;
};

/// Uniform in [0,1) attached to edge e.
double edge_uniform(const Configuration& cfg, const EdgeId& e);
/// t(e) in {0,1}.
int edge_weight(const Configuration& cfg, const EdgeId& e);
/// Weight under the same uniforms at a different zero-probability.
int coupled_weight(const Configuration& cfg, const EdgeId& e, double p_alt);

}  // namespace fpp
