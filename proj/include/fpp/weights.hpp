#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpp/edge_hash.hpp"
#include "fpp/lattice.hpp"
#include "fpp/simd/kernels.hpp"

namespace fpp {

/// Raw 53-bit edge values over a box, one plane per axis. Plane a holds the
/// edge {v, v + e_a} at the flat index of v. Weights at any p (and the
/// coupled weights at p - h) are thresholds of the same values.
class EdgeBitsGrid {
 public:
  EdgeBitsGrid() = default;
  static EdgeBitsGrid from_config(const Configuration& cfg, const Box& box,
                                  const simd::Kernels& k = simd::active());

  const Box& box() const { return box_; }
  std::uint64_t bits(std::int64_t index, int axis) const {
    return bits_[static_cast<std::size_t>(axis * box_.volume() + index)];
  }
  double uniform(std::int64_t index, int axis) const { return hash::bits_to_uniform(bits(index, axis)); }
  std::span<const std::uint64_t> plane(int axis) const {
    return {bits_.data() + axis * box_.volume(), static_cast<std::size_t>(box_.volume())};
  }

 private:
  Box box_;
  std::vector<std::uint64_t> bits_;
};

/// Materialized {0,1} weights over a box: bit a of byte v is t({v, v + e_a}).
class WeightGrid {
 public:
  WeightGrid() = default;
  explicit WeightGrid(Box box) : box_(std::move(box)), w_(static_cast<std::size_t>(box_.volume()), 0) {}

  static WeightGrid from_config(const Configuration& cfg, const Box& box,
                                const simd::Kernels& k = simd::active());
  /// Thresholds the shared uniforms at zero-probability p.
  static WeightGrid from_bits(const EdgeBitsGrid& bits, double p, const simd::Kernels& k = simd::active());

  const Box& box() const { return box_; }
  int weight(std::int64_t index, int axis) const { return (w_[static_cast<std::size_t>(index)] >> axis) & 1; }
  void set_weight(std::int64_t index, int axis, int w);
  std::span<const std::uint8_t> raw() const { return w_; }

  /// Callable shape used by the BFS core.
  int operator()(std::int64_t base_index, const Vertex&, int axis) const { return weight(base_index, axis); }

 private:
  Box box_;
  std::vector<std::uint8_t> w_;
};

/// On-demand hashed weights over a box, with the per-row keys cached so each
/// edge costs one mix.
class HashedWeights {
 public:
  HashedWeights(const Configuration& cfg, const Box& box);
  HashedWeights(const Configuration& cfg, const Box& box, double p);

  int operator()(std::int64_t base_index, const Vertex& base, int axis) const {
    if (overrides_ != nullptr) return slow(base, axis);
    const std::int64_t row = base_index / extent0_;
    const auto b = hash::edge_bits(keys_[static_cast<std::size_t>(axis * rows_ + row)], base[0]);
    return b < threshold_ ? 0 : 1;
  }

 private:
  int slow(const Vertex& base, int axis) const;

  const Configuration* cfg_;
  std::uint64_t threshold_;
  std::int64_t extent0_;
  std::int64_t rows_;
  std::vector<std::uint64_t> keys_;
  const UniformOverrides* overrides_;
};

/// Row keys of every row of `box` along axis 0, for the given edge axis.
std::vector<std::uint64_t> row_keys(const Configuration& cfg, const Box& box, int axis);

}  // namespace fpp
