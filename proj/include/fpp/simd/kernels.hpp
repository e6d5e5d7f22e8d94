#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and, where
// the target supports it, an AVX2 variant with bit-identical output.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fpp::simd {

struct Kernels {
  std::string_view name;

  /// out[i] = edge bits of the edge at coordinate x0 + i of a row.
  void (*edge_bits_row)(std::uint64_t row_key, std::int32_t x0, std::size_t n, std::uint64_t* out);

  /// Hashes and thresholds in one pass: out[i] |= bit when t(e_i) = 1.
  void (*edge_weight_row)(std::uint64_t row_key, std::int32_t x0, std::size_t n,
                          std::uint64_t threshold, std::uint8_t bit, std::uint8_t* out);

  /// out[i] |= bit when bits[i] >= threshold.
  void (*threshold_row)(const std::uint64_t* bits, std::size_t n, std::uint64_t threshold,
                        std::uint8_t bit, std::uint8_t* out);

  /// For times[i] <= cap: sums[i] += times[i]; otherwise unknown[i] += 1.
  void (*accumulate_times)(const std::int32_t* times, std::size_t n, std::int32_t cap,
                           std::int64_t* sums, std::uint32_t* unknown);

  /// out[i] = max_f (slope[f] * (x0 + i) + offset[f]); no fused multiply-add.
  void (*halfspace_max_row)(const double* slope, const double* offset, std::size_t facets,
                            std::int32_t x0, std::size_t n, double* out);

  /// max over i with mask[i] != 0 of values[i]; returns `empty` when none.
  std::int64_t (*masked_max)(const std::int64_t* values, const std::uint8_t* mask, std::size_t n,
                             std::int64_t empty);
};

const Kernels& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or unsupported by this CPU.
const Kernels* avx2_kernels();

/// Selected once per process: AVX2 when available unless the environment
/// variable FPP_SIMD=scalar forces the reference path.
const Kernels& active();

}  // namespace fpp::simd
