#include <algorithm>
#include <limits>

#include "fpp/edge_hash.hpp"
#include "fpp/simd/kernels.hpp"

namespace fpp::simd {
namespace {

void edge_bits_row(std::uint64_t row_key, std::int32_t x0, std::size_t n, std::uint64_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = hash::edge_bits(row_key, static_cast<std::int32_t>(x0 + static_cast<std::int64_t>(i)));
  }
}

void edge_weight_row(std::uint64_t row_key, std::int32_t x0, std::size_t n, std::uint64_t threshold,
                     std::uint8_t bit, std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = hash::edge_bits(row_key, static_cast<std::int32_t>(x0 + static_cast<std::int64_t>(i)));
    if (b >= threshold) out[i] |= bit;
  }
}

void threshold_row(const std::uint64_t* bits, std::size_t n, std::uint64_t threshold, std::uint8_t bit,
                   std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i] >= threshold) out[i] |= bit;
  }
}

void accumulate_times(const std::int32_t* times, std::size_t n, std::int32_t cap, std::int64_t* sums,
                      std::uint32_t* unknown) {
  for (std::size_t i = 0; i < n; ++i) {
    if (times[i] <= cap) {
      sums[i] += times[i];
    } else {
      unknown[i] += 1;
    }
  }
}

void halfspace_max_row(const double* slope, const double* offset, std::size_t facets, std::int32_t x0,
                       std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(static_cast<std::int64_t>(x0) + static_cast<std::int64_t>(i));
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < facets; ++f) {
      const double prod = slope[f] * x;
      const double v = prod + offset[f];
      m = m > v ? m : v;  // same tie rule as maxpd
    }
    out[i] = m;
  }
}

std::int64_t masked_max(const std::int64_t* values, const std::uint8_t* mask, std::size_t n,
                        std::int64_t empty) {
  std::int64_t m = empty;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask[i]) continue;
    m = any ? std::max(m, values[i]) : values[i];
    any = true;
  }
  return m;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar",         &edge_bits_row,     &edge_weight_row, &threshold_row,
                         &accumulate_times, &halfspace_max_row, &masked_max};
  return k;
}

}  // namespace fpp::simd
