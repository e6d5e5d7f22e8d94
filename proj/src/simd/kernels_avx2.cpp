// Compiled with -mavx2 (and without FMA contraction); only reached after a
// runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "fpp/edge_hash.hpp"
#include "fpp/simd/kernels.hpp"

namespace fpp::simd {
namespace {

const Kernels& scalar() { return scalar_kernels(); }

// Low 64 bits of a * b per lane; AVX2 has only 32x32->64 multiplies.
inline __m256i mullo64(__m256i a, __m256i b) {
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i a_hi_b = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b);
  const __m256i a_b_hi = _mm256_mul_epu32(a, _mm256_srli_epi64(b, 32));
  const __m256i cross = _mm256_slli_epi64(_mm256_add_epi64(a_hi_b, a_b_hi), 32);
  return _mm256_add_epi64(lo, cross);
}

inline __m256i mix64(__m256i z) {
  const __m256i ka = _mm256_set1_epi64x(static_cast<long long>(hash::kMulA));
  const __m256i kb = _mm256_set1_epi64x(static_cast<long long>(hash::kMulB));
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
  z = mullo64(z, ka);
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
  z = mullo64(z, kb);
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
  return z;
}

// Four consecutive edges starting at coordinate x.
inline __m256i bits4(__m256i row, std::int64_t x) {
  const __m256i mask32 = _mm256_set1_epi64x(0xFFFFFFFFLL);
  __m256i xs = _mm256_add_epi64(_mm256_set1_epi64x(x), _mm256_setr_epi64x(0, 1, 2, 3));
  xs = _mm256_and_si256(xs, mask32);
  const __m256i golden = _mm256_set1_epi64x(static_cast<long long>(hash::kGolden));
  const __m256i key = _mm256_add_epi64(row, mullo64(xs, golden));
  return _mm256_srli_epi64(mix64(key), 11);
}

// 4-bit mask of lanes with bits >= threshold (values are < 2^53, so the
// signed compare is exact).
inline int heavy_lanes(__m256i bits, __m256i thr) {
  const __m256i light = _mm256_cmpgt_epi64(thr, bits);
  return (~_mm256_movemask_pd(_mm256_castsi256_pd(light))) & 0xF;
}

inline void or_bits(std::uint8_t* out, int lanes, std::uint8_t bit) {
  if (lanes & 1) out[0] |= bit;
  if (lanes & 2) out[1] |= bit;
  if (lanes & 4) out[2] |= bit;
  if (lanes & 8) out[3] |= bit;
}

void edge_bits_row(std::uint64_t row_key, std::int32_t x0, std::size_t n, std::uint64_t* out) {
  const __m256i row = _mm256_set1_epi64x(static_cast<long long>(row_key));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                        bits4(row, static_cast<std::int64_t>(x0) + static_cast<std::int64_t>(i)));
  }
  if (i < n) {
    scalar().edge_bits_row(row_key, static_cast<std::int32_t>(x0 + static_cast<std::int64_t>(i)), n - i,
                           out + i);
  }
}

void edge_weight_row(std::uint64_t row_key, std::int32_t x0, std::size_t n, std::uint64_t threshold,
                     std::uint8_t bit, std::uint8_t* out) {
  const __m256i row = _mm256_set1_epi64x(static_cast<long long>(row_key));
  const __m256i thr = _mm256_set1_epi64x(static_cast<long long>(threshold));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i b = bits4(row, static_cast<std::int64_t>(x0) + static_cast<std::int64_t>(i));
    or_bits(out + i, heavy_lanes(b, thr), bit);
  }
  if (i < n) {
    scalar().edge_weight_row(row_key, static_cast<std::int32_t>(x0 + static_cast<std::int64_t>(i)), n - i,
                             threshold, bit, out + i);
  }
}

void threshold_row(const std::uint64_t* bits, std::size_t n, std::uint64_t threshold, std::uint8_t bit,
                   std::uint8_t* out) {
  const __m256i thr = _mm256_set1_epi64x(static_cast<long long>(std::min(threshold, hash::kUniformOne)));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits + i));
    or_bits(out + i, heavy_lanes(b, thr), bit);
  }
  if (i < n) scalar().threshold_row(bits + i, n - i, threshold, bit, out + i);
}

void accumulate_times(const std::int32_t* times, std::size_t n, std::int32_t cap, std::int64_t* sums,
                      std::uint32_t* unknown) {
  const __m256i capv = _mm256_set1_epi32(cap);
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i t = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(times + i));
    const __m256i over = _mm256_cmpgt_epi32(t, capv);
    const __m256i known_t = _mm256_andnot_si256(over, t);
    const __m256i lo = _mm256_cvtepi32_epi64(_mm256_castsi256_si128(known_t));
    const __m256i hi = _mm256_cvtepi32_epi64(_mm256_extracti128_si256(known_t, 1));
    auto* s = reinterpret_cast<__m256i*>(sums + i);
    _mm256_storeu_si256(s, _mm256_add_epi64(_mm256_loadu_si256(s), lo));
    _mm256_storeu_si256(s + 1, _mm256_add_epi64(_mm256_loadu_si256(s + 1), hi));
    auto* u = reinterpret_cast<__m256i*>(unknown + i);
    _mm256_storeu_si256(u, _mm256_add_epi32(_mm256_loadu_si256(u), _mm256_and_si256(over, one)));
  }
  if (i < n) scalar().accumulate_times(times + i, n - i, cap, sums + i, unknown + i);
}

void halfspace_max_row(const double* slope, const double* offset, std::size_t facets, std::int32_t x0,
                       std::size_t n, double* out) {
  std::size_t i = 0;
  const __m256d step = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  for (; i + 4 <= n; i += 4) {
    const double base = static_cast<double>(static_cast<std::int64_t>(x0) + static_cast<std::int64_t>(i));
    const __m256d x = _mm256_add_pd(_mm256_set1_pd(base), step);
    __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    for (std::size_t f = 0; f < facets; ++f) {
      const __m256d prod = _mm256_mul_pd(_mm256_set1_pd(slope[f]), x);
      m = _mm256_max_pd(m, _mm256_add_pd(prod, _mm256_set1_pd(offset[f])));
    }
    _mm256_storeu_pd(out + i, m);
  }
  if (i < n) {
    scalar().halfspace_max_row(slope, offset, facets,
                               static_cast<std::int32_t>(x0 + static_cast<std::int64_t>(i)), n - i, out + i);
  }
}

std::int64_t masked_max(const std::int64_t* values, const std::uint8_t* mask, std::size_t n,
                        std::int64_t empty) {
  const __m256i lowest = _mm256_set1_epi64x(std::numeric_limits<std::int64_t>::min());
  __m256i m = lowest;
  bool any = false;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    std::uint32_t word;
    __builtin_memcpy(&word, mask + i, 4);
    if (word == 0) continue;
    any = true;
    // Widen each mask byte to a full 64-bit lane.
    const __m256i bytes = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(word)));
    const __m256i sel = _mm256_cmpgt_epi64(bytes, _mm256_setzero_si256());
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
    const __m256i cand = _mm256_blendv_epi8(lowest, v, sel);
    m = _mm256_blendv_epi8(m, cand, _mm256_cmpgt_epi64(cand, m));
  }
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), m);
  std::int64_t best = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  if (i < n) {
    const std::int64_t tail = scalar().masked_max(values + i, mask + i, n - i, empty);
    bool tail_any = false;
    for (std::size_t j = i; j < n; ++j) tail_any = tail_any || mask[j];
    if (tail_any) {
      best = any ? std::max(best, tail) : tail;
      any = true;
    }
  }
  return any ? best : empty;
}

}  // namespace

const Kernels* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const Kernels k{"avx2",           &edge_bits_row,     &edge_weight_row, &threshold_row,
                         &accumulate_times, &halfspace_max_row, &masked_max};
  return supported ? &k : nullptr;
}

}  // namespace fpp::simd
