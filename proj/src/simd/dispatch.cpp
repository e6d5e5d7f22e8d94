#include <cstdlib>
#include <cstring>

#include "fpp/simd/kernels.hpp"

namespace fpp::simd {

#ifndef FPP_HAVE_AVX2
const Kernels* avx2_kernels() { return nullptr; }
#endif

const Kernels& active() {
  static const Kernels& chosen = [&]() -> const Kernels& {
    const char* env = std::getenv("FPP_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace fpp::simd
