#include <cstdlib>
#include <string_view>

#include "permutangle/simd/kernels.hpp"

namespace permutangle::simd {

#if defined(PERMUTANGLE_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_table();
}
#endif

const KernelTable* avx2_kernels() {
#if defined(PERMUTANGLE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("PERMUTANGLE_SIMD")) {
    if (std::string_view(env) == "scalar") return scalar_kernels();
  }
  if (const KernelTable* vec = avx2_kernels()) return *vec;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace permutangle::simd
