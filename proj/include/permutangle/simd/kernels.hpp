#pragma once

// Inner-loop kernels behind the dense matrix code.
//
// Every variant must return bit-identical results to the scalar reference:
// the vector code performs the same floating-point operations in the same
// order (no fused multiply-add), and the reference accumulates dot products
// in two interleaved partial sums to mirror a two-complex-wide register.

#include <complex>
#include <cstddef>
#include <string_view>

namespace permutangle::simd {

using Complex = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // c[m x n] = a[m x k] * b[k x n], all row-major and densely packed.
  void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const Complex* a, const Complex* b,
               Complex* c);

  // y += alpha * x
  void (*axpy)(std::size_t n, Complex alpha, const Complex* x, Complex* y);

  // sum_i conj(x_i) * y_i
  Complex (*dotc)(std::size_t n, const Complex* x, const Complex* y);

  // (x, y) <- (a11 x + a12 y, a21 x + a22 y)
  void (*rot)(std::size_t n, Complex* x, Complex* y, Complex a11, Complex a12, Complex a21,
              Complex a22);
};

const KernelTable& scalar_kernels();

/// Null when the build or the host lacks AVX2.
const KernelTable* avx2_kernels();

/// Table chosen once per process: AVX2 when the CPU supports it, unless
/// PERMUTANGLE_SIMD=scalar is set in the environment.
const KernelTable& active_kernels();

}  // namespace permutangle::simd
