// Compiled with -mavx2 (and deliberately without -mfma); only reached after a
// runtime CPU check in dispatch.cpp.

#include <immintrin.h>

#include "permutangle/simd/kernels.hpp"

namespace permutangle::simd {
namespace {

// Two complex numbers per register: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (ar + i ai) * v for both lanes: [ar*vr - ai*vi, ar*vi + ai*vr].
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(ar, v), _mm256_mul_pd(ai, swapped));
}

inline void mul_acc(double ar, double ai, double br, double bi, double& re, double& im) {
  const double pr = ar * br - ai * bi;
  const double pi = ar * bi + ai * br;
  re += pr;
  im += pi;
}

void gemm_avx2(std::size_t m, std::size_t k, std::size_t n, const Complex* a, const Complex* b,
               Complex* c) {
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = 0;
    for (; j + 1 < n; j += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const Complex av = a[i * k + p];
        const __m256d ar = _mm256_set1_pd(av.real());
        const __m256d ai = _mm256_set1_pd(av.imag());
        acc = _mm256_add_pd(acc, cmul_bcast(ar, ai, load2(b + p * n + j)));
      }
      store2(c + i * n + j, acc);
    }
    for (; j < n; ++j) {
      double re = 0.0, im = 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        const Complex av = a[i * k + p];
        const Complex bv = b[p * n + j];
        mul_acc(av.real(), av.imag(), bv.real(), bv.imag(), re, im);
      }
      c[i * n + j] = Complex(re, im);
    }
  }
}

void axpy_avx2(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    store2(y + i, _mm256_add_pd(load2(y + i), cmul_bcast(ar, ai, load2(x + i))));
  }
  if (i < n) {
    double re = y[i].real(), im = y[i].imag();
    mul_acc(alpha.real(), alpha.imag(), x[i].real(), x[i].imag(), re, im);
    y[i] = Complex(re, im);
  }
}

Complex dotc_avx2(std::size_t n, const Complex* x, const Complex* y) {
  const __m256d flip = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    // [yi, -yr] per lane
    const __m256d yconj_swapped = _mm256_mul_pd(_mm256_permute_pd(yv, 0b0101), flip);
    const __m256d p = _mm256_mul_pd(xv, yv);
    const __m256d q = _mm256_mul_pd(xv, yconj_swapped);
    acc = _mm256_add_pd(acc, _mm256_hadd_pd(p, q));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re0 = lanes[0], im0 = lanes[1];
  if (i < n) {
    re0 += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im0 += x[i].real() * y[i].imag() + x[i].imag() * (-y[i].real());
  }
  return {re0 + lanes[2], im0 + lanes[3]};
}

void rot_avx2(std::size_t n, Complex* x, Complex* y, Complex a11, Complex a12, Complex a21,
              Complex a22) {
  const __m256d a11r = _mm256_set1_pd(a11.real()), a11i = _mm256_set1_pd(a11.imag());
  const __m256d a12r = _mm256_set1_pd(a12.real()), a12i = _mm256_set1_pd(a12.imag());
  const __m256d a21r = _mm256_set1_pd(a21.real()), a21i = _mm256_set1_pd(a21.imag());
  const __m256d a22r = _mm256_set1_pd(a22.real()), a22i = _mm256_set1_pd(a22.imag());
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    __m256d nx = _mm256_add_pd(_mm256_setzero_pd(), cmul_bcast(a11r, a11i, xv));
    nx = _mm256_add_pd(nx, cmul_bcast(a12r, a12i, yv));
    __m256d ny = _mm256_add_pd(_mm256_setzero_pd(), cmul_bcast(a21r, a21i, xv));
    ny = _mm256_add_pd(ny, cmul_bcast(a22r, a22i, yv));
    store2(x + i, nx);
    store2(y + i, ny);
  }
  if (i < n) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    double nxr = 0.0, nxi = 0.0, nyr = 0.0, nyi = 0.0;
    mul_acc(a11.real(), a11.imag(), xr, xi, nxr, nxi);
    mul_acc(a12.real(), a12.imag(), yr, yi, nxr, nxi);
    mul_acc(a21.real(), a21.imag(), xr, xi, nyr, nyi);
    mul_acc(a22.real(), a22.imag(), yr, yi, nyr, nyi);
    x[i] = Complex(nxr, nxi);
    y[i] = Complex(nyr, nyi);
  }
}

const KernelTable kAvx2{"avx2", gemm_avx2, axpy_avx2, dotc_avx2, rot_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_table() { return kAvx2; }
}  // namespace detail

}  // namespace permutangle::simd
