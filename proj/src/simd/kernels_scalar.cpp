#include "permutangle/simd/kernels.hpp"

namespace permutangle::simd {
namespace {

// Products are written out so the operation order is pinned: the AVX2 path
// computes (ar*br - ai*bi, ar*bi + ai*br) with addsub in exactly this order.
inline void mul_acc(double ar, double ai, double br, double bi, double& re, double& im) {
  const double pr = ar * br - ai * bi;
  const double pi = ar * bi + ai * br;
  re += pr;
  im += pi;
}

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const Complex* a, const Complex* b,
                 Complex* c) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        const Complex av = a[i * k + p];
        const Complex bv = b[p * n + j];
        mul_acc(av.real(), av.imag(), bv.real(), bv.imag(), re, im);
      }
      c[i * n + j] = Complex(re, im);
    }
  }
}

void axpy_scalar(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    double re = y[i].real();
    double im = y[i].imag();
    mul_acc(ar, ai, x[i].real(), x[i].imag(), re, im);
    y[i] = Complex(re, im);
  }
}

Complex dotc_scalar(std::size_t n, const Complex* x, const Complex* y) {
  // Lane 0 takes even indices, lane 1 odd indices.
  double re0 = 0.0, im0 = 0.0, re1 = 0.0, im1 = 0.0;
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    re0 += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im0 += x[i].real() * y[i].imag() + x[i].imag() * (-y[i].real());
    re1 += x[i + 1].real() * y[i + 1].real() + x[i + 1].imag() * y[i + 1].imag();
    im1 += x[i + 1].real() * y[i + 1].imag() + x[i + 1].imag() * (-y[i + 1].real());
  }
  if (i < n) {
    re0 += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im0 += x[i].real() * y[i].imag() + x[i].imag() * (-y[i].real());
  }
  return {re0 + re1, im0 + im1};
}

void rot_scalar(std::size_t n, Complex* x, Complex* y, Complex a11, Complex a12, Complex a21,
                Complex a22) {
  for (std::size_t i = 0; i < n; ++i) {
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

const KernelTable kScalar{"scalar", gemm_scalar, axpy_scalar, dotc_scalar, rot_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace permutangle::simd
