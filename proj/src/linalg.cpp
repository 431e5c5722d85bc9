#include "permutangle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "permutangle/error.hpp"
#include "permutangle/simd/kernels.hpp"

namespace permutangle {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square_kernel(const ComplexMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw DimensionError(std::string(op) + ": expected square matrix, got " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
  }
  if (m.rows() > kMaxKernelDim) {
    throw DimensionError(std::string(op) + ": dimension " + std::to_string(m.rows()) + " exceeds " +
                         std::to_string(kMaxKernelDim));
  }
  if (!m.all_finite()) throw ContractError(std::string(op) + ": non-finite entry");
}

ComplexMatrix hessenberg(ComplexMatrix h) {
  const std::size_t n = h.rows();
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double alpha = 0.0;
    for (std::size_t i = 0; i < len; ++i) alpha += std::norm(h(k + 1 + i, k));
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
    v[0] += phase * alpha;
    double vn = 0.0;
    for (std::size_t i = 0; i < len; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    for (std::size_t i = 0; i < len; ++i) v[i] /= vn;

    for (std::size_t j = 0; j < n; ++j) {
      Complex w = 0.0;
      for (std::size_t i = 0; i < len; ++i) w += std::conj(v[i]) * h(k + 1 + i, j);
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= 2.0 * v[i] * w;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex w = 0.0;
      for (std::size_t j = 0; j < len; ++j) w += h(i, k + 1 + j) * v[j];
      for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= 2.0 * w * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

}  // namespace

Complex determinant(const ComplexMatrix& m) {
  require_square_kernel(m, "determinant");
  const std::size_t n = m.rows();
  const auto& kern = simd::active_kernels();
  ComplexMatrix a = m;
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(piv).begin());
      det = -det;
    }
    const Complex pivot = a(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / pivot;
      if (f == Complex(0.0)) continue;
      kern.axpy(n - k, -f, &a(k, k), &a(i, k));
    }
  }
  return det;
}

HermitianEigen eig_hermitian_decompose(const ComplexMatrix& m) {
  require_square_kernel(m, "eig_hermitian");
  const double defect = hermiticity_defect(m);
  if (defect > tol::kHermitian) {
    throw ContractError("eig_hermitian: input not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const std::size_t n = m.rows();
  const auto& kern = simd::active_kernels();

  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  // Eigenvectors are accumulated as rows so every update is a contiguous rot.
  ComplexMatrix vt = ComplexMatrix::identity(n);

  const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= kEps * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex e = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Complex ec = std::conj(e);

        kern.rot(n, &a(p, 0), &a(q, 0), c, -s * e, s, c * e);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        kern.rot(n, &vt(p, 0), &vt(q, 0), c, -s * ec, s, c * ec);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vt(order[k], i);
  }
  return out;
}

std::vector<double> eig_hermitian(const ComplexMatrix& m) { return eig_hermitian_decompose(m).values; }

std::vector<Complex> eig_general(const ComplexMatrix& m) {
  require_square_kernel(m, "eig_general");
  const std::size_t n = m.rows();
  std::vector<Complex> eig(n);
  if (n == 0) return eig;
  const auto& kern = simd::active_kernels();
  ComplexMatrix h = hessenberg(m);

  std::vector<Complex> cs(n), ss(n);
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    std::ptrdiff_t l = hi;
    for (; l > 0; --l) {
      const double sub = std::abs(h(l, l - 1));
      const double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (sub <= kEps * s || sub < std::numeric_limits<double>::min()) {
        h(l, l - 1) = 0.0;
        break;
      }
    }
    if (l == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > 100) throw ContractError("eig_general: QR iteration did not converge");

    Complex mu;
    const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
    if (iter % 12 == 0) {
      mu = d + std::abs(c);  // exceptional shift
    } else {
      const Complex half_tr = 0.5 * (a + d);
      const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
      const Complex l1 = half_tr + disc, l2 = half_tr - disc;
      mu = std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
    }

    for (std::ptrdiff_t k = l; k <= hi; ++k) h(k, k) -= mu;
    for (std::ptrdiff_t k = l; k < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      const Complex cg = r == 0.0 ? Complex(1.0) : x / r;
      const Complex sg = r == 0.0 ? Complex(0.0) : y / r;
      cs[k] = cg;
      ss[k] = sg;
      kern.rot(static_cast<std::size_t>(hi - k + 1), &h(k, k), &h(k + 1, k), std::conj(cg), std::conj(sg),
               -sg, cg);
    }
    for (std::ptrdiff_t k = l; k < hi; ++k) {
      const Complex cg = cs[k], sg = ss[k];
      const std::ptrdiff_t last = std::min(k + 2, hi);
      for (std::ptrdiff_t i = l; i <= last; ++i) {
        const Complex t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = t1 * cg + t2 * sg;
        h(i, k + 1) = -t1 * std::conj(sg) + t2 * std::conj(cg);
      }
    }
    for (std::ptrdiff_t k = l; k <= hi; ++k) h(k, k) += mu;
  }

  std::sort(eig.begin(), eig.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return eig;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.rows() > kMaxKernelDim || m.cols() > kMaxKernelDim) {
    throw DimensionError("singular_values: dimension exceeds " + std::to_string(kMaxKernelDim));
  }
  if (!m.all_finite()) throw ContractError("singular_values: non-finite entry");
  // Orthogonalise the shorter side's vectors, stored as rows.
  ComplexMatrix a = m.rows() > m.cols() ? adjoint(m) : m;
  const std::size_t r = a.rows();
  const std::size_t len = a.cols();
  const auto& kern = simd::active_kernels();

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < r; ++p) {
      for (std::size_t q = p + 1; q < r; ++q) {
        const double alpha = kern.dotc(len, &a(p, 0), &a(p, 0)).real();
        const double beta = kern.dotc(len, &a(q, 0), &a(q, 0)).real();
        const Complex gamma = kern.dotc(len, &a(p, 0), &a(q, 0));
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 4.0 * kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex e = std::conj(gamma) / g;  // e^{-i phi}
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        kern.rot(len, &a(p, 0), &a(q, 0), c, -s * e, s, c * e);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(r);
  for (std::size_t p = 0; p < r; ++p) sv[p] = std::sqrt(kern.dotc(len, &a(p, 0), &a(p, 0)).real());
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (cols > rows) throw DimensionError("orthonormalize_columns: more columns than rows");
  ComplexMatrix q = transpose(m);  // columns as contiguous rows
  const auto& kern = simd::active_kernels();
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      const Complex proj = kern.dotc(rows, &q(k, 0), &q(j, 0));
      kern.axpy(rows, -proj, &q(k, 0), &q(j, 0));
    }
    const double nrm = std::sqrt(kern.dotc(rows, &q(j, 0), &q(j, 0)).real());
    if (nrm == 0.0) throw DegenerateError("orthonormalize_columns: linearly dependent columns");
    for (auto& z : q.row(j)) z /= nrm;
  }
  return transpose(q);
}

}  // namespace permutangle
