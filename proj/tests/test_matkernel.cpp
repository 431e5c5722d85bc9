#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "permutangle/error.hpp"
#include "permutangle/linalg.hpp"
#include "permutangle/state.hpp"

using namespace permutangle;

namespace {

ComplexMatrix werner_pt(double p) {
  // p |psi-><psi-| + (1-p) I/4, transposed on the second qubit.
  ComplexMatrix rho = Complex(1.0 - p) * Complex(0.25) * ComplexMatrix::identity(4);
  rho(1, 1) += p / 2;
  rho(2, 2) += p / 2;
  rho(1, 2) -= p / 2;
  rho(2, 1) -= p / 2;
  ComplexMatrix pt(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t b = 0; b < 2; ++b) pt(i * 2 + a, j * 2 + b) = rho(i * 2 + b, j * 2 + a);
  return pt;
}

}  // namespace

TEST_CASE("determinant of identity and singular diagonal") {
  CHECK(std::abs(determinant(ComplexMatrix::identity(4)) - Complex(1.0)) == 0.0);
  CHECK(std::abs(determinant(ComplexMatrix::diagonal({0.5, 0.0, 0.0, 0.5}))) == 0.0);
}

TEST_CASE("determinant matches cofactor expansion") {
  Rng rng(11, 0);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix m = oracle::random_matrix(n, n, rng);
      const Complex ref = oracle::cofactor_det(m);
      CHECK(std::abs(determinant(m) - ref) <= tol::kDeterminant * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("determinant rejects non-square input") {
  CHECK_THROWS_AS(determinant(ComplexMatrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(determinant(ComplexMatrix(17, 17)), DimensionError);
}

TEST_CASE("determinant is multiplicative") {
  Rng rng(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix a = oracle::random_matrix(4, 4, rng);
    const ComplexMatrix b = oracle::random_matrix(4, 4, rng);
    CHECK(std::abs(determinant(a * b) - determinant(a) * determinant(b)) <= 1e-10);
  }
}

TEST_CASE("eig_hermitian examples") {
  const auto d = eig_hermitian(ComplexMatrix::diagonal({0.4, 0.2, 0.1, 0.3}));
  const double want[] = {0.1, 0.2, 0.3, 0.4};
  for (int k = 0; k < 4; ++k) CHECK(d[k] == doctest::Approx(want[k]).epsilon(1e-15));

  const auto w = eig_hermitian(werner_pt(0.5));
  CHECK(std::abs(w[0] + 0.125) <= 1e-12);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(w[k] - 0.375) <= 1e-12);

  const std::vector<Complex> v{Complex(0.5, 0.1), Complex(-0.3, 0.2), Complex(0.0, 0.6), Complex(0.4, 0.0)};
  double nv = 0;
  for (auto z : v) nv += std::norm(z);
  const ComplexMatrix proj = Complex(1.0 / nv) * outer(v, v);
  const auto pv = eig_hermitian(proj);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(pv[k]) <= 1e-12);
  CHECK(std::abs(pv[3] - 1.0) <= 1e-12);
}

TEST_CASE("eig_hermitian trace and reconstruction") {
  Rng rng(13, 0);
  for (std::size_t n : {1u, 2u, 3u, 4u, 8u, 16u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix h = oracle::random_hermitian(n, rng);
      const HermitianEigen e = eig_hermitian_decompose(h);
      double sum = 0;
      for (double x : e.values) sum += x;
      CHECK(std::abs(sum - trace(h).real()) <= tol::kHermitianTrace);
      CHECK(std::is_sorted(e.values.begin(), e.values.end()));
      std::vector<Complex> dv(e.values.begin(), e.values.end());
      const ComplexMatrix back = e.vectors * ComplexMatrix::diagonal(dv) * adjoint(e.vectors);
      CHECK(max_abs_diff(back, h) <= tol::kReconstruction);
    }
  }
}

TEST_CASE("eig_hermitian recovers a conjugated diagonal") {
  Rng rng(14, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> d;
    for (int k = 0; k < 4; ++k) d.push_back(rng.uniform(-1.0, 1.0));
    const ComplexMatrix u = haar_unitary(4, rng);
    const auto got = eig_hermitian(u * ComplexMatrix::diagonal(d) * adjoint(u));
    std::vector<double> want;
    for (auto z : d) want.push_back(z.real());
    std::sort(want.begin(), want.end());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9);
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::identity(2);
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(eig_hermitian(m), ContractError);
  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("eig_general examples") {
  ComplexMatrix t{{1.0, 5.0, Complex(0, 2)}, {0.0, Complex(2, 1), 7.0}, {0.0, 0.0, 3.0}};
  const auto e = eig_general(t);
  REQUIRE(e.size() == 3);
  const Complex want[] = {1.0, Complex(2, 1), 3.0};
  for (const Complex& w : want) {
    double best = 1e9;
    for (const Complex& z : e) best = std::min(best, std::abs(z - w));
    CHECK(best <= 1e-12);
  }

  const PureState bell = bell::phi_plus();
  const ComplexMatrix rho = DensityMatrix::from_pure(bell).matrix();
  ComplexMatrix yy(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  auto b = eig_general(rho * (yy * conjugate(rho) * yy));
  std::sort(b.begin(), b.end(), [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  CHECK(std::abs(b[0] - 1.0) <= 1e-12);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(b[k]) <= 1e-12);

  const auto nil = eig_general(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
  REQUIRE(nil.size() == 2);
  for (auto z : nil) CHECK(std::abs(z) <= 1e-12);
}

TEST_CASE("eig_general trace and characteristic residual") {
  Rng rng(15, 0);
  for (std::size_t n : {2u, 3u, 4u, 6u, 8u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const ComplexMatrix m = oracle::random_matrix(n, n, rng);
      const auto e = eig_general(m);
      REQUIRE(e.size() == n);
      Complex sum = 0;
      for (auto z : e) sum += z;
      CHECK(std::abs(sum - trace(m)) <= tol::kGeneralEigen);
      for (auto z : e) {
        const ComplexMatrix shifted = z * ComplexMatrix::identity(n) - m;
        CHECK(std::abs(determinant(shifted)) <= tol::kGeneralEigen);
      }
    }
  }
}

TEST_CASE("singular value examples") {
  for (double s : singular_values(ComplexMatrix::identity(4))) CHECK(std::abs(s - 1.0) <= 1e-15);
  ComplexMatrix swap(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 0.5;
  for (double s : singular_values(swap)) CHECK(std::abs(s - 0.5) <= 1e-15);
}

TEST_CASE("singular values: product, Frobenius norm, ordering") {
  Rng rng(16, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix m = oracle::random_matrix(4, 4, rng);
    const auto s = singular_values(m);
    CHECK(std::is_sorted(s.rbegin(), s.rend()));
    double prod = 1, sq = 0;
    for (double x : s) {
      CHECK(x >= 0.0);
      prod *= x;
      sq += x * x;
    }
    CHECK(std::abs(prod - std::abs(determinant(m))) <= tol::kSingular);
    CHECK(std::abs(sq - frobenius_norm(m) * frobenius_norm(m)) <= tol::kSingular);
  }
  for (auto [r, c] : {std::pair{3u, 5u}, std::pair{6u, 2u}, std::pair{1u, 4u}}) {
    const ComplexMatrix m = oracle::random_matrix(r, c, rng);
    const auto s = singular_values(m);
    CHECK(s.size() == std::min(r, c));
    double sq = 0;
    for (double x : s) sq += x * x;
    CHECK(std::abs(sq - frobenius_norm(m) * frobenius_norm(m)) <= tol::kSingular);
  }
}

TEST_CASE("kron examples") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
  const Complex a = 2.0, b = Complex(0, 1), c = -3.0, d = 0.5;
  CHECK(kron(ComplexMatrix::diagonal({a, b}), ComplexMatrix::diagonal({c, d})) ==
        ComplexMatrix::diagonal({a * c, a * d, b * c, b * d}));
  const ComplexMatrix k = kron(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0}));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t cc = 0; cc < 4; ++cc) CHECK(k(r, cc) == Complex(r == 1 && cc == 1 ? 1.0 : 0.0));
  CHECK(kron(ComplexMatrix(2, 3), ComplexMatrix(4, 1)).rows() == 8);
  CHECK(kron(ComplexMatrix(2, 3), ComplexMatrix(4, 1)).cols() == 3);
}

TEST_CASE("matrix basics") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2) * ComplexMatrix(3, 3), DimensionError);
  ComplexMatrix m{{1.0, Complex(2, 1)}, {Complex(0, -1), 4.0}};
  CHECK(adjoint(adjoint(m)) == m);
  CHECK(trace(m) == Complex(5.0));
  CHECK(m.all_finite());
  m(0, 0) = std::nan("");
  CHECK_FALSE(m.all_finite());
}

TEST_CASE("orthonormalize_columns yields a unitary") {
  Rng rng(17, 0);
  const ComplexMatrix q = orthonormalize_columns(oracle::random_matrix(5, 5, rng));
  CHECK(max_abs_diff(adjoint(q) * q, ComplexMatrix::identity(5)) <= 1e-12);
}
