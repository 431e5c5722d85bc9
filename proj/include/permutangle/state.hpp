#pragma once

// State containers and the constructions the experiments are built from:
// Haar sampling, partial trace, purification and the two perturbation
// recipes (density-matrix mixing and pure-state perturbation).
//
// Subsystems are indexed from 0 and ordered row-major: the leftmost factor
// is the slowest-varying index of the amplitude vector / matrix.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "permutangle/complex_matrix.hpp"
#include "permutangle/rng.hpp"

namespace permutangle {

using Dims = std::vector<std::size_t>;

namespace tol {
/// | ||psi|| - 1 | allowed for a PureState.
inline constexpr double kNorm = 1e-12;
/// Hermiticity, trace and negative-eigenvalue slack for a DensityMatrix.
inline constexpr double kState = 1e-10;
/// Eigenvalues at or below this do not count towards the numerical rank.
inline constexpr double kRank = 1e-12;
}  // namespace tol

std::size_t total_dim(const Dims& dims);

class PureState {
 public:
  /// Throws DimensionError if the amplitude count does not match the dims,
  /// ContractError if the norm is off by more than tol::kNorm.
  PureState(Dims dims, std::vector<Complex> amplitudes);

  /// Scales the amplitudes to unit norm first; DegenerateError on a zero vector.
  static PureState normalized(Dims dims, std::vector<Complex> amplitudes);

  const Dims& dims() const { return dims_; }
  std::size_t parties() const { return dims_.size(); }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  Dims dims_;
  std::vector<Complex> amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity to tol::kState.
  DensityMatrix(Dims dims, ComplexMatrix matrix);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Dims dims);

  /// Skips validation. For constructions that are valid by construction
  /// (partial traces of normalised states, convex combinations).
  static DensityMatrix trusted(Dims dims, ComplexMatrix matrix);

  const Dims& dims() const { return dims_; }
  std::size_t parties() const { return dims_.size(); }
  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

 private:
  struct TrustedTag {};
  DensityMatrix(Dims dims, ComplexMatrix matrix, TrustedTag);

  Dims dims_;
  ComplexMatrix matrix_;
};

/// Throws ContractError naming the first violated density-matrix invariant.
void validate_density(const ComplexMatrix& m, const Dims& dims);

/// Number of eigenvalues above tol::kRank.
std::size_t numerical_rank(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

/// Normalised vector of i.i.d. complex Gaussians. Every factor must be >= 2.
PureState haar_random_pure(const Dims& dims, Rng& rng);

/// Haar-distributed n x n unitary (QR of a Ginibre matrix).
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

/// Partial trace onto `keep`. The output factors follow the order given in
/// `keep`, so {1, 0} on a bipartite state exchanges the subsystems.
DensityMatrix reduce(const PureState& psi, std::span<const std::size_t> keep);
DensityMatrix reduce(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix reduce(const PureState& psi, std::initializer_list<std::size_t> keep);
DensityMatrix reduce(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

/// sum_i sqrt(p_i) |v_i>|i> over the spectral decomposition, with an
/// ancilla of dimension numerical_rank(rho) appended as the last factor.
PureState purify(const DensityMatrix& rho);

/// As above, followed by a Haar-random unitary on the ancilla.
PureState purify(const DensityMatrix& rho, Rng& rng);

/// (a + eps b) / (1 + eps).
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double eps);

/// (psi + eps psi_r) / ||psi + eps psi_r||. DegenerateError when the sum
/// cancels below 1e-12.
PureState perturb_pure(const PureState& psi, const PureState& psi_r, double eps);

using EigenTriple = std::array<PureState, 3>;

/// cos^2(theta)|v1><v1| + sin^2(theta)cos^2(phi)|v2><v2| + sin^2(theta)sin^2(phi)|v3><v3|.
DensityMatrix fixed_eigvecs_state(const EigenTriple& eigvecs, double theta, double phi);

/// fixed_eigvecs_state with theta ~ U[0, pi), phi ~ U[0, 2 pi).
DensityMatrix random_fixed_eigvecs(const EigenTriple& eigvecs, Rng& rng);

/// (U1 (x) U2) rho (U1 (x) U2)^dagger for a bipartite rho.
DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const ComplexMatrix& u1, const ComplexMatrix& u2);

/// (U_0 (x) U_1 (x) ...) |psi>.
PureState apply_local_unitaries(const PureState& psi, std::span<const ComplexMatrix> unitaries);

namespace bell {
PureState phi_plus();   // (|00> + |11>)/sqrt2
PureState phi_minus();  // (|00> - |11>)/sqrt2
PureState psi_plus();   // (|01> + |10>)/sqrt2
PureState psi_minus();  // (|01> - |10>)/sqrt2
}  // namespace bell

/// (|0...0> + |1...1>)/sqrt2 on n qubits.
PureState ghz(std::size_t qubits);

/// Product state |a> (x) |b> (x) ...
PureState product(std::span<const PureState> factors);

}  // namespace permutangle
