#pragma once

// Scalar correlation and entanglement measures.
//
// Every measure with a [0, 1] range checks its raw value against
// [-tol::kMeasureRange, 1 + tol::kMeasureRange] before clamping; a value
// further out throws ContractError instead of being silently clipped.

#include "permutangle/state.hpp"

namespace permutangle {

namespace tol {
inline constexpr double kMeasureRange = 1e-9;
/// Singular values of R(rho^T2) at or below this fraction of the largest
/// are treated as exact zeros, so rank-deficient inputs give R = 0 rather
/// than the fourth root of rounding noise.
inline constexpr double kRealignedRank = 1e-14;
}  // namespace tol

/// (1/3)^(3/4): largest R among separable two-qubit states.
double separable_r12_bound();

/// Clamp to [0, 1] after checking the raw value is within the slack.
double checked_unit(double raw, const char* what);

/// d |det R(rho^T2)|^(1/d^2), equal local dimensions only.
double r12(const DensityMatrix& rho);

/// Same quantity as d * geometric mean of the singular values.
double r12_via_singular_values(const DensityMatrix& rho);

/// Two-qubit concurrence. Uses the singular values of A^T (sy (x) sy) A with
/// rho = A A^dagger, which are the square roots of the eigenvalues of
/// rho (sy (x) sy) rho^* (sy (x) sy) without taking square roots of noise.
double concurrence(const DensityMatrix& rho);

/// max(0, -2 * smallest eigenvalue of rho^T2), two qubits.
double negativity(const DensityMatrix& rho);

/// 4 det(rho_1) - C_12^2 - C_13^2 for a three-qubit pure state.
double three_tangle(const PureState& psi);

/// (R^4 - C^4) / C^2. DegenerateError when c12 <= 1e-12.
double tau_from_r_c(double r12, double c12);

/// Trace norm of the realigned state (no partial transpose).
double ccnr_norm(const DensityMatrix& rho);

/// (4/3)(1 - tr rho^2), two qubits.
double linear_entropy(const DensityMatrix& rho);

/// r12(rho) > (1/3)^(3/4): sufficient for entanglement.
bool witness_r12(const DensityMatrix& rho);

}  // namespace permutangle
