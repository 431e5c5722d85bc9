#pragma once

// Dense complex kernels for matrices up to kMaxKernelDim. Each operation has
// an accuracy contract pinned by the constants below; tests check against
// independent oracles (cofactor expansion, reconstruction residuals).

#include <vector>

#include "permutangle/complex_matrix.hpp"

namespace permutangle {

namespace tol {
/// |det - cofactor oracle| <= kDeterminant * max(1, |oracle|).
inline constexpr double kDeterminant = 1e-12;
/// Input accepted as Hermitian when max|m - m^dagger| is at most this.
inline constexpr double kHermitian = 1e-10;
/// Sum of Hermitian eigenvalues vs trace.
inline constexpr double kHermitianTrace = 1e-10;
/// max|V diag(w) V^dagger - m| after Hermitian diagonalisation.
inline constexpr double kReconstruction = 1e-9;
/// Sum of general eigenvalues vs trace, and |p(lambda)| per root.
inline constexpr double kGeneralEigen = 1e-8;
/// prod sigma vs |det|, and sum sigma^2 vs ||m||_F^2.
inline constexpr double kSingular = 1e-10;
}  // namespace tol

/// LU with partial pivoting. Throws DimensionError when not square or
/// larger than kMaxKernelDim.
Complex determinant(const ComplexMatrix& m);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi. Throws ContractError when m is not Hermitian
/// within tol::kHermitian.
HermitianEigen eig_hermitian_decompose(const ComplexMatrix& m);

/// Eigenvalues only, ascending.
std::vector<double> eig_hermitian(const ComplexMatrix& m);

/// Hessenberg reduction followed by shifted complex QR. Sorted by real part,
/// then imaginary part.
std::vector<Complex> eig_general(const ComplexMatrix& m);

/// One-sided Jacobi; descending, min(rows, cols) values.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Q factor of a Gram-Schmidt QR whose R has a positive real diagonal; a
/// Ginibre input therefore yields a Haar unitary.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

}  // namespace permutangle
