#pragma once

// Partial transpose, realignment and their composition ("link transform").
//
// Index convention, for a bipartite operator on C^d1 (x) C^d2 with the first
// factor slow:  m[(i*d2 + a), (j*d2 + b)] is <i|<a| m |j>|b>.
//
//   partial transpose on factor 2:  out[(i,a),(j,b)] = m[(i,b),(j,a)]
//   realignment:                    out[(i,j),(a,b)] = m[(i,a),(j,b)]

#include <cstddef>
#include <cstdint>
#include <vector>

#include "permutangle/complex_matrix.hpp"
#include "permutangle/state.hpp"

namespace permutangle {

/// Partial transpose of a d1*d2 square matrix on factor 0 or 1.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d1, std::size_t d2, std::size_t subsystem);

/// Bipartite states only (DimensionError otherwise).
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem);

struct RealignedMatrix {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  ComplexMatrix matrix;  // d1^2 x d2^2
};

/// Only d1 == d2 is supported; unequal factors throw UnsupportedDimensionError.
RealignedMatrix realign(const ComplexMatrix& m, std::size_t d1, std::size_t d2);

/// Row-major stacking into a column.
std::vector<Complex> reshape_vec(const ComplexMatrix& m);

/// Realignment of the partial transpose on factor 2.
ComplexMatrix realigned_pt(const DensityMatrix& rho);

struct LinkProduct {
  ComplexMatrix matrix;      // R(rho^T2) R(rho^T2)^dagger
  std::uint64_t source = 0;  // fingerprint of the source matrix entries
};

/// FNV-1a over the raw entry bytes.
std::uint64_t fingerprint(const ComplexMatrix& m);

LinkProduct link_product(const DensityMatrix& rho);

/// R(rho_ab^{T_b}) where rho_ab keeps subsystems (a, b) in that order.
ComplexMatrix link_transform(const PureState& psi, std::size_t a, std::size_t b);

/// Product of link transforms around the closed path i1 -> i2 -> ... -> iK -> i1,
/// ordered link(i1,iK) link(iK,iK-1) ... link(i2,i1). Needs at least two labels
/// and equal local dimensions on every link.
ComplexMatrix path_product(const PureState& psi, const std::vector<std::size_t>& path);

/// Eigenvalues of path_product, sorted as eig_general sorts them.
std::vector<Complex> path_invariant_spectrum(const PureState& psi, const std::vector<std::size_t>& path);

}  // namespace permutangle
