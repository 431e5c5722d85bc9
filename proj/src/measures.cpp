#include "permutangle/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "permutangle/error.hpp"
#include "permutangle/linalg.hpp"
#include "permutangle/permutations.hpp"

namespace permutangle {
namespace {

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.dims() != Dims{2, 2}) throw DimensionError(std::string(what) + ": two-qubit state expected");
}

std::size_t equal_local_dim(const DensityMatrix& rho, const char* what) {
  if (rho.parties() != 2) throw DimensionError(std::string(what) + ": bipartite state expected");
  if (rho.dims()[0] != rho.dims()[1])
    throw UnsupportedDimensionError(std::string(what) + ": unequal subsystem dimensions");
  return rho.dims()[0];
}

bool realigned_rank_deficient(const std::vector<double>& sv) {
  return sv.empty() || sv.back() <= tol::kRealignedRank * sv.front();
}

}  // namespace

double separable_r12_bound() { return std::pow(1.0 / 3.0, 0.75); }

double checked_unit(double raw, const char* what) {
  if (!std::isfinite(raw) || raw < -tol::kMeasureRange || raw > 1.0 + tol::kMeasureRange) {
    throw ContractError(std::string(what) + ": raw value " + std::to_string(raw) + " outside [0, 1]");
  }
  return std::clamp(raw, 0.0, 1.0);
}

double r12(const DensityMatrix& rho) {
  const std::size_t d = equal_local_dim(rho, "r12");
  const ComplexMatrix r = realigned_pt(rho);
  if (realigned_rank_deficient(singular_values(r))) return 0.0;
  const double det = std::abs(determinant(r));
  const double dd = static_cast<double>(d);
  return checked_unit(dd * std::pow(det, 1.0 / (dd * dd)), "r12");
}

double r12_via_singular_values(const DensityMatrix& rho) {
  const std::size_t d = equal_local_dim(rho, "r12");
  const auto sv = singular_values(realigned_pt(rho));
  if (realigned_rank_deficient(sv)) return 0.0;
  double log_sum = 0.0;
  for (double s : sv) log_sum += std::log(s);
  const double dd = static_cast<double>(d);
  return checked_unit(dd * std::exp(log_sum / static_cast<double>(sv.size())), "r12");
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const auto eig = eig_hermitian_decompose(rho.matrix());
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < 4; ++k)
    if (eig.values[k] > tol::kRank) support.push_back(k);
  const std::size_t r = support.size();
  if (r == 0) throw DegenerateError("concurrence: state has no support");
  ComplexMatrix a(4, r);
  for (std::size_t c = 0; c < r; ++c) {
    const double w = std::sqrt(eig.values[support[c]]);
    for (std::size_t x = 0; x < 4; ++x) a(x, c) = w * eig.vectors(x, support[c]);
  }
  // sy (x) sy is the anti-diagonal (-1, 1, 1, -1).
  ComplexMatrix flip(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const ComplexMatrix tau = transpose(a) * flip * a;
  const auto s = singular_values(tau);
  double raw = s[0];
  for (std::size_t k = 1; k < s.size(); ++k) raw -= s[k];
  return checked_unit(std::max(raw, 0.0), "concurrence");
}

double negativity(const DensityMatrix& rho) {
  require_two_qubits(rho, "negativity");
  const auto w = eig_hermitian(partial_transpose(rho, 1));
  return checked_unit(std::max(0.0, -2.0 * w.front()), "negativity");
}

double three_tangle(const PureState& psi) {
  if (psi.dims() != Dims{2, 2, 2}) throw DimensionError("three_tangle: three-qubit pure state expected");
  const DensityMatrix r1 = reduce(psi, {0});
  const double det1 = (r1(0, 0) * r1(1, 1) - r1(0, 1) * r1(1, 0)).real();
  const double c12 = concurrence(reduce(psi, {0, 1}));
  const double c13 = concurrence(reduce(psi, {0, 2}));
  return checked_unit(4.0 * det1 - c12 * c12 - c13 * c13, "three_tangle");
}

double tau_from_r_c(double r12, double c12) {
  if (!(c12 > 1e-12)) throw DegenerateError("tau_from_r_c: concurrence too small for the ratio");
  const double c2 = c12 * c12;
  return (r12 * r12 * r12 * r12 - c2 * c2) / c2;
}

double ccnr_norm(const DensityMatrix& rho) {
  if (rho.parties() != 2) throw DimensionError("ccnr_norm: bipartite state expected");
  const auto sv = singular_values(realign(rho.matrix(), rho.dims()[0], rho.dims()[1]).matrix);
  double s = 0.0;
  for (double x : sv) s += x;
  return s;
}

double linear_entropy(const DensityMatrix& rho) {
  require_two_qubits(rho, "linear_entropy");
  return checked_unit(4.0 / 3.0 * (1.0 - purity(rho)), "linear_entropy");
}

bool witness_r12(const DensityMatrix& rho) { return r12(rho) > separable_r12_bound(); }

}  // namespace permutangle
