#include "permutangle/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "permutangle/error.hpp"
#include "permutangle/linalg.hpp"

namespace permutangle {
namespace {

std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Flat offsets of every multi-index over `parts` (mixed radix in the given order).
std::vector<std::size_t> offsets_for(const Dims& dims, const std::vector<std::size_t>& strides,
                                     const std::vector<std::size_t>& parts) {
  std::vector<std::size_t> out{0};
  for (std::size_t p : parts) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * dims[p]);
    for (std::size_t base : out)
      for (std::size_t v = 0; v < dims[p]; ++v) next.push_back(base + v * strides[p]);
    out = std::move(next);
  }
  return out;
}

struct Split {
  std::vector<std::size_t> keep;
  std::vector<std::size_t> traced;
};

Split split_parties(const Dims& dims, std::span<const std::size_t> keep) {
  if (keep.empty()) throw DomainError("reduce: keep set is empty");
  std::vector<bool> seen(dims.size(), false);
  Split s;
  for (std::size_t k : keep) {
    if (k >= dims.size()) {
      throw DomainError("reduce: subsystem " + std::to_string(k) + " out of range for " +
                        std::to_string(dims.size()) + " parties");
    }
    if (seen[k]) throw DomainError("reduce: subsystem " + std::to_string(k) + " listed twice");
    seen[k] = true;
    s.keep.push_back(k);
  }
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (!seen[i]) s.traced.push_back(i);
  return s;
}

Dims sub_dims(const Dims& dims, const std::vector<std::size_t>& parts) {
  Dims d;
  for (std::size_t p : parts) d.push_back(dims[p]);
  return d;
}

void symmetrize(ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

}  // namespace

std::size_t total_dim(const Dims& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

PureState::PureState(Dims dims, std::vector<Complex> amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (dims_.empty()) throw DimensionError("PureState: empty dims");
  if (std::find(dims_.begin(), dims_.end(), std::size_t{0}) != dims_.end())
    throw DimensionError("PureState: zero-dimensional factor");
  if (total_dim(dims_) != amplitudes_.size()) {
    throw DimensionError("PureState: " + std::to_string(amplitudes_.size()) + " amplitudes for dimension " +
                         std::to_string(total_dim(dims_)));
  }
  double n2 = 0.0;
  for (const auto& a : amplitudes_) n2 += std::norm(a);
  if (!std::isfinite(n2) || std::abs(std::sqrt(n2) - 1.0) > tol::kNorm) {
    throw ContractError("PureState: norm " + std::to_string(std::sqrt(n2)) + " is not 1");
  }
}

PureState PureState::normalized(Dims dims, std::vector<Complex> amplitudes) {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  const double n = std::sqrt(n2);
  if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateError("PureState: cannot normalise a zero vector");
  for (auto& a : amplitudes) a /= n;
  return PureState(std::move(dims), std::move(amplitudes));
}

void validate_density(const ComplexMatrix& m, const Dims& dims) {
  if (!m.is_square()) throw DimensionError("DensityMatrix: matrix not square");
  if (total_dim(dims) != m.rows()) {
    throw DimensionError("DensityMatrix: dims multiply to " + std::to_string(total_dim(dims)) + ", matrix is " +
                         std::to_string(m.rows()));
  }
  if (!m.all_finite()) throw ContractError("DensityMatrix: non-finite entry");
  if (hermiticity_defect(m) > tol::kState) throw ContractError("DensityMatrix: not Hermitian");
  const Complex tr = trace(m);
  if (std::abs(tr - 1.0) > tol::kState) throw ContractError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  const auto w = eig_hermitian(m);
  if (!w.empty() && w.front() < -tol::kState) {
    throw ContractError("DensityMatrix: negative eigenvalue " + std::to_string(w.front()));
  }
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  validate_density(matrix_, dims_);
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix matrix, TrustedTag)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (total_dim(dims_) != matrix_.rows() || !matrix_.is_square())
    throw DimensionError("DensityMatrix: dims do not match matrix");
}

DensityMatrix DensityMatrix::trusted(Dims dims, ComplexMatrix matrix) {
  return DensityMatrix(std::move(dims), std::move(matrix), TrustedTag{});
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  auto amps = psi.amplitudes();
  ComplexMatrix m = outer(amps, amps);
  symmetrize(m);
  return trusted(psi.dims(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  const std::size_t n = total_dim(dims);
  ComplexMatrix m = ComplexMatrix::identity(n);
  m *= 1.0 / static_cast<double>(n);
  return trusted(std::move(dims), std::move(m));
}

std::size_t numerical_rank(const DensityMatrix& rho) {
  const auto w = eig_hermitian(rho.matrix());
  return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](double x) { return x > tol::kRank; }));
}

double purity(const DensityMatrix& rho) {
  double s = 0.0;
  for (const auto& z : rho.matrix().entries()) s += std::norm(z);
  return s;
}

PureState haar_random_pure(const Dims& dims, Rng& rng) {
  if (dims.empty()) throw DomainError("haar_random_pure: empty dims");
  for (std::size_t d : dims)
    if (d < 2) throw DomainError("haar_random_pure: every factor needs dimension >= 2");
  std::vector<Complex> amps(total_dim(dims));
  for (auto& a : amps) a = rng.complex_normal();
  return PureState::normalized(dims, std::move(amps));
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix g(n, n);
  for (auto& z : g.entries()) z = rng.complex_normal();
  return orthonormalize_columns(g);
}

DensityMatrix reduce(const PureState& psi, std::span<const std::size_t> keep) {
  const Split s = split_parties(psi.dims(), keep);
  const auto strides = strides_of(psi.dims());
  const auto kept = offsets_for(psi.dims(), strides, s.keep);
  const auto traced = offsets_for(psi.dims(), strides, s.traced);
  ComplexMatrix amp(kept.size(), traced.size());
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t t = 0; t < traced.size(); ++t) amp(a, t) = psi[kept[a] + traced[t]];
  ComplexMatrix rho = amp * adjoint(amp);
  symmetrize(rho);
  return DensityMatrix::trusted(sub_dims(psi.dims(), s.keep), std::move(rho));
}

DensityMatrix reduce(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const Split s = split_parties(rho.dims(), keep);
  const auto strides = strides_of(rho.dims());
  const auto kept = offsets_for(rho.dims(), strides, s.keep);
  const auto traced = offsets_for(rho.dims(), strides, s.traced);
  ComplexMatrix out(kept.size(), kept.size());
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = 0; b < kept.size(); ++b) {
      Complex acc = 0.0;
      for (std::size_t t : traced) acc += rho(kept[a] + t, kept[b] + t);
      out(a, b) = acc;
    }
  symmetrize(out);
  return DensityMatrix::trusted(sub_dims(rho.dims(), s.keep), std::move(out));
}

DensityMatrix reduce(const PureState& psi, std::initializer_list<std::size_t> keep) {
  return reduce(psi, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityMatrix reduce(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return reduce(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

PureState purify(const DensityMatrix& rho) {
  const auto eig = eig_hermitian_decompose(rho.matrix());
  const std::size_t n = rho.dim();
  std::vector<std::size_t> support;
  for (std::size_t k = n; k-- > 0;)
    if (eig.values[k] > tol::kRank) support.push_back(k);  // descending weight
  const std::size_t r = support.size();
  if (r == 0) throw DegenerateError("purify: state has no eigenvalue above the rank threshold");
  std::vector<Complex> amps(n * r);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t k = support[i];
    const double w = std::sqrt(eig.values[k]);
    for (std::size_t x = 0; x < n; ++x) amps[x * r + i] = w * eig.vectors(x, k);
  }
  Dims dims = rho.dims();
  dims.push_back(r);
  return PureState::normalized(std::move(dims), std::move(amps));
}

PureState purify(const DensityMatrix& rho, Rng& rng) {
  const PureState base = purify(rho);
  const std::size_t r = base.dims().back();
  const std::size_t n = base.dim() / r;
  const ComplexMatrix u = haar_unitary(r, rng);
  std::vector<Complex> amps(base.dim());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < r; ++j) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < r; ++i) acc += u(j, i) * base[x * r + i];
      amps[x * r + j] = acc;
    }
  return PureState::normalized(base.dims(), std::move(amps));
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double eps) {
  if (a.dims() != b.dims()) throw DimensionError("mix: subsystem dims differ");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("mix: eps must be finite and >= 0");
  ComplexMatrix m = a.matrix() + eps * b.matrix();
  m *= 1.0 / (1.0 + eps);
  symmetrize(m);
  return DensityMatrix::trusted(a.dims(), std::move(m));
}

PureState perturb_pure(const PureState& psi, const PureState& psi_r, double eps) {
  if (psi.dims() != psi_r.dims()) throw DimensionError("perturb_pure: dims differ");
  if (!std::isfinite(eps)) throw DomainError("perturb_pure: eps must be finite");
  std::vector<Complex> amps(psi.dim());
  double n2 = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = psi[i] + eps * psi_r[i];
    n2 += std::norm(amps[i]);
  }
  if (std::sqrt(n2) < 1e-12) throw DegenerateError("perturb_pure: perturbation cancels the state");
  return PureState::normalized(psi.dims(), std::move(amps));
}

DensityMatrix fixed_eigvecs_state(const EigenTriple& eigvecs, double theta, double phi) {
  const Dims& dims = eigvecs[0].dims();
  for (const auto& v : eigvecs)
    if (v.dims() != dims) throw DimensionError("fixed_eigvecs_state: eigenvectors have different dims");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Complex ip = 0.0;
      for (std::size_t k = 0; k < eigvecs[i].dim(); ++k) ip += std::conj(eigvecs[i][k]) * eigvecs[j][k];
      if (std::abs(ip - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw DomainError("fixed_eigvecs_state: eigenvectors are not orthonormal");
    }
  const double c = std::cos(theta), s = std::sin(theta);
  const double weights[3] = {c * c, s * s * std::cos(phi) * std::cos(phi), s * s * std::sin(phi) * std::sin(phi)};
  const std::size_t n = eigvecs[0].dim();
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < 3; ++k) m += weights[k] * outer(eigvecs[k].amplitudes(), eigvecs[k].amplitudes());
  symmetrize(m);
  return DensityMatrix::trusted(dims, std::move(m));
}

DensityMatrix random_fixed_eigvecs(const EigenTriple& eigvecs, Rng& rng) {
  const double theta = rng.uniform(0.0, std::numbers::pi);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return fixed_eigvecs_state(eigvecs, theta, phi);
}

DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const ComplexMatrix& u1, const ComplexMatrix& u2) {
  if (rho.parties() != 2) throw DimensionError("apply_local_unitaries: bipartite state expected");
  if (u1.rows() != rho.dims()[0] || u2.rows() != rho.dims()[1] || !u1.is_square() || !u2.is_square())
    throw DimensionError("apply_local_unitaries: unitary sizes do not match subsystem dims");
  const ComplexMatrix u = kron(u1, u2);
  ComplexMatrix m = u * rho.matrix() * adjoint(u);
  symmetrize(m);
  return DensityMatrix::trusted(rho.dims(), std::move(m));
}

PureState apply_local_unitaries(const PureState& psi, std::span<const ComplexMatrix> unitaries) {
  if (unitaries.size() != psi.parties()) throw DimensionError("apply_local_unitaries: one unitary per party");
  ComplexMatrix u = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    if (unitaries[i].rows() != psi.dims()[i] || !unitaries[i].is_square())
      throw DimensionError("apply_local_unitaries: unitary size mismatch");
    u = kron(u, unitaries[i]);
  }
  ComplexMatrix col(psi.dim(), 1, std::vector<Complex>(psi.amplitudes().begin(), psi.amplitudes().end()));
  const ComplexMatrix out = u * col;
  return PureState::normalized(psi.dims(), std::vector<Complex>(out.entries().begin(), out.entries().end()));
}

namespace bell {
namespace {
PureState two_qubit(Complex a, Complex b, Complex c, Complex d) {
  return PureState::normalized({2, 2}, {a, b, c, d});
}
}  // namespace
PureState phi_plus() { return two_qubit(1.0, 0.0, 0.0, 1.0); }
PureState phi_minus() { return two_qubit(1.0, 0.0, 0.0, -1.0); }
PureState psi_plus() { return two_qubit(0.0, 1.0, 1.0, 0.0); }
PureState psi_minus() { return two_qubit(0.0, 1.0, -1.0, 0.0); }
}  // namespace bell

PureState ghz(std::size_t qubits) {
  if (qubits == 0) throw DomainError("ghz: need at least one qubit");
  std::vector<Complex> amps(std::size_t{1} << qubits);
  amps.front() = 1.0;
  amps.back() = 1.0;
  return PureState::normalized(Dims(qubits, 2), std::move(amps));
}

PureState product(std::span<const PureState> factors) {
  if (factors.empty()) throw DomainError("product: no factors");
  Dims dims;
  std::vector<Complex> amps{1.0};
  for (const auto& f : factors) {
    dims.insert(dims.end(), f.dims().begin(), f.dims().end());
    std::vector<Complex> next;
    next.reserve(amps.size() * f.dim());
    for (const auto& a : amps)
      for (const auto& b : f.amplitudes()) next.push_back(a * b);
    amps = std::move(next);
  }
  return PureState::normalized(std::move(dims), std::move(amps));
}

}  // namespace permutangle
