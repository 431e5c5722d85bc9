#include "permutangle/permutations.hpp"

#include <cstring>
#include <string>

#include "permutangle/error.hpp"
#include "permutangle/linalg.hpp"

namespace permutangle {

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d1, std::size_t d2, std::size_t subsystem) {
  if (!m.is_square() || m.rows() != d1 * d2) throw DimensionError("partial_transpose: matrix is not (d1*d2)-square");
  if (subsystem > 1) throw DomainError("partial_transpose: subsystem must be 0 or 1");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t a = 0; a < d2; ++a)
      for (std::size_t j = 0; j < d1; ++j)
        for (std::size_t b = 0; b < d2; ++b) {
          const Complex v = subsystem == 1 ? m(i * d2 + b, j * d2 + a) : m(j * d2 + a, i * d2 + b);
          out(i * d2 + a, j * d2 + b) = v;
        }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem) {
  if (rho.parties() != 2) throw DimensionError("partial_transpose: bipartite state expected");
  return partial_transpose(rho.matrix(), rho.dims()[0], rho.dims()[1], subsystem);
}

RealignedMatrix realign(const ComplexMatrix& m, std::size_t d1, std::size_t d2) {
  if (!m.is_square() || m.rows() != d1 * d2) throw DimensionError("realign: matrix is not (d1*d2)-square");
  if (d1 != d2) {
    throw UnsupportedDimensionError("realign: unequal subsystem dimensions " + std::to_string(d1) + "x" +
                                    std::to_string(d2) + " are not supported");
  }
  const std::size_t d = d1;
  ComplexMatrix out(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t b = 0; b < d; ++b) out(i * d + j, a * d + b) = m(i * d + a, j * d + b);
  return {d1, d2, std::move(out)};
}

std::vector<Complex> reshape_vec(const ComplexMatrix& m) {
  return {m.entries().begin(), m.entries().end()};
}

ComplexMatrix realigned_pt(const DensityMatrix& rho) {
  if (rho.parties() != 2) throw DimensionError("realigned_pt: bipartite state expected");
  const std::size_t d1 = rho.dims()[0], d2 = rho.dims()[1];
  return realign(partial_transpose(rho.matrix(), d1, d2, 1), d1, d2).matrix;
}

std::uint64_t fingerprint(const ComplexMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
  const std::size_t n = m.entries().size() * sizeof(Complex);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

LinkProduct link_product(const DensityMatrix& rho) {
  const ComplexMatrix r = realigned_pt(rho);
  return {r * adjoint(r), fingerprint(rho.matrix())};
}

ComplexMatrix link_transform(const PureState& psi, std::size_t a, std::size_t b) {
  if (a == b) throw DomainError("link_transform: a link needs two distinct subsystems");
  const DensityMatrix pair = reduce(psi, {a, b});
  if (pair.dims()[0] != pair.dims()[1]) {
    throw UnsupportedDimensionError("link_transform: subsystems " + std::to_string(a) + " and " + std::to_string(b) +
                                    " have different dimensions");
  }
  return realigned_pt(pair);
}

ComplexMatrix path_product(const PureState& psi, const std::vector<std::size_t>& path) {
  if (path.size() < 2) throw DomainError("path_product: a closed path needs at least two labels");
  for (std::size_t k : path)
    if (k >= psi.parties()) throw DomainError("path_product: label " + std::to_string(k) + " out of range");
  const std::size_t n = path.size();
  // link(i1, iK) first, then walk the path backwards.
  ComplexMatrix p = link_transform(psi, path[0], path[n - 1]);
  for (std::size_t k = n - 1; k >= 1; --k) p = p * link_transform(psi, path[k], path[k - 1]);
  return p;
}

std::vector<Complex> path_invariant_spectrum(const PureState& psi, const std::vector<std::size_t>& path) {
  return eig_general(path_product(psi, path));
}

}  // namespace permutangle
