#pragma once

#include <cstdint>
#include <random>

#include "permutangle/complex_matrix.hpp"

namespace permutangle {

/// Counter-addressed random stream. Each (seed, stream) pair names an
/// independent sequence; campaigns give every sample index its own stream so
/// the output does not depend on scheduling.
///
/// The integer sequence comes from std::mt19937_64, whose output is fixed by
/// the standard. Floating-point draws are derived here rather than through
/// std::*_distribution, whose algorithms are implementation-defined.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();
  /// Real and imaginary parts independent standard normals.
  Complex complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

}  // namespace permutangle
