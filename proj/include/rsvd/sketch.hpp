// Seeded random test-matrix generation: Gaussian sketches and the SRFT.
#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "rsvd/core.hpp"

namespace rsvd {

using ComplexMatrix = Eigen::MatrixXcd;

/// Seeded random stream.  Identical seeds produce identical streams within a
/// build; the identity string names the generator in report metadata.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr std::string_view identity() {
    return "mt19937_64/std-normal/v1";
  }

  double normal() { return normal_(engine_); }
  double uniform01() { return uniform_(engine_); }

  /// Uniform integer in [0, bound).
  std::uint64_t index(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  /// Per-trial stream: trial t of a sweep runs on Rng(seed_base + t), so
  /// trials are order-independent and individually reproducible.
  static Rng for_trial(std::uint64_t seed_base, std::uint64_t trial) {
    return Rng(seed_base + trial);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// n x l matrix of independent standard normal draws, filled column-major.
inline DenseMatrix gaussian(Index n, Index l, Rng& rng) {
  if (n < 1 || l < 1) {
    throw ParameterError("gaussian: dimensions must be positive");
  }
  DenseMatrix m(n, l);
  for (Index j = 0; j < l; ++j) {
    for (Index i = 0; i < n; ++i) {
      m(i, j) = rng.normal();
    }
  }
  return m;
}

/// Unitary DFT matrix, entries f_pq = n^{-1/2} exp(-2*pi*i*(p-1)(q-1)/n).
inline ComplexMatrix dft_matrix(Index n) {
  ComplexMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index q = 0; q < n; ++q) {
    for (Index p = 0; p < n; ++p) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>(p) * static_cast<double>(q) /
                           static_cast<double>(n);
      f(p, q) = std::polar(scale, angle);
    }
  }
  return f;
}

/// Test hooks for srft: force the random factors to identity so the DFT
/// structure can be checked in isolation.
struct SrftHooks {
  bool identity_phases = false;     // D = I instead of random unit-modulus
  bool identity_selection = false;  // R = first l coordinates in order
};

/// Subsampled random Fourier transform sketch, sqrt(n/l) * D * F * R:
/// D diagonal with unit-modulus entries uniform on the complex circle,
/// F the unitary DFT, R a uniform without-replacement selection of l of the
/// n coordinates.  Phases are drawn before the selection.
inline ComplexMatrix srft(Index n, Index l, Rng& rng, SrftHooks hooks = {}) {
  if (n < 1 || l < 1) {
    throw ParameterError("srft: dimensions must be positive");
  }
  if (l > n) {
    throw DimensionError("srft: l exceeds n");
  }

  std::vector<std::complex<double>> phases(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform01();
    phases[static_cast<std::size_t>(i)] =
        hooks.identity_phases ? std::complex<double>(1.0, 0.0)
                              : std::polar(1.0, theta);
  }

  // Partial Fisher-Yates draw of l distinct coordinates, kept in draw order.
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index t = 0; t < l; ++t) {
    const auto j = t + static_cast<Index>(rng.index(static_cast<std::uint64_t>(n - t)));
    std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
  }
  if (hooks.identity_selection) {
    for (Index t = 0; t < l; ++t) pool[static_cast<std::size_t>(t)] = t;
  }

  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(l));
  const double fscale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix omega(n, l);
  for (Index j = 0; j < l; ++j) {
    const auto c = static_cast<double>(pool[static_cast<std::size_t>(j)]);
    for (Index p = 0; p < n; ++p) {
      const double angle =
          -2.0 * std::numbers::pi * static_cast<double>(p) * c / static_cast<double>(n);
      omega(p, j) = scale * phases[static_cast<std::size_t>(p)] * std::polar(fscale, angle);
    }
  }
  return omega;
}

}  // namespace rsvd
