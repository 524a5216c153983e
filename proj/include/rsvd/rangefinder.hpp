// Stage 1: orthonormal bases approximating range(A), in three variants.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rsvd/core.hpp"
#include "rsvd/sketch.hpp"

namespace rsvd {

enum class RangeMode {
  basic,       // single sketch Y = A*Omega
  power,       // q power steps Z = A^T Y, Y = A Z, no re-orthonormalization
  power_ortho  // q power steps with orthonormalization each half-step
};

inline std::string_view to_string(RangeMode mode) {
  switch (mode) {
    case RangeMode::basic: return "basic";
    case RangeMode::power: return "power";
    case RangeMode::power_ortho: return "ortho";
  }
  return "?";
}

/// Every Stage-1 tunable.  For mode == basic the power-step count is ignored
/// and recorded as zero.
struct SketchConfig {
  Index k = 1;
  Index p = 0;
  int q = 0;
  RangeMode mode = RangeMode::basic;
  std::uint64_t seed = 0;

  SketchConfig normalized() const {
    SketchConfig c = *this;
    if (c.mode == RangeMode::basic) c.q = 0;
    return c;
  }
};

namespace detail {

inline void check_sketch_shape(const DenseMatrix& a, Index k, Index p, int q) {
  if (k < 1) throw ParameterError("target rank k must be >= 1");
  if (p < 0) throw ParameterError("oversampling p must be >= 0");
  if (q < 0) throw ParameterError("power steps q must be >= 0");
  if (k + p > std::min(a.rows(), a.cols())) {
    throw DimensionError("k+p = " + std::to_string(k + p) +
                         " exceeds min(m,n) = " +
                         std::to_string(std::min(a.rows(), a.cols())));
  }
}

}  // namespace detail

/// Basic range finder: Q = orth(A*Omega) for a Gaussian Omega.
inline DenseMatrix fixed_rank_range(const DenseMatrix& a, Index k, Index p, Rng& rng) {
  detail::check_sketch_shape(a, k, p, 0);
  const DenseMatrix omega = gaussian(a.cols(), k + p, rng);
  const DenseMatrix y = a * omega;
  return orthonormalize(y);
}

/// Power-iteration range finder: Q spans range((A A^T)^q A Omega).  No
/// re-orthonormalization inside the loop, so the round-off collapse onto the
/// dominant singular vector at large q stays observable.
inline DenseMatrix power_range(const DenseMatrix& a, Index k, Index p, int q, Rng& rng) {
  detail::check_sketch_shape(a, k, p, q);
  const DenseMatrix omega = gaussian(a.cols(), k + p, rng);
  DenseMatrix y = a * omega;
  for (int j = 0; j < q; ++j) {
    const DenseMatrix z = a.transpose() * y;
    y = a * z;
  }
  return orthonormalize(y);
}

/// Subspace-iteration range finder: orthonormalization after the initial
/// sketch and inside every half-step, W = orth(A^T Q); Q = orth(A W).
inline DenseMatrix subspace_iter_range(const DenseMatrix& a, Index k, Index p, int q,
                                       Rng& rng) {
  detail::check_sketch_shape(a, k, p, q);
  const DenseMatrix omega = gaussian(a.cols(), k + p, rng);
  const DenseMatrix y = a * omega;
  DenseMatrix qmat = orthonormalize(y);
  for (int j = 0; j < q; ++j) {
    const DenseMatrix w = orthonormalize(a.transpose() * qmat);
    qmat = orthonormalize(a * w);
  }
  return qmat;
}

/// Dispatch on the configured Stage-1 variant.
inline DenseMatrix range_basis(const DenseMatrix& a, const SketchConfig& cfg, Rng& rng) {
  const SketchConfig c = cfg.normalized();
  switch (c.mode) {
    case RangeMode::basic: return fixed_rank_range(a, c.k, c.p, rng);
    case RangeMode::power: return power_range(a, c.k, c.p, c.q, rng);
    case RangeMode::power_ortho: return subspace_iter_range(a, c.k, c.p, c.q, rng);
  }
  throw ParameterError("unknown range mode");
}

}  // namespace rsvd
