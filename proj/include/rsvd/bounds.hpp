// Computable expectation bounds for the Stage-1 range error, and the
// measured residual they are compared against.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "rsvd/core.hpp"
#include "rsvd/rangefinder.hpp"

namespace rsvd {

/// One trial of a bound-vs-computed experiment.
struct BoundReport {
  int trial = 0;
  std::uint64_t seed = 0;
  Index k = 0;
  Index p = 0;
  int q = 0;
  RangeMode mode = RangeMode::basic;
  double computed_error = 0.0;
  double estimated_bound = 0.0;
  double sigma_k1 = 0.0;
  double wall_time = 0.0;  // seconds
};

namespace detail {

inline void check_bound_params(Index k, Index p, Index m, Index n, Index min_k) {
  if (k < min_k) {
    throw ParameterError("bound: target rank k must be >= " + std::to_string(min_k));
  }
  if (p < 2) throw ParameterError("bound: oversampling p must be >= 2");
  if (k + p > std::min(m, n)) {
    throw DimensionError("bound: k+p exceeds min(m,n)");
  }
}

}  // namespace detail

/// Expected range error of the basic sketch:
/// [1 + 4*sqrt(k+p)/(p-1) * sqrt(min(m,n))] * sigma_{k+1}.
inline double bound_basic(Index k, Index p, Index m, Index n, double sigma_k1) {
  detail::check_bound_params(k, p, m, n, 2);
  if (sigma_k1 < 0.0) throw ParameterError("bound_basic: sigma_k1 must be >= 0");
  const double kp = static_cast<double>(k + p);
  const double mn = static_cast<double>(std::min(m, n));
  const double factor = 1.0 + 4.0 * std::sqrt(kp) / (static_cast<double>(p) - 1.0) * std::sqrt(mn);
  return factor * sigma_k1;
}

/// Power-iteration version: the same bracket raised to 1/(2q+1).
inline double bound_power(Index k, Index p, int q, Index m, Index n, double sigma_k1) {
  detail::check_bound_params(k, p, m, n, 1);
  if (q < 0) throw ParameterError("bound_power: q must be >= 0");
  if (sigma_k1 < 0.0) throw ParameterError("bound_power: sigma_k1 must be >= 0");
  const double kp = static_cast<double>(k + p);
  const double mn = static_cast<double>(std::min(m, n));
  const double bracket = 1.0 + 4.0 * std::sqrt(kp * mn) / (static_cast<double>(p) - 1.0);
  return std::pow(bracket, 1.0 / (2.0 * q + 1.0)) * sigma_k1;
}

/// Subspace-iteration bound.  Full mode evaluates
///   [(1 + sqrt(k/(p-1))) * s_{k+1}^{2q+1}
///    + (e*sqrt(k+p)/p) * (sum_{j>k} s_j^{2(2q+1)})^{1/2}]^{1/(2q+1)},
/// reading the tail of the supplied spectrum; flat_tail assumes no decay
/// after s_{k+1} and needs only that value.
inline double bound_ortho(Index k, Index p, int q, const Vector& sigmas, Index m, Index n,
                          bool flat_tail) {
  detail::check_bound_params(k, p, m, n, 1);
  if (q < 0) throw ParameterError("bound_ortho: q must be >= 0");
  const Index spectrum_len = std::min(m, n);
  if (sigmas.size() < (flat_tail ? k + 1 : spectrum_len)) {
    throw ParameterError("bound_ortho: spectrum too short");
  }
  for (Index j = 0; j + 1 < sigmas.size(); ++j) {
    if (sigmas(j) < sigmas(j + 1)) {
      throw ParameterError("bound_ortho: singular values must be nonincreasing");
    }
  }
  if (sigmas(sigmas.size() - 1) < 0.0) {
    throw ParameterError("bound_ortho: singular values must be nonnegative");
  }

  const double e = std::exp(1.0);
  const double kd = static_cast<double>(k);
  const double pd = static_cast<double>(p);
  const double head = 1.0 + std::sqrt(kd / (pd - 1.0));
  const double tail_coeff = e * std::sqrt(kd + pd) / pd;
  const double power = 2.0 * q + 1.0;
  const double sigma_k1 = sigmas(k);

  if (flat_tail) {
    const double tail = std::sqrt(static_cast<double>(spectrum_len - k));
    return std::pow(head + tail_coeff * tail, 1.0 / power) * sigma_k1;
  }
  double tail_sq = 0.0;
  for (Index j = k; j < spectrum_len; ++j) {
    tail_sq += std::pow(sigmas(j), 2.0 * power);
  }
  const double inner = head * std::pow(sigma_k1, power) + tail_coeff * std::sqrt(tail_sq);
  return std::pow(inner, 1.0 / power);
}

/// Measured Stage-1 residual ||A - Q Q^T A||_2 for an orthonormal Q.
inline double computed_range_error(const DenseMatrix& a, const DenseMatrix& q) {
  if (q.rows() != a.rows()) {
    throw DimensionError("computed_range_error: row counts differ");
  }
  const DenseMatrix gram = q.transpose() * q;
  const double dev =
      (gram - DenseMatrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-8) {
    throw NumericError("computed_range_error: Q is not orthonormal (deviation " +
                       std::to_string(dev) + ")");
  }
  const DenseMatrix residual = a - q * (q.transpose() * a);
  return spectral_norm(residual);
}

/// Deterministic per-angle bounds given the drawn test matrix:
///   sin(theta_j) <= g^{2q+1} w / sqrt(1 + g^{4q+2} w^2),
///   sin(nu_j)    <= g^{2q+2} w / sqrt(1 + g^{4q+4} w^2),
/// with g = sigma_{k+1}/sigma_j and w = ||Omega_2 Omega_1^+||_2, where
/// [Omega_1; Omega_2] partitions V^T Omega at row k.
struct AngleBounds {
  Vector sin_theta;  // length k
  Vector sin_nu;     // length k
};

inline AngleBounds angle_bounds(const DenseMatrix& v, const DenseMatrix& omega,
                                const Vector& sigmas, Index k, int q) {
  const Index l = omega.cols();
  if (v.rows() != omega.rows()) {
    throw DimensionError("angle_bounds: V and Omega row counts differ");
  }
  if (k < 1) throw ParameterError("angle_bounds: k must be >= 1");
  if (k > l) throw ParameterError("angle_bounds: k exceeds the sketch width");
  if (v.cols() < l) {
    throw DimensionError("angle_bounds: V must have at least k+p columns");
  }
  if (v.cols() <= k) {
    throw DimensionError("angle_bounds: V has no rows left for Omega_2");
  }
  if (sigmas.size() < k + 1) {
    throw ParameterError("angle_bounds: spectrum too short");
  }
  if (q < 0) throw ParameterError("angle_bounds: q must be >= 0");
  if (sigmas(k) >= sigmas(k - 1)) {
    throw NumericError("angle_bounds: no gap at k (sigma_{k+1} >= sigma_k)");
  }

  const DenseMatrix vt_omega = v.transpose() * omega;
  const DenseMatrix omega1 = vt_omega.topRows(k);
  const DenseMatrix omega2 = vt_omega.bottomRows(vt_omega.rows() - k);

  const Vector sv = singular_values(omega1);
  if (sv(sv.size() - 1) <= 1e-10 * sv(0)) {
    throw NumericError("angle_bounds: Omega_1 is rank deficient");
  }
  // Omega_2 * pinv(Omega_1) is the least-squares solution X of X Omega_1 = Omega_2.
  const DenseMatrix xt = solve_ls(omega1.transpose(), omega2.transpose());
  const double w = spectral_norm(xt.transpose());

  AngleBounds out;
  out.sin_theta.resize(k);
  out.sin_nu.resize(k);
  for (Index j = 0; j < k; ++j) {
    const double gamma = sigmas(k) / sigmas(j);
    const double gt = std::pow(gamma, 2.0 * q + 1.0);
    const double gn = std::pow(gamma, 2.0 * q + 2.0);
    out.sin_theta(j) = gt * w / std::sqrt(1.0 + gt * gt * w * w);
    out.sin_nu(j) = gn * w / std::sqrt(1.0 + gn * gn * w * w);
  }
  return out;
}

}  // namespace rsvd
