// Canonical (principal) angles between computed and true singular subspaces.
#pragma once

#include <cstdint>

#include "rsvd/core.hpp"
#include "rsvd/factor.hpp"

namespace rsvd {

/// Per-index canonical-angle record for one run.
struct AngleReport {
  Index k = 0;
  Index p = 0;
  int q = 0;
  std::uint64_t seed = 0;
  double gap = 0.0;
  Vector sin_theta;     // left subspace, ascending, length k
  Vector sin_nu;        // right subspace, ascending, length k
  Vector bound_theta;   // optional, same length when filled
  Vector bound_nu;
};

namespace detail {

inline void check_orthonormal(const DenseMatrix& x, const char* what) {
  const DenseMatrix gram = x.transpose() * x;
  const double dev =
      (gram - DenseMatrix::Identity(x.cols(), x.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-8) {
    throw NumericError(std::string(what) + ": columns are not orthonormal (deviation " +
                       std::to_string(dev) + ")");
  }
}

}  // namespace detail

/// Sines of the principal angles between range(X) and range(Y): the largest
/// min(cols(X), cols(Y)) singular values of (I - X X^T) Y, sorted ascending
/// and clamped to [0, 1].  The projection route keeps small angles accurate,
/// which is the regime these experiments live in.
inline Vector canonical_sines(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows() != y.rows()) {
    throw DimensionError("canonical_sines: ambient dimensions differ");
  }
  detail::check_orthonormal(x, "canonical_sines: X");
  detail::check_orthonormal(y, "canonical_sines: Y");

  const DenseMatrix residual = y - x * (x.transpose() * y);
  const Vector sv = singular_values(residual);  // descending
  const Index count = std::min(x.cols(), y.cols());
  Vector out = sv.head(count).reverse();
  for (Index i = 0; i < count; ++i) {
    out(i) = std::clamp(out(i), 0.0, 1.0);
  }
  return out;
}

/// Angles between the oracle rank-k singular subspaces of A and the first k
/// computed factors.  The oracle split follows the block form
/// A = [U_k U_perp] diag(S_k, S_perp) [V_k V_perp]^T.
inline AngleReport subspace_quality(const SvdApprox& oracle, Index k,
                                    const SvdApprox& result) {
  if (k < 1) throw ParameterError("subspace_quality: k must be >= 1");
  if (oracle.factor_count() < k || result.factor_count() < k) {
    throw DimensionError("subspace_quality: fewer than k factors available");
  }
  AngleReport report;
  report.k = k;
  report.sin_theta = canonical_sines(oracle.U.leftCols(k), result.U.leftCols(k));
  report.sin_nu = canonical_sines(oracle.V.leftCols(k), result.V.leftCols(k));
  return report;
}

inline AngleReport subspace_quality(const DenseMatrix& a, Index k,
                                    const SvdApprox& result) {
  return subspace_quality(svd_small(a), k, result);
}

}  // namespace rsvd
