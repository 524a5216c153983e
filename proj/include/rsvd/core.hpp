// Dense linear-algebra kernels shared by every algorithm in the library.
//
// All matrices are real double precision, column-major (Eigen's default);
// that storage order is the repo-wide convention, declared here once.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsvd {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Bad shape (e.g. requesting more columns than rows permit).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid parameter value (violated algorithm or formula hypothesis).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: non-finite data, asymmetry, lost orthonormality,
/// rank deficiency where rank is required, or non-convergence.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Factor triple U * diag(sigma) * V^T.  U and V have orthonormal columns,
/// sigma is nonnegative and nonincreasing.
struct SvdApprox {
  DenseMatrix U;
  Vector sigma;
  DenseMatrix V;

  Index factor_count() const { return sigma.size(); }

  DenseMatrix reconstruct() const {
    return U * sigma.asDiagonal() * V.transpose();
  }
};

/// Factor pair U * diag(lambda) * U^T for symmetric inputs; lambda is real,
/// ordered by decreasing magnitude.
struct EvdApprox {
  DenseMatrix U;
  Vector lambda;

  Index factor_count() const { return lambda.size(); }

  DenseMatrix reconstruct() const {
    return U * lambda.asDiagonal() * U.transpose();
  }
};

namespace detail {

inline void require_finite(const DenseMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw NumericError(std::string(what) + ": input has non-finite entries");
  }
}

// Dense singular values (descending), no factor accumulation.
inline Vector dense_singular_values(const DenseMatrix& m) {
  return Eigen::BDCSVD<DenseMatrix>(m).singularValues();
}

}  // namespace detail

// Method switch for spectral_norm: below this min-dimension a dense SVD is
// exact and affordable; above it power iteration avoids the O(min^2 * max)
// factorization.
inline constexpr Index kSpectralNormDenseLimit = 512;
inline constexpr double kSpectralNormPowerTol = 1e-10;
inline constexpr int kSpectralNormPowerMaxIter = 5000;

// Relative singular-value cutoff for rank-deficient least-squares solves.
inline constexpr double kLstsqRankCutoff = 1e-12;

/// Orthonormal basis of range(M) via Householder QR, padded to the full
/// requested width when M is rank deficient: the result always has exactly
/// M.cols() orthonormal columns and range(result) contains range(M).
inline DenseMatrix orthonormalize(const DenseMatrix& m) {
  if (m.cols() > m.rows()) {
    throw DimensionError("orthonormalize: more columns than rows (" +
                         std::to_string(m.cols()) + " > " +
                         std::to_string(m.rows()) + ")");
  }
  detail::require_finite(m, "orthonormalize");
  Eigen::HouseholderQR<DenseMatrix> qr(m);
  return qr.householderQ() * DenseMatrix::Identity(m.rows(), m.cols());
}

/// Full SVD of a small dense matrix, thin factors, min(rows, cols) triples.
/// Sign convention: the largest-magnitude entry of each U column is made
/// nonnegative (lowest row index wins ties) and the flip is propagated to V,
/// so factors — not just products — are comparable across runs.
inline SvdApprox svd_small(const DenseMatrix& m) {
  detail::require_finite(m, "svd_small");
  Eigen::BDCSVD<DenseMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdApprox out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  for (Index j = 0; j < out.U.cols(); ++j) {
    Index imax = 0;
    out.U.col(j).cwiseAbs().maxCoeff(&imax);
    if (out.U(imax, j) < 0.0) {
      out.U.col(j) = -out.U.col(j);
      out.V.col(j) = -out.V.col(j);
    }
  }
  return out;
}

/// Eigendecomposition of a (numerically) symmetric matrix.  The input is
/// symmetrized as (C + C^T)/2 before factorization; inputs whose asymmetry
/// exceeds 1e-8 * (1 + max|entry|) are rejected.  Eigenvalues come ordered
/// by decreasing magnitude.
inline EvdApprox evd_symmetric(const DenseMatrix& c) {
  if (c.rows() != c.cols()) {
    throw DimensionError("evd_symmetric: matrix is not square");
  }
  detail::require_finite(c, "evd_symmetric");
  const double scale = 1.0 + c.cwiseAbs().maxCoeff();
  const double asym = (c - c.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale) {
    throw NumericError("evd_symmetric: asymmetry " + std::to_string(asym) +
                       " exceeds tolerance");
  }
  const DenseMatrix sym = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sym);
  if (es.info() != Eigen::Success) {
    throw NumericError("evd_symmetric: eigensolver failed");
  }

  const Index n = c.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
  });

  EvdApprox out;
  out.U.resize(n, n);
  out.lambda.resize(n);
  for (Index j = 0; j < n; ++j) {
    out.U.col(j) = es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
    out.lambda(j) = es.eigenvalues()(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

/// Minimum-norm least-squares solution X of min ||G X - H||_F, with singular
/// values below 1e-12 * sigma_max treated as zero.
inline DenseMatrix solve_ls(const DenseMatrix& g, const DenseMatrix& h) {
  if (g.rows() != h.rows()) {
    throw DimensionError("solve_ls: row counts differ (" +
                         std::to_string(g.rows()) + " vs " +
                         std::to_string(h.rows()) + ")");
  }
  detail::require_finite(g, "solve_ls");
  detail::require_finite(h, "solve_ls");
  Eigen::BDCSVD<DenseMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kLstsqRankCutoff);
  return svd.solve(h);
}

/// Descending singular values of M (no singular vectors).
inline Vector singular_values(const DenseMatrix& m) {
  detail::require_finite(m, "singular_values");
  return detail::dense_singular_values(m);
}

/// Largest singular value of M.  Dense SVD when min(rows, cols) <= 512,
/// otherwise power iteration on M^T M with relative tolerance 1e-10 and an
/// iteration cap of 5000.
inline double spectral_norm(const DenseMatrix& m) {
  detail::require_finite(m, "spectral_norm");
  if (std::min(m.rows(), m.cols()) <= kSpectralNormDenseLimit) {
    return detail::dense_singular_values(m)(0);
  }

  // Deterministic start vector; a fixed linear-congruential fill avoids any
  // special alignment with the input's singular vectors.
  Vector x(m.cols());
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (Index i = 0; i < x.size(); ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    x(i) = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  }
  double xn = x.norm();
  if (xn == 0.0) return 0.0;
  x /= xn;

  double sigma = 0.0;
  for (int iter = 0; iter < kSpectralNormPowerMaxIter; ++iter) {
    const Vector y = m * x;
    const double estimate = y.norm();
    if (estimate == 0.0) return 0.0;
    if (iter > 0 && std::abs(estimate - sigma) <= kSpectralNormPowerTol * estimate) {
      return estimate;
    }
    sigma = estimate;
    x = m.transpose() * y;
    const double nx = x.norm();
    if (nx == 0.0) return estimate;
    x /= nx;
  }
  throw NumericError("spectral_norm: power iteration hit the 5000-step cap");
}

}  // namespace rsvd
