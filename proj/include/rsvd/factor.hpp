// Stage 2: randomized SVD pipelines and rank truncation.
#pragma once

#include "rsvd/core.hpp"
#include "rsvd/rangefinder.hpp"

namespace rsvd {

/// Two-stage randomized SVD.  Stage 1 picks the range basis per cfg.mode;
/// Stage 2 forms B = Q^T A, factors it, and lifts U = Q * U_B.  Factors are
/// returned at full width k+p; use truncate() for an exactly-rank-k result.
inline SvdApprox rsvd(const DenseMatrix& a, const SketchConfig& cfg, Rng& rng) {
  const DenseMatrix q = range_basis(a, cfg, rng);
  const DenseMatrix b = q.transpose() * a;
  SvdApprox f = svd_small(b);
  f.U = q * f.U;
  return f;
}

/// Convenience overload seeding the stream from cfg.seed.
inline SvdApprox rsvd(const DenseMatrix& a, const SketchConfig& cfg) {
  Rng rng(cfg.seed);
  return rsvd(a, cfg, rng);
}

/// Keep the first k factor triples.
inline SvdApprox truncate(const SvdApprox& f, Index k) {
  if (k < 0 || k > f.factor_count()) {
    throw DimensionError("truncate: k = " + std::to_string(k) +
                         " exceeds factor count " +
                         std::to_string(f.factor_count()));
  }
  return SvdApprox{f.U.leftCols(k), f.sigma.head(k), f.V.leftCols(k)};
}

}  // namespace rsvd
