// Shared test fixtures: the controlled-gap matrices at the experiment scale
// (3000 x 300, r = 15) are expensive to assemble, so they are cached per gap
// value together with oracle spectra and factors.  The oracle factorization
// is computed here in test code, not through the library kernels.
#pragma once

#include <map>

#include "rsvd/testmats.hpp"
#include "support/oracles.hpp"

namespace fixtures {

struct GapFixture {
  rsvd::DenseMatrix a;
  oracle::Vec sigma;     // oracle singular values, descending
  oracle::Mat u;         // oracle left singular vectors, thin
  oracle::Mat v;         // oracle right singular vectors, thin (n x n here)
};

inline const GapFixture& gap_matrix(double gap) {
  static std::map<double, GapFixture> cache;
  auto it = cache.find(gap);
  if (it == cache.end()) {
    rsvd::GapSpec spec{3000, 300, 15, gap, 0.025, 99};
    GapFixture f;
    f.a = rsvd::to_dense(rsvd::controlled_gap(spec));
    Eigen::BDCSVD<oracle::Mat> svd(f.a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    f.sigma = svd.singularValues();
    f.u = svd.matrixU();
    f.v = svd.matrixV();
    it = cache.emplace(gap, std::move(f)).first;
  }
  return it->second;
}

}  // namespace fixtures
