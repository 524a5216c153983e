// Sparse test matrices with a controlled singular-value gap:
//   A = sum_{j<=r} (gap/j) x_j y_j^T + sum_{j>r} (1/j) x_j y_j^T
// over sparse nonnegative unit vectors x_j, y_j, so the spectrum decays like
// 1/j with a jump of roughly `gap` between sigma_r and sigma_{r+1}.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rsvd/core.hpp"
#include "rsvd/sketch.hpp"

namespace rsvd {

struct GapSpec {
  Index m = 3000;
  Index n = 300;
  Index r = 15;          // gap location, 1 <= r < n
  double gap = 10.0;     // gap multiplier, >= 1
  double density = 0.025;  // per-vector fill fraction, (0, 1]
  std::uint64_t seed = 0;

  void validate() const {
    if (m < 1 || n < 1) throw ParameterError("GapSpec: dimensions must be positive");
    if (r < 1 || r >= n) throw ParameterError("GapSpec: need 1 <= r < n");
    if (gap < 1.0) throw ParameterError("GapSpec: gap must be >= 1");
    if (!(density > 0.0) || density > 1.0) {
      throw ParameterError("GapSpec: density must be in (0, 1]");
    }
  }
};

struct SparseTriplets {
  struct Entry {
    Index row;
    Index col;
    double value;
  };
  Index rows = 0;
  Index cols = 0;
  std::vector<Entry> entries;  // unique (row, col), column-major order
};

/// Vector family for the outer-product sum.  canonical_basis (x_j = y_j = e_j)
/// is a test hook that makes the coefficients the exact singular values.
enum class VectorFamily { sparse_random, canonical_basis };

namespace detail {

// Sparse nonnegative unit vector: ceil(density*dim) support positions drawn
// without replacement, values Uniform(0,1), scaled to unit Euclidean norm.
// Draw order: support first, then values.
inline Vector sparse_unit_vector(Index dim, double density, Rng& rng) {
  const Index support = static_cast<Index>(
      std::ceil(density * static_cast<double>(dim)));
  std::vector<Index> pool(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index t = 0; t < support; ++t) {
    const auto j =
        t + static_cast<Index>(rng.index(static_cast<std::uint64_t>(dim - t)));
    std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
  }
  Vector v = Vector::Zero(dim);
  for (Index t = 0; t < support; ++t) {
    v(pool[static_cast<std::size_t>(t)]) = rng.uniform01();
  }
  const double norm = v.norm();
  if (norm == 0.0) {
    v(pool[0]) = 1.0;
    return v;
  }
  return v / norm;
}

}  // namespace detail

/// Assemble the controlled-gap matrix as triplets (duplicates summed).
inline SparseTriplets controlled_gap(const GapSpec& spec,
                                     VectorFamily family = VectorFamily::sparse_random) {
  spec.validate();
  if (family == VectorFamily::canonical_basis && spec.n > spec.m) {
    throw ParameterError("controlled_gap: canonical basis needs n <= m");
  }

  Rng rng(spec.seed);
  DenseMatrix acc = DenseMatrix::Zero(spec.m, spec.n);
  for (Index j = 1; j <= spec.n; ++j) {
    const double coeff = (j <= spec.r) ? spec.gap / static_cast<double>(j)
                                       : 1.0 / static_cast<double>(j);
    if (family == VectorFamily::canonical_basis) {
      acc(j - 1, j - 1) += coeff;
      continue;
    }
    const Vector x = detail::sparse_unit_vector(spec.m, spec.density, rng);
    const Vector y = detail::sparse_unit_vector(spec.n, spec.density, rng);
    acc += coeff * x * y.transpose();
  }

  SparseTriplets t;
  t.rows = spec.m;
  t.cols = spec.n;
  for (Index c = 0; c < spec.n; ++c) {
    for (Index r = 0; r < spec.m; ++r) {
      if (acc(r, c) != 0.0) {
        t.entries.push_back({r, c, acc(r, c)});
      }
    }
  }
  return t;
}

inline DenseMatrix to_dense(const SparseTriplets& t) {
  DenseMatrix m = DenseMatrix::Zero(t.rows, t.cols);
  for (const auto& e : t.entries) {
    if (e.row < 0 || e.row >= t.rows || e.col < 0 || e.col >= t.cols) {
      throw DimensionError("to_dense: triplet index out of range");
    }
    m(e.row, e.col) += e.value;
  }
  return m;
}

inline SparseTriplets from_dense(const DenseMatrix& m) {
  SparseTriplets t;
  t.rows = m.rows();
  t.cols = m.cols();
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != 0.0) {
        t.entries.push_back({r, c, m(r, c)});
      }
    }
  }
  return t;
}

}  // namespace rsvd
