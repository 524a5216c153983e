// Single-pass factorizations: the input matrix is touched through a counting
// operator, exactly one block product per sketch, and the core matrix C is
// recovered from the sketches alone by least squares.
#pragma once

#include "rsvd/core.hpp"
#include "rsvd/factor.hpp"
#include "rsvd/sketch.hpp"

namespace rsvd {

/// Operator view of a dense matrix that counts block applications of A and
/// A^T.  Entry reads for precondition checks go through matrix() and are not
/// counted; the single-pass contract is about block products.
class CountingOperator {
 public:
  explicit CountingOperator(const DenseMatrix& a) : a_(&a) {}

  Index rows() const { return a_->rows(); }
  Index cols() const { return a_->cols(); }
  const DenseMatrix& matrix() const { return *a_; }

  DenseMatrix apply(const DenseMatrix& x) const {
    ++apply_count_;
    return (*a_) * x;
  }

  DenseMatrix apply_adjoint(const DenseMatrix& x) const {
    ++adjoint_count_;
    return a_->transpose() * x;
  }

  int apply_count() const { return apply_count_; }
  int adjoint_count() const { return adjoint_count_; }

 private:
  const DenseMatrix* a_;
  mutable int apply_count_ = 0;
  mutable int adjoint_count_ = 0;
};

/// Single-pass symmetric EVD.  One block product Y = A*Omega; C is the
/// least-squares solution of C (Q^T Omega) = Q^T Y, symmetrized, factored,
/// and truncated to k pairs.
inline EvdApprox spevd_hermitian(const CountingOperator& a, Index k, Index p, Rng& rng) {
  if (a.rows() != a.cols()) {
    throw DimensionError("spevd_hermitian: matrix is not square");
  }
  const double scale = 1.0 + a.matrix().cwiseAbs().maxCoeff();
  const double asym = (a.matrix() - a.matrix().transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale) {
    throw NumericError("spevd_hermitian: input is not symmetric");
  }
  if (k < 1) throw ParameterError("spevd_hermitian: k must be >= 1");
  if (p < 0) throw ParameterError("spevd_hermitian: p must be >= 0");
  if (k + p > a.rows()) {
    throw DimensionError("spevd_hermitian: k+p exceeds n");
  }

  const Index n = a.rows();
  const DenseMatrix omega = gaussian(n, k + p, rng);
  const DenseMatrix y = a.apply(omega);  // the single pass over A
  const DenseMatrix q = orthonormalize(y);

  const DenseMatrix g = q.transpose() * omega;
  const DenseMatrix h = q.transpose() * y;
  // C g = h, solved through the transposed system g^T C^T = h^T.
  DenseMatrix c = solve_ls(g.transpose(), h.transpose()).transpose();
  c = 0.5 * (c + c.transpose());

  EvdApprox e = evd_symmetric(c);
  return EvdApprox{q * e.U.leftCols(k), e.lambda.head(k)};
}

inline EvdApprox spevd_hermitian(const DenseMatrix& a, Index k, Index p, Rng& rng) {
  CountingOperator op(a);
  return spevd_hermitian(op, k, p, rng);
}

namespace detail {

// Joint solution of  g1 * C = h1  and  C * g2 = h2  as one stacked
// least-squares problem in vec(C): 2*l^2 equations, l^2 unknowns.
inline DenseMatrix solve_joint_core(const DenseMatrix& g1, const DenseMatrix& h1,
                                    const DenseMatrix& g2, const DenseMatrix& h2) {
  const Index l = g1.rows();
  DenseMatrix stacked = DenseMatrix::Zero(2 * l * l, l * l);
  DenseMatrix rhs(2 * l * l, 1);
  for (Index c = 0; c < l; ++c) {
    stacked.block(c * l, c * l, l, l) = g1;  // (I kron g1) vec(C) = vec(h1)
    rhs.block(c * l, 0, l, 1) = h1.col(c);
  }
  for (Index c = 0; c < l; ++c) {
    for (Index j = 0; j < l; ++j) {  // (g2^T kron I) vec(C) = vec(h2)
      stacked.block(l * l + c * l, j * l, l, l).diagonal().setConstant(g2(j, c));
    }
    rhs.block(l * l + c * l, 0, l, 1) = h2.col(c);
  }
  const DenseMatrix vec_c = solve_ls(stacked, rhs);
  return Eigen::Map<const DenseMatrix>(vec_c.data(), l, l);
}

}  // namespace detail

/// Single-pass general SVD.  Two sketches in one traversal, Y_c = A*Omega_c
/// and Y_r = A^T*Omega_r; C solves the joint system
/// (Omega_r^T Q_c) C = Y_r^T Q_r  and  C (Q_r^T Omega_c) = Q_c^T Y_c;
/// factors are lifted as U = Q_c*U_C, V = Q_r*V_C and truncated to k.
inline SvdApprox spsvd_general(const CountingOperator& a, Index k, Index p, Rng& rng) {
  if (k < 1) throw ParameterError("spsvd_general: k must be >= 1");
  if (p < 0) throw ParameterError("spsvd_general: p must be >= 0");
  if (k + p > std::min(a.rows(), a.cols())) {
    throw DimensionError("spsvd_general: k+p exceeds min(m,n)");
  }

  const Index m = a.rows();
  const Index n = a.cols();
  const Index l = k + p;
  const DenseMatrix omega_c = gaussian(n, l, rng);
  const DenseMatrix omega_r = gaussian(m, l, rng);
  const DenseMatrix y_c = a.apply(omega_c);
  const DenseMatrix y_r = a.apply_adjoint(omega_r);
  const DenseMatrix q_c = orthonormalize(y_c);
  const DenseMatrix q_r = orthonormalize(y_r);

  const DenseMatrix c = detail::solve_joint_core(
      omega_r.transpose() * q_c, y_r.transpose() * q_r,
      q_r.transpose() * omega_c, q_c.transpose() * y_c);

  SvdApprox f = svd_small(c);
  return SvdApprox{q_c * f.U.leftCols(k), f.sigma.head(k), q_r * f.V.leftCols(k)};
}

inline SvdApprox spsvd_general(const DenseMatrix& a, Index k, Index p, Rng& rng) {
  CountingOperator op(a);
  return spsvd_general(op, k, p, rng);
}

}  // namespace rsvd
