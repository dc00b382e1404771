#pragma once

// Small dense symmetric linear algebra: cyclic Jacobi eigen-decomposition and
// the trace scalar product on self-adjoint operators.

#include <Eigen/Core>

#include "subshear/tolerances.hpp"

namespace subshear {

/// A g-self-adjoint (1,1)-tensor written in a g-orthonormal frame; the matrix
/// is symmetric within Tolerances::sym.
using SymmetricOperator = Eigen::MatrixXd;

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, orthonormal
  int sweeps = 0;
};

struct JacobiOptions {
  double threshold = 1e-14;
  int max_sweeps = 100;
};

/// Cyclic Jacobi rotations until the off-diagonal mass falls below
/// threshold * |A|. Throws DimensionMismatch for non-square input or
/// asymmetry beyond `sym_tol * max(1, max|A_ij|)`.
SymmetricEigen eigen_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& a,
                               const JacobiOptions& options = {}, double sym_tol = 1e-10);

/// <A,B> = tr(AB).
double operator_inner(const Eigen::Ref<const Eigen::MatrixXd>& a,
                      const Eigen::Ref<const Eigen::MatrixXd>& b);

/// AB - BA.
Eigen::MatrixXd commutator(const Eigen::Ref<const Eigen::MatrixXd>& a,
                           const Eigen::Ref<const Eigen::MatrixXd>& b);

/// AB + BA.
Eigen::MatrixXd anticommutator(const Eigen::Ref<const Eigen::MatrixXd>& a,
                               const Eigen::Ref<const Eigen::MatrixXd>& b);

/// A - tr(A)/n 1.
Eigen::MatrixXd trace_free(const Eigen::Ref<const Eigen::MatrixXd>& a);

/// max |A - A^T|.
double asymmetry(const Eigen::Ref<const Eigen::MatrixXd>& a);

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& a);

/// Number of negative, positive and (|lambda| <= zero_tol * max|lambda|) zero
/// eigenvalues of a symmetric matrix.
struct Signature {
  int negative = 0;
  int positive = 0;
  int zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature_of(const SymmetricEigen& eig, double zero_tol = 1e-12);

}  // namespace subshear
