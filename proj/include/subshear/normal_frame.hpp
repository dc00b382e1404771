#pragma once

// Frames of the two-dimensional normal plane and the normal Hodge dual.
//
// Orientation convention: an orthonormal frame (xi1, xi2) is positive when the
// ordered basis (e_1..e_n, xi1, xi2) has positive determinant in ambient
// coordinates, multiplied by the global orientation flag (+1 or -1). The
// normal volume form then satisfies omega(xi1, xi2) = 1 and
//   *xi1 = eps2 xi2,  *xi2 = -eps1 xi1.

#include <Eigen/Core>

#include <array>

#include "subshear/tolerances.hpp"

namespace subshear {

enum class NormalFrameKind { orthonormal, null };

struct NormalFrame {
  NormalFrameKind kind = NormalFrameKind::orthonormal;
  Eigen::VectorXd first;   // xi1, or k
  Eigen::VectorXd second;  // xi2, or l
  /// g(xi_i, xi_i) for orthonormal frames; {0, 0} for null frames.
  std::array<int, 2> eps{1, 1};

  bool lorentzian() const {
    return kind == NormalFrameKind::null || eps[0] * eps[1] < 0;
  }
};

/// Orthonormal, positively oriented frame of the g-orthogonal complement of
/// the columns of `tangent_frame`.
///
/// In the Lorentzian case xi1 is the timelike leg and is future-pointing,
/// meaning g(xi1, future_reference) < 0; pass an empty reference when the
/// metric declares no time orientation. Throws DegenerateFrameError if the
/// tangent vectors are dependent and DegenerateNormalError if the induced
/// metric on the normal plane is singular.
NormalFrame build_normal_frame(const Eigen::MatrixXd& ambient_metric,
                               const Eigen::MatrixXd& tangent_frame,
                               const Eigen::VectorXd& future_reference, int orientation,
                               const Tolerances& tol = {});

/// k = (xi1 - xi2)/sqrt2, l = (xi1 + xi2)/sqrt2: g(k,l) = -1, omega(k,l) = 1,
/// *k = -k, *l = l. Throws SignatureError unless the normal signature is (-,+).
NormalFrame to_null_frame(const NormalFrame& frame);

/// Coefficients (c1, c2) with nu = c1 first + c2 second (nu assumed normal).
Eigen::Vector2d frame_coefficients(const NormalFrame& frame, const Eigen::MatrixXd& ambient_metric,
                                   const Eigen::VectorXd& nu);

Eigen::VectorXd combine(const NormalFrame& frame, const Eigen::Vector2d& coefficients);

/// Hodge dual on the normal plane. Throws NotNormalError if nu has a
/// tangential component (relative to its size) above tol.w.
Eigen::VectorXd hodge_dual(const NormalFrame& frame, const Eigen::MatrixXd& ambient_metric,
                           const Eigen::MatrixXd& tangent_frame, const Eigen::VectorXd& nu,
                           const Tolerances& tol = {});

/// omega(nu1, nu2) for normal vectors.
double normal_volume(const NormalFrame& frame, const Eigen::MatrixXd& ambient_metric,
                     const Eigen::VectorXd& nu1, const Eigen::VectorXd& nu2);

/// Orientation-preserving change of orthonormal frame: a rotation by `angle`
/// for definite normal planes, a boost of rapidity `angle` for Lorentzian ones.
NormalFrame transform_frame(const NormalFrame& frame, double angle);

/// 2x2 matrix M with new_i = sum_j M(i,j) old_j for transform_frame(frame, angle).
Eigen::Matrix2d transform_matrix(const NormalFrame& frame, double angle);

}  // namespace subshear
