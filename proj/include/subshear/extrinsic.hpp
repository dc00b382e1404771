#pragma once

// Pointwise extrinsic geometry of a spacelike co-dimension-2 immersion:
// induced metric, tangent and normal frames, shape operators, mean curvature,
// shear operators, the Casorati operator B and its shear analogue J.
//
// The second fundamental form is stored through the two shape operators of
// the orthonormal normal frame (xi1, xi2), written in the g-orthonormal
// tangent frame (e_1..e_n):
//   h(e_i, e_j) = eps1 A1(i,j) xi1 + eps2 A2(i,j) xi2,
// and for any normal nu = c1 xi1 + c2 xi2 the shape operator is
//   A_nu = c1 A1 + c2 A2.

#include <Eigen/Core>

#include <array>

#include "subshear/immersion.hpp"
#include "subshear/linalg.hpp"
#include "subshear/metric.hpp"
#include "subshear/normal_frame.hpp"
#include "subshear/tolerances.hpp"

namespace subshear {

/// Overall sign of the second fundamental form.
///
/// `kinematic`: h(X,Y) = -(nabla_X Y)^perp. Expansions tr(A_k) are then the
/// divergences of the null normals, so a trapped surface has future timelike
/// H. This is the convention in which the Kerr closed forms are written.
/// `gauss`: h(X,Y) = +(nabla_X Y)^perp, the textbook Gauss formula.
enum class ShapeSign { kinematic, gauss };

struct GeometryOptions {
  Tolerances tol{};
  ShapeSign sign = ShapeSign::kinematic;
  int orientation = +1;  // global orientation of the normal volume form
};

struct NormalVector {
  Eigen::VectorXd components;  // ambient coordinate basis
  double norm2 = 0.0;          // g(nu, nu)
};

struct TangentFrame {
  Eigen::MatrixXd vectors;       // columns e_i, ambient coordinates
  Eigen::MatrixXd coefficients;  // e = tangents * coefficients (upper triangular)
};

struct ExtrinsicState {
  int n = 0;
  ShapeSign sign = ShapeSign::kinematic;

  Eigen::VectorXd parameters;           // surface chart point (empty for fixtures)
  Eigen::VectorXd ambient_point;        // Phi(u) (empty for fixtures)
  Eigen::MatrixXd ambient_metric;       // g-bar at Phi(u)
  Eigen::MatrixXd coordinate_tangents;  // d_i Phi (empty for fixtures)
  Eigen::MatrixXd induced_metric;       // g_ij in chart coordinates
  TangentFrame tangent;
  NormalFrame normal;                   // orthonormal, positively oriented
  Eigen::VectorXd future_reference;     // empty when no time orientation

  std::array<SymmetricOperator, 2> shape;  // A_xi1, A_xi2
  std::array<double, 2> theta{};           // tr A_xik
  NormalVector H;
  std::array<SymmetricOperator, 2> shear;  // trace-free parts
  std::array<double, 2> sigma{};           // |shear|, sign undetermined here
  SymmetricOperator B;
  SymmetricOperator J;

  double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    return a.dot(ambient_metric * b);
  }
  /// (c1, c2) with nu = c1 xi1 + c2 xi2.
  Eigen::Vector2d coefficients(const Eigen::VectorXd& nu) const;
  Eigen::VectorXd normal_vector(const Eigen::Vector2d& c) const;
  NormalVector make_normal(const Eigen::VectorXd& nu) const;

  SymmetricOperator shape_along(const Eigen::VectorXd& nu) const;
  SymmetricOperator shear_along(const Eigen::VectorXd& nu) const;
  SymmetricOperator shape_along(const Eigen::Vector2d& c) const;
  SymmetricOperator shear_along(const Eigen::Vector2d& c) const;

  /// h(e_i, e_j) and its trace-free part as ambient vectors.
  Eigen::VectorXd second_fundamental(int i, int j) const;
  Eigen::VectorXd total_shear_vector(int i, int j) const;

  /// Ambient vector u projected onto the normal plane.
  Eigen::VectorXd normal_part(const Eigen::VectorXd& u) const;

  /// max(1, |A1| + |A2|) with Frobenius norms.
  double umbilic_scale() const;
  /// Absolute zero threshold for linear quantities: tol.umb * umbilic_scale().
  double umbilic_threshold(const Tolerances& tol) const { return tol.umb * umbilic_scale(); }

  Eigen::MatrixXd identity() const { return Eigen::MatrixXd::Identity(n, n); }
};

/// g_ij = g-bar(d_i Phi, d_j Phi). Throws NotSpacelikeError if an eigenvalue
/// is <= tol.pd * max(1, |g|).
Eigen::MatrixXd induced_metric(const Eigen::MatrixXd& ambient_metric,
                               const Eigen::MatrixXd& tangents, const Tolerances& tol = {});

/// Gram-Schmidt of the coordinate tangents in the induced metric. Throws
/// DegenerateFrameError if a residual pivot falls below tol.pd.
TangentFrame tangent_orthonormal_frame(const Eigen::MatrixXd& induced,
                                       const Eigen::MatrixXd& tangents, const Tolerances& tol = {});

/// Shape operators along the two frame normals from the Gauss formula
/// h(d_k, d_l) = sign * (d_k d_l Phi + Gamma(d_k Phi, d_l Phi))^perp.
std::array<SymmetricOperator, 2> second_fundamental_form(const ImmersionJet& jet,
                                                         const Christoffels& gamma,
                                                         const TangentFrame& tangent,
                                                         const NormalFrame& normal,
                                                         ShapeSign sign);

/// H = (1/n)(eps1 tr A1 xi1 + eps2 tr A2 xi2).
NormalVector mean_curvature(const ExtrinsicState& state);

struct ShearResult {
  std::array<SymmetricOperator, 2> operators;
  std::array<double, 2> magnitudes;
};
ShearResult total_shear(const ExtrinsicState& state);

struct CasoratiResult {
  SymmetricOperator B;
  SymmetricOperator J;
};
/// B = eps1 A1^2 + eps2 A2^2, J = eps1 S1^2 + eps2 S2^2 (S = shear).
CasoratiResult casorati_and_J(const ExtrinsicState& state);

/// Fills theta, H, shear, sigma, B and J from the shape operators.
void complete_state(ExtrinsicState& state);

/// Full pipeline at a surface point.
ExtrinsicState compute_extrinsic_state(const AmbientMetric& metric, const Immersion& immersion,
                                       const Eigen::VectorXd& u, const GeometryOptions& options = {});

/// State built directly from shape operators in the flat model
/// diag(eps1, eps2, 1, ..., 1) with xi1 = d_0, xi2 = d_1, e_i = d_{i+2}.
ExtrinsicState synthetic_state(std::array<int, 2> eps, const SymmetricOperator& a1,
                               const SymmetricOperator& a2);

/// The same geometric state expressed in another orthonormal normal frame
/// (see transform_frame).
ExtrinsicState rebase_state(const ExtrinsicState& state, double angle);

}  // namespace subshear
