#include "subshear/normal_frame.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

#include "subshear/errors.hpp"
#include "subshear/linalg.hpp"

namespace subshear {

namespace {

double gdot(const Eigen::MatrixXd& g, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.dot(g * b);
}

int sign_of(double x) { return x < 0 ? -1 : 1; }

}  // namespace

NormalFrame build_normal_frame(const Eigen::MatrixXd& g, const Eigen::MatrixXd& tangent_frame,
                               const Eigen::VectorXd& future_reference, int orientation,
                               const Tolerances& tol) {
  const int dim = static_cast<int>(g.rows());
  const int n = static_cast<int>(tangent_frame.cols());
  if (tangent_frame.rows() != dim || n + 2 != dim)
    throw DimensionMismatch("build_normal_frame: expected " + std::to_string(dim - 2) +
                            " tangent vectors of dimension " + std::to_string(dim));

  // Normal plane = kernel of the covectors g(e_i, .).
  const Eigen::MatrixXd covectors = tangent_frame.transpose() * g;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(covectors, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (n > 0 && !(sv(n - 1) > tol.pd * std::max(1.0, sv(0))))
    throw DegenerateFrameError("build_normal_frame: tangent covectors are linearly dependent");
  const Eigen::MatrixXd basis = svd.matrixV().rightCols(2);

  const Eigen::Matrix2d gram = basis.transpose() * g * basis;
  const auto eig = eigen_symmetric(gram, {}, tol.sym);
  const double largest = eig.values.cwiseAbs().maxCoeff();
  if (!(eig.values.cwiseAbs().minCoeff() > tol.pd * std::max(1.0, largest)))
    throw DegenerateNormalError("build_normal_frame: normal plane is degenerate");
  const Eigen::Matrix2d gram_inv = gram.inverse();

  // Seed the frame with the coordinate axis whose normal projection is the
  // least null, so the choice is stable across neighbouring points.
  Eigen::VectorXd seed;
  double best = -1.0;
  for (int a = 0; a < dim; ++a) {
    const Eigen::VectorXd p = basis * (gram_inv * (basis.transpose() * g.col(a)));
    const double e2 = p.squaredNorm();
    if (e2 <= 0) continue;
    const double score = std::abs(gdot(g, p, p)) / e2;
    if (score > best * (1.0 + 1e-12)) {
      best = score;
      seed = p;
    }
  }
  if (seed.size() == 0 || !(best > 0))
    throw DegenerateNormalError("build_normal_frame: no admissible seed direction");

  const double s2 = gdot(g, seed, seed);
  const Eigen::VectorXd u = seed / std::sqrt(std::abs(s2));
  const int eps_u = sign_of(s2);

  // Complete with whichever basis column has the better-conditioned
  // g-orthogonal remainder.
  Eigen::VectorXd w;
  double w2 = 0.0;
  double w_score = -1.0;
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd v = basis.col(c);
    const Eigen::VectorXd cand = v - eps_u * gdot(g, v, u) * u;
    const double c2 = gdot(g, cand, cand);
    const double score = std::abs(c2);
    if (score > w_score) {
      w = cand;
      w2 = c2;
      w_score = score;
    }
  }
  if (!(std::abs(w2) > tol.pd * std::max(1.0, w.squaredNorm())))
    throw DegenerateNormalError("build_normal_frame: could not complete the normal frame");
  w /= std::sqrt(std::abs(w2));
  const int eps_w = sign_of(w2);

  NormalFrame frame;
  frame.kind = NormalFrameKind::orthonormal;
  if (eps_u * eps_w < 0 && eps_w < 0) {
    frame.first = w;
    frame.second = u;
    frame.eps = {eps_w, eps_u};
  } else {
    frame.first = u;
    frame.second = w;
    frame.eps = {eps_u, eps_w};
  }

  if (frame.lorentzian() && future_reference.size() == dim) {
    if (gdot(g, frame.first, future_reference) > 0) frame.first = -frame.first;
  }

  Eigen::MatrixXd oriented(dim, dim);
  oriented.leftCols(n) = tangent_frame;
  oriented.col(n) = frame.first;
  oriented.col(n + 1) = frame.second;
  if (oriented.determinant() * orientation < 0) frame.second = -frame.second;
  return frame;
}

NormalFrame to_null_frame(const NormalFrame& frame) {
  if (frame.kind == NormalFrameKind::null) return frame;
  if (!(frame.eps[0] == -1 && frame.eps[1] == 1))
    throw SignatureError("to_null_frame: normal signature must be (-,+)");
  NormalFrame out;
  out.kind = NormalFrameKind::null;
  out.first = (frame.first - frame.second) / std::sqrt(2.0);
  out.second = (frame.first + frame.second) / std::sqrt(2.0);
  out.eps = {0, 0};
  return out;
}

Eigen::Vector2d frame_coefficients(const NormalFrame& frame, const Eigen::MatrixXd& g,
                                   const Eigen::VectorXd& nu) {
  if (frame.kind == NormalFrameKind::null)
    return {-gdot(g, nu, frame.second), -gdot(g, nu, frame.first)};
  return {frame.eps[0] * gdot(g, nu, frame.first), frame.eps[1] * gdot(g, nu, frame.second)};
}

Eigen::VectorXd combine(const NormalFrame& frame, const Eigen::Vector2d& c) {
  return c(0) * frame.first + c(1) * frame.second;
}

Eigen::VectorXd hodge_dual(const NormalFrame& frame, const Eigen::MatrixXd& g,
                           const Eigen::MatrixXd& tangent_frame, const Eigen::VectorXd& nu,
                           const Tolerances& tol) {
  const double size = std::max(1.0, nu.cwiseAbs().maxCoeff());
  for (int i = 0; i < tangent_frame.cols(); ++i) {
    if (std::abs(gdot(g, nu, tangent_frame.col(i))) > tol.w * size)
      throw NotNormalError("hodge_dual: vector has a tangential component");
  }
  const Eigen::Vector2d c = frame_coefficients(frame, g, nu);
  if (frame.kind == NormalFrameKind::null) return combine(frame, {-c(0), c(1)});
  return combine(frame, {-frame.eps[0] * c(1), frame.eps[1] * c(0)});
}

double normal_volume(const NormalFrame& frame, const Eigen::MatrixXd& g, const Eigen::VectorXd& nu1,
                     const Eigen::VectorXd& nu2) {
  const Eigen::Vector2d a = frame_coefficients(frame, g, nu1);
  const Eigen::Vector2d b = frame_coefficients(frame, g, nu2);
  return a(0) * b(1) - a(1) * b(0);
}

Eigen::Matrix2d transform_matrix(const NormalFrame& frame, double angle) {
  Eigen::Matrix2d m;
  if (frame.lorentzian())
    m << std::cosh(angle), std::sinh(angle), std::sinh(angle), std::cosh(angle);
  else
    m << std::cos(angle), std::sin(angle), -std::sin(angle), std::cos(angle);
  return m;
}

NormalFrame transform_frame(const NormalFrame& frame, double angle) {
  if (frame.kind != NormalFrameKind::orthonormal)
    throw SignatureError("transform_frame: expects an orthonormal frame");
  const Eigen::Matrix2d m = transform_matrix(frame, angle);
  NormalFrame out = frame;
  out.first = m(0, 0) * frame.first + m(0, 1) * frame.second;
  out.second = m(1, 0) * frame.first + m(1, 1) * frame.second;
  return out;
}

}  // namespace subshear
