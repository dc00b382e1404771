#include "subshear/extrinsic.hpp"

#include <cmath>

#include "subshear/errors.hpp"

namespace subshear {

Eigen::Vector2d ExtrinsicState::coefficients(const Eigen::VectorXd& nu) const {
  return frame_coefficients(normal, ambient_metric, nu);
}

Eigen::VectorXd ExtrinsicState::normal_vector(const Eigen::Vector2d& c) const {
  return combine(normal, c);
}

NormalVector ExtrinsicState::make_normal(const Eigen::VectorXd& nu) const {
  return {nu, dot(nu, nu)};
}

SymmetricOperator ExtrinsicState::shape_along(const Eigen::Vector2d& c) const {
  return c(0) * shape[0] + c(1) * shape[1];
}

SymmetricOperator ExtrinsicState::shear_along(const Eigen::Vector2d& c) const {
  return c(0) * shear[0] + c(1) * shear[1];
}

SymmetricOperator ExtrinsicState::shape_along(const Eigen::VectorXd& nu) const {
  return shape_along(coefficients(nu));
}

SymmetricOperator ExtrinsicState::shear_along(const Eigen::VectorXd& nu) const {
  return shear_along(coefficients(nu));
}

Eigen::VectorXd ExtrinsicState::second_fundamental(int i, int j) const {
  return normal.eps[0] * shape[0](i, j) * normal.first + normal.eps[1] * shape[1](i, j) * normal.second;
}

Eigen::VectorXd ExtrinsicState::total_shear_vector(int i, int j) const {
  return normal.eps[0] * shear[0](i, j) * normal.first + normal.eps[1] * shear[1](i, j) * normal.second;
}

Eigen::VectorXd ExtrinsicState::normal_part(const Eigen::VectorXd& u) const {
  return normal.eps[0] * dot(u, normal.first) * normal.first +
         normal.eps[1] * dot(u, normal.second) * normal.second;
}

double ExtrinsicState::umbilic_scale() const {
  return std::max(1.0, shape[0].norm() + shape[1].norm());
}

Eigen::MatrixXd induced_metric(const Eigen::MatrixXd& ambient_metric, const Eigen::MatrixXd& tangents,
                               const Tolerances& tol) {
  Eigen::MatrixXd g = tangents.transpose() * ambient_metric * tangents;
  g = 0.5 * (g + g.transpose());
  const auto eig = eigen_symmetric(g, {}, tol.sym);
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  if (!(eig.values.minCoeff() > tol.pd * scale))
    throw NotSpacelikeError("induced metric is not positive definite (smallest eigenvalue " +
                            std::to_string(eig.values.minCoeff()) + ")");
  return g;
}

TangentFrame tangent_orthonormal_frame(const Eigen::MatrixXd& induced, const Eigen::MatrixXd& tangents,
                                       const Tolerances& tol) {
  const auto n = induced.rows();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i);
    for (int pass = 0; pass < 2; ++pass)  // re-orthogonalise once
      for (int j = 0; j < i; ++j) v -= c.col(j).dot(induced * v) * c.col(j);
    const double pivot = v.dot(induced * v);
    if (!(pivot > tol.pd * std::max(1.0, induced(i, i))))
      throw DegenerateFrameError("coordinate tangent " + std::to_string(i) +
                                 " is linearly dependent on the previous ones");
    c.col(i) = v / std::sqrt(pivot);
  }
  return {tangents * c, c};
}

std::array<SymmetricOperator, 2> second_fundamental_form(const ImmersionJet& jet,
                                                         const Christoffels& gamma,
                                                         const TangentFrame& tangent,
                                                         const NormalFrame& normal, ShapeSign sign) {
  const auto n = jet.tangents.cols();
  const auto dim = jet.tangents.rows();
  const double s = sign == ShapeSign::gauss ? 1.0 : -1.0;
  const Eigen::MatrixXd& g = gamma.metric;
  const Eigen::VectorXd xi1 = g * normal.first;
  const Eigen::VectorXd xi2 = g * normal.second;

  Eigen::MatrixXd b1(n, n), b2(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      Eigen::VectorXd acc = gamma.contract(jet.tangents.col(k), jet.tangents.col(l));
      for (int a = 0; a < dim; ++a) acc(a) += jet.second[a](k, l);
      b1(k, l) = b1(l, k) = s * acc.dot(xi1);
      b2(k, l) = b2(l, k) = s * acc.dot(xi2);
    }
  const Eigen::MatrixXd& c = tangent.coefficients;
  std::array<SymmetricOperator, 2> out{c.transpose() * b1 * c, c.transpose() * b2 * c};
  for (auto& a : out) a = 0.5 * (a + a.transpose());
  return out;
}

NormalVector mean_curvature(const ExtrinsicState& state) {
  const double inv_n = 1.0 / state.n;
  const Eigen::VectorXd h = inv_n * (state.normal.eps[0] * state.shape[0].trace() * state.normal.first +
                                     state.normal.eps[1] * state.shape[1].trace() * state.normal.second);
  return state.make_normal(h);
}

ShearResult total_shear(const ExtrinsicState& state) {
  ShearResult out;
  for (int k = 0; k < 2; ++k) {
    out.operators[k] = trace_free(state.shape[k]);
    out.magnitudes[k] = std::sqrt(std::max(0.0, operator_inner(out.operators[k], out.operators[k])));
  }
  return out;
}

CasoratiResult casorati_and_J(const ExtrinsicState& state) {
  const double e1 = state.normal.eps[0];
  const double e2 = state.normal.eps[1];
  CasoratiResult out;
  out.B = e1 * state.shape[0] * state.shape[0] + e2 * state.shape[1] * state.shape[1];
  out.J = e1 * state.shear[0] * state.shear[0] + e2 * state.shear[1] * state.shear[1];
  out.B = 0.5 * (out.B + out.B.transpose());
  out.J = 0.5 * (out.J + out.J.transpose());
  return out;
}

void complete_state(ExtrinsicState& state) {
  for (int k = 0; k < 2; ++k) state.theta[k] = state.shape[k].trace();
  state.H = mean_curvature(state);
  auto shear = total_shear(state);
  state.shear = shear.operators;
  state.sigma = shear.magnitudes;
  auto bj = casorati_and_J(state);
  state.B = std::move(bj.B);
  state.J = std::move(bj.J);
}

ExtrinsicState compute_extrinsic_state(const AmbientMetric& metric, const Immersion& immersion,
                                       const Eigen::VectorXd& u, const GeometryOptions& options) {
  if (immersion.ambient_dimension() != metric.dimension())
    throw DimensionMismatch("immersion '" + immersion.name() + "' targets dimension " +
                            std::to_string(immersion.ambient_dimension()) + " but metric '" +
                            metric.name() + "' has dimension " + std::to_string(metric.dimension()));
  const auto& tol = options.tol;
  const ImmersionJet jet = immersion_jet(immersion, u);
  const MetricSample sample = evaluate_metric(metric, jet.point, tol);
  const Christoffels gamma = christoffels(metric, jet.point, tol);

  ExtrinsicState state;
  state.n = immersion.dimension();
  state.sign = options.sign;
  state.parameters = u;
  state.ambient_point = jet.point;
  state.ambient_metric = sample.g;
  state.coordinate_tangents = jet.tangents;
  state.induced_metric = induced_metric(sample.g, jet.tangents, tol);
  state.tangent = tangent_orthonormal_frame(state.induced_metric, jet.tangents, tol);
  state.future_reference = metric.future_reference(jet.point);
  state.normal = build_normal_frame(sample.g, state.tangent.vectors, state.future_reference,
                                    options.orientation, tol);
  state.shape = second_fundamental_form(jet, gamma, state.tangent, state.normal, options.sign);
  complete_state(state);
  return state;
}

ExtrinsicState synthetic_state(std::array<int, 2> eps, const SymmetricOperator& a1,
                               const SymmetricOperator& a2) {
  if (a1.rows() != a1.cols() || a1.rows() != a2.rows() || a2.rows() != a2.cols())
    throw DimensionMismatch("synthetic_state: shape operators must be square and equal-sized");
  const int n = static_cast<int>(a1.rows());
  const int dim = n + 2;
  ExtrinsicState state;
  state.n = n;
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(dim);
  diag(0) = eps[0];
  diag(1) = eps[1];
  state.ambient_metric = diag.asDiagonal();
  state.induced_metric = Eigen::MatrixXd::Identity(n, n);
  state.tangent.vectors = Eigen::MatrixXd::Zero(dim, n);
  state.tangent.vectors.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
  state.tangent.coefficients = Eigen::MatrixXd::Identity(n, n);
  state.coordinate_tangents = state.tangent.vectors;
  state.normal.kind = NormalFrameKind::orthonormal;
  state.normal.first = Eigen::VectorXd::Unit(dim, 0);
  state.normal.second = Eigen::VectorXd::Unit(dim, 1);
  state.normal.eps = eps;
  if (eps[0] == -1 && eps[1] == 1) state.future_reference = Eigen::VectorXd::Unit(dim, 0);
  state.shape = {0.5 * (a1 + a1.transpose()), 0.5 * (a2 + a2.transpose())};
  complete_state(state);
  return state;
}

ExtrinsicState rebase_state(const ExtrinsicState& state, double angle) {
  ExtrinsicState out = state;
  const Eigen::Matrix2d m = transform_matrix(state.normal, angle);
  out.normal = transform_frame(state.normal, angle);
  out.shape = {m(0, 0) * state.shape[0] + m(0, 1) * state.shape[1],
               m(1, 0) * state.shape[0] + m(1, 1) * state.shape[1]};
  complete_state(out);
  return out;
}

}  // namespace subshear
