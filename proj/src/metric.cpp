#include "subshear/metric.hpp"

#include <cmath>
#include <sstream>

#include "subshear/errors.hpp"

namespace subshear {

namespace {

std::string describe(const Signature& s) {
  std::ostringstream os;
  os << "(" << s.negative << " negative, " << s.positive << " positive, " << s.zero << " zero)";
  return os.str();
}

}  // namespace

MetricSample evaluate_metric(const AmbientMetric& metric, const Eigen::VectorXd& x,
                             const Tolerances& tol) {
  if (x.size() != metric.dimension())
    throw DimensionMismatch("evaluate_metric: point has " + std::to_string(x.size()) +
                            " coordinates, metric '" + metric.name() + "' needs " +
                            std::to_string(metric.dimension()));
  metric.check_domain(x);
  MetricSample out;
  out.g = metric.components(x);
  const auto eig = eigen_symmetric(out.g, {}, tol.sym);
  out.signature = signature_of(eig, tol.inv);
  if (!(out.signature == metric.declared_signature()))
    throw SignatureError("metric '" + metric.name() + "' has signature " + describe(out.signature) +
                         ", declared " + describe(metric.declared_signature()));
  return out;
}

Christoffels::Christoffels(int dim)
    : metric(Eigen::MatrixXd::Zero(dim, dim)),
      metric_deriv(dim, Eigen::MatrixXd::Zero(dim, dim)),
      gamma_(dim, Eigen::MatrixXd::Zero(dim, dim)) {}

Eigen::VectorXd Christoffels::contract(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out(dimension());
  for (int a = 0; a < dimension(); ++a) out(a) = u.dot(gamma_[a] * v);
  return out;
}

double Christoffels::compatibility_residual() const {
  const int n = dimension();
  double worst = 0.0;
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double r = metric_deriv[c](a, b);
        for (int d = 0; d < n; ++d)
          r -= gamma_[d](c, a) * metric(d, b) + gamma_[d](c, b) * metric(a, d);
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

Eigen::MatrixXd inverse_symmetric(const Eigen::MatrixXd& g, const Tolerances& tol) {
  const auto eig = eigen_symmetric(g, {}, tol.sym);
  const Eigen::VectorXd mags = eig.values.cwiseAbs();
  const double largest = mags.size() ? mags.maxCoeff() : 0.0;
  const double smallest = mags.size() ? mags.minCoeff() : 0.0;
  if (!(smallest > tol.inv * largest))
    throw SingularMetricError("metric is numerically singular (|lambda|min/|lambda|max = " +
                              std::to_string(largest > 0 ? smallest / largest : 0.0) + ")");
  return eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.transpose();
}

Christoffels christoffels(const AmbientMetric& metric, const Eigen::VectorXd& x,
                          const Tolerances& tol) {
  const int n = metric.dimension();
  if (x.size() != n) throw DimensionMismatch("christoffels: wrong point dimension");
  metric.check_domain(x);

  const auto vars = seed_variables<Dual>(x);
  DenseVector<Dual> xd(n);
  for (int i = 0; i < n; ++i) xd(i) = vars[i];
  const DenseMatrix<Dual> gd = metric.components(xd);

  Christoffels out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      out.metric(a, b) = gd(a, b).value();
      for (int c = 0; c < n; ++c) out.metric_deriv[c](a, b) = gd(a, b).d(c);
    }
  const Eigen::MatrixXd ginv = inverse_symmetric(out.metric, tol);

  // Gamma^a_{bc} = 1/2 g^{ad} (d_b g_dc + d_c g_bd - d_d g_bc); only b <= c is
  // computed so the lower-index symmetry is exact.
  for (int b = 0; b < n; ++b)
    for (int c = b; c < n; ++c) {
      Eigen::VectorXd lowered(n);
      for (int d = 0; d < n; ++d)
        lowered(d) = 0.5 * (out.metric_deriv[b](d, c) + out.metric_deriv[c](b, d) -
                            out.metric_deriv[d](b, c));
      const Eigen::VectorXd raised = ginv * lowered;
      for (int a = 0; a < n; ++a) {
        out(a, b, c) = raised(a);
        out(a, c, b) = raised(a);
      }
    }
  return out;
}

}  // namespace subshear
