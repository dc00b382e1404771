#pragma once

// Ambient semi-Riemannian metrics on a coordinate chart and the Levi-Civita
// connection coefficients derived from them by forward-mode differentiation.

#include <Eigen/Core>

#include <memory>
#include <string>
#include <vector>

#include "subshear/dual.hpp"
#include "subshear/linalg.hpp"
#include "subshear/tolerances.hpp"

namespace subshear {

template <class T>
using DenseVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

/// A smooth field of symmetric bilinear forms on an (n+2)-dimensional chart.
///
/// Implementations are usually MetricModel<Formula> instances; the virtual
/// overloads exist so a single formula template can be evaluated on plain
/// doubles and on the dual types the geometry pipeline seeds.
class AmbientMetric {
 public:
  virtual ~AmbientMetric() = default;

  virtual std::string name() const = 0;
  virtual int dimension() const = 0;
  virtual Signature declared_signature() const = 0;
  /// A future-directed causal vector at x defining the time orientation;
  /// empty when the metric carries none.
  virtual Eigen::VectorXd future_reference(const Eigen::VectorXd& x) const = 0;
  /// Throws DomainError when x lies outside the admissible domain.
  virtual void check_domain(const Eigen::VectorXd& x) const = 0;

  virtual Eigen::MatrixXd components(const Eigen::VectorXd& x) const = 0;
  virtual DenseMatrix<Dual> components(const DenseVector<Dual>& x) const = 0;
  virtual DenseMatrix<SurfaceDual> components(const DenseVector<SurfaceDual>& x) const = 0;
};

using MetricPtr = std::shared_ptr<const AmbientMetric>;

/// Adapts a formula object exposing
///   name(), dimension(), signature(), future_reference(x), check_domain(x),
///   template <class T> DenseMatrix<T> evaluate(const DenseVector<T>&)
/// to the AmbientMetric interface.
template <class Formula>
class MetricModel final : public AmbientMetric {
 public:
  explicit MetricModel(Formula f) : f_(std::move(f)) {}

  std::string name() const override { return f_.name(); }
  int dimension() const override { return f_.dimension(); }
  Signature declared_signature() const override { return f_.signature(); }
  Eigen::VectorXd future_reference(const Eigen::VectorXd& x) const override {
    return f_.future_reference(x);
  }
  void check_domain(const Eigen::VectorXd& x) const override { f_.check_domain(x); }

  Eigen::MatrixXd components(const Eigen::VectorXd& x) const override {
    return f_.template evaluate<double>(x);
  }
  DenseMatrix<Dual> components(const DenseVector<Dual>& x) const override {
    return f_.template evaluate<Dual>(x);
  }
  DenseMatrix<SurfaceDual> components(const DenseVector<SurfaceDual>& x) const override {
    return f_.template evaluate<SurfaceDual>(x);
  }

  const Formula& formula() const { return f_; }

 private:
  Formula f_;
};

template <class Formula>
MetricPtr make_metric(Formula f) {
  return std::make_shared<MetricModel<Formula>>(std::move(f));
}

struct MetricSample {
  Eigen::MatrixXd g;
  Signature signature;
};

/// g(x) and its eigenvalue-sign signature. Throws DomainError outside the
/// admissible domain and SignatureError if the signature is not the declared
/// one (degenerate forms count as a mismatch).
MetricSample evaluate_metric(const AmbientMetric& metric, const Eigen::VectorXd& x,
                             const Tolerances& tol = {});

/// Levi-Civita coefficients Gamma^a_{bc} at a point, together with the metric
/// and its first derivatives they were assembled from.
class Christoffels {
 public:
  Christoffels() = default;
  explicit Christoffels(int dim);

  int dimension() const { return static_cast<int>(gamma_.size()); }

  double operator()(int a, int b, int c) const { return gamma_[a](b, c); }
  double& operator()(int a, int b, int c) { return gamma_[a](b, c); }
  /// Symmetric matrix Gamma^a_{..}.
  const Eigen::MatrixXd& upper(int a) const { return gamma_[a]; }

  /// Gamma^a_{bc} u^b v^c.
  Eigen::VectorXd contract(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  Eigen::MatrixXd metric;                     // g_ab
  std::vector<Eigen::MatrixXd> metric_deriv;  // [c](a,b) = d_c g_ab

  /// max |d_c g_ab - Gamma^d_{ca} g_db - Gamma^d_{cb} g_ad|.
  double compatibility_residual() const;

 private:
  std::vector<Eigen::MatrixXd> gamma_;
};

/// Christoffel symbols from AD derivatives of the metric. Throws
/// SingularMetricError when the reciprocal condition number of g is below
/// tol.inv.
Christoffels christoffels(const AmbientMetric& metric, const Eigen::VectorXd& x,
                          const Tolerances& tol = {});

/// Inverse of a symmetric matrix through its eigen-decomposition, with the
/// same conditioning check as christoffels().
Eigen::MatrixXd inverse_symmetric(const Eigen::MatrixXd& g, const Tolerances& tol = {});

}  // namespace subshear
