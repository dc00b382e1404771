#pragma once

#include <Eigen/Core>

#include <memory>
#include <string>
#include <vector>

#include "subshear/metric.hpp"

namespace subshear {

/// A smooth map from an n-dimensional parameter chart into an (n+2)-dimensional
/// ambient chart.
class Immersion {
 public:
  virtual ~Immersion() = default;

  virtual std::string name() const = 0;
  /// Surface dimension n.
  virtual int dimension() const = 0;
  int ambient_dimension() const { return dimension() + 2; }
  virtual std::vector<std::string> coordinate_names() const = 0;
  virtual Eigen::VectorXd lower_bounds() const = 0;
  virtual Eigen::VectorXd upper_bounds() const = 0;
  /// Throws DomainError outside [lower_bounds, upper_bounds] or any extra
  /// exclusion the family declares.
  virtual void check_domain(const Eigen::VectorXd& u) const;

  virtual Eigen::VectorXd map(const Eigen::VectorXd& u) const = 0;
  virtual DenseVector<Dual> map(const DenseVector<Dual>& u) const = 0;
  virtual DenseVector<SurfaceDual2> map(const DenseVector<SurfaceDual2>& u) const = 0;
};

using ImmersionPtr = std::shared_ptr<const Immersion>;

/// Adapts a formula object exposing name(), dimension(), coordinate_names(),
/// lower_bounds(), upper_bounds() and a `map<T>` template.
template <class Formula>
class ImmersionModel final : public Immersion {
 public:
  explicit ImmersionModel(Formula f) : f_(std::move(f)) {}

  std::string name() const override { return f_.name(); }
  int dimension() const override { return f_.dimension(); }
  std::vector<std::string> coordinate_names() const override { return f_.coordinate_names(); }
  Eigen::VectorXd lower_bounds() const override { return f_.lower_bounds(); }
  Eigen::VectorXd upper_bounds() const override { return f_.upper_bounds(); }

  Eigen::VectorXd map(const Eigen::VectorXd& u) const override {
    return f_.template map<double>(u);
  }
  DenseVector<Dual> map(const DenseVector<Dual>& u) const override {
    return f_.template map<Dual>(u);
  }
  DenseVector<SurfaceDual2> map(const DenseVector<SurfaceDual2>& u) const override {
    return f_.template map<SurfaceDual2>(u);
  }

  const Formula& formula() const { return f_; }

 private:
  Formula f_;
};

template <class Formula>
ImmersionPtr make_immersion(Formula f) {
  return std::make_shared<ImmersionModel<Formula>>(std::move(f));
}

/// Value, first and second parameter derivatives of an immersion at one point,
/// from a single dual-number pass.
struct ImmersionJet {
  Eigen::VectorXd parameters;
  Eigen::VectorXd point;                 // Phi(u)
  Eigen::MatrixXd tangents;              // column i = d_i Phi
  std::vector<Eigen::MatrixXd> second;   // [a](i,j) = d_i d_j Phi^a
};

ImmersionJet immersion_jet(const Immersion& immersion, const Eigen::VectorXd& u);

}  // namespace subshear
