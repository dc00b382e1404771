#pragma once

// Second-order forward-mode dual numbers.
//
// A HyperDual carries a value together with its gradient and Hessian with
// respect to a fixed set of seeded variables, all propagated in a single pass
// by truncated Taylor arithmetic. The scalar type is a template parameter so
// the type nests: HyperDual<HyperDual<double, 2>, 2> yields third derivatives
// of a map, which the Gaussian-curvature path needs.
//
// Storage is inline (no heap) with a compile-time cap on the number of
// variables. A HyperDual with zero-sized derivative arrays is a constant.

#include <Eigen/Core>

#include <cassert>
#include <cmath>
#include <ostream>
#include <vector>

namespace subshear {

template <class T, int MaxVars>
class HyperDual {
 public:
  using Scalar = T;
  using Gradient = Eigen::Matrix<T, Eigen::Dynamic, 1, 0, MaxVars, 1>;
  using Hessian = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, 0, MaxVars, MaxVars>;

  HyperDual() : value_(T(0)) {}
  HyperDual(double v) : value_(T(v)) {}  // NOLINT: implicit constants are intended
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  HyperDual(const T& v) : value_(v) {}  // NOLINT

  /// Independent variable number `index` out of `count`.
  static HyperDual variable(const T& v, int index, int count) {
    assert(count <= MaxVars && index < count);
    HyperDual x(v);
    x.grad_ = Gradient::Constant(count, T(0));
    x.grad_(index) = T(1);
    x.hess_ = Hessian::Constant(count, count, T(0));
    return x;
  }

  const T& value() const { return value_; }
  const Gradient& gradient() const { return grad_; }
  const Hessian& hessian() const { return hess_; }
  int variables() const { return static_cast<int>(grad_.size()); }
  bool is_constant() const { return grad_.size() == 0; }

  T d(int i) const { return is_constant() ? T(0) : grad_(i); }
  T dd(int i, int j) const { return is_constant() ? T(0) : hess_(i, j); }

  /// Applies a scalar function given its value and first two derivatives at
  /// value(): f(x) = f0 + f1 dx + f2 dx^2 / 2.
  HyperDual chain(const T& f0, const T& f1, const T& f2) const {
    HyperDual r(f0);
    if (is_constant()) return r;
    const int n = variables();
    r.grad_.resize(n);
    r.hess_.resize(n, n);
    for (int i = 0; i < n; ++i) r.grad_(i) = f1 * grad_(i);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.hess_(i, j) = f1 * hess_(i, j) + f2 * grad_(i) * grad_(j);
    return r;
  }

  HyperDual operator-() const { return chain(-value_, T(-1), T(0)); }

  HyperDual& operator+=(const HyperDual& o) { return *this = *this + o; }
  HyperDual& operator-=(const HyperDual& o) { return *this = *this - o; }
  HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
  HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

  friend HyperDual operator+(const HyperDual& a, const HyperDual& b) {
    HyperDual r(a.value_ + b.value_);
    if (a.is_constant()) {
      r.grad_ = b.grad_;
      r.hess_ = b.hess_;
    } else if (b.is_constant()) {
      r.grad_ = a.grad_;
      r.hess_ = a.hess_;
    } else {
      assert(a.variables() == b.variables());
      r.grad_ = a.grad_;
      r.hess_ = a.hess_;
      for (int i = 0; i < a.variables(); ++i) r.grad_(i) += b.grad_(i);
      for (int i = 0; i < a.variables(); ++i)
        for (int j = 0; j < a.variables(); ++j) r.hess_(i, j) += b.hess_(i, j);
    }
    return r;
  }

  friend HyperDual operator-(const HyperDual& a, const HyperDual& b) { return a + (-b); }

  friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    if (a.is_constant()) return b.chain(a.value_ * b.value_, a.value_, T(0));
    if (b.is_constant()) return a.chain(a.value_ * b.value_, b.value_, T(0));
    assert(a.variables() == b.variables());
    const int n = a.variables();
    HyperDual r(a.value_ * b.value_);
    r.grad_.resize(n);
    r.hess_.resize(n, n);
    for (int i = 0; i < n; ++i) r.grad_(i) = a.grad_(i) * b.value_ + a.value_ * b.grad_(i);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.hess_(i, j) = a.hess_(i, j) * b.value_ + a.value_ * b.hess_(i, j) +
                        a.grad_(i) * b.grad_(j) + b.grad_(i) * a.grad_(j);
    return r;
  }

  friend HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    return a * reciprocal(b);
  }

  friend HyperDual reciprocal(const HyperDual& x) {
    const T inv = T(1) / x.value_;
    return x.chain(inv, -inv * inv, T(2) * inv * inv * inv);
  }

  friend HyperDual sqrt(const HyperDual& x) {
    using std::sqrt;
    const T s = sqrt(x.value_);
    const T f1 = T(0.5) / s;
    return x.chain(s, f1, -f1 / (T(2) * x.value_));
  }
  friend HyperDual sin(const HyperDual& x) {
    using std::cos;
    using std::sin;
    const T s = sin(x.value_);
    return x.chain(s, cos(x.value_), -s);
  }
  friend HyperDual cos(const HyperDual& x) {
    using std::cos;
    using std::sin;
    const T c = cos(x.value_);
    return x.chain(c, -sin(x.value_), -c);
  }
  friend HyperDual tan(const HyperDual& x) {
    using std::tan;
    const T t = tan(x.value_);
    const T sec2 = T(1) + t * t;
    return x.chain(t, sec2, T(2) * t * sec2);
  }
  friend HyperDual exp(const HyperDual& x) {
    using std::exp;
    const T e = exp(x.value_);
    return x.chain(e, e, e);
  }
  friend HyperDual log(const HyperDual& x) {
    using std::log;
    const T inv = T(1) / x.value_;
    return x.chain(log(x.value_), inv, -inv * inv);
  }

  friend std::ostream& operator<<(std::ostream& os, const HyperDual& x) {
    return os << x.value_;
  }

 private:
  T value_;
  Gradient grad_;
  Hessian hess_;
};

template <class T, int N>
HyperDual<T, N> square(const HyperDual<T, N>& x) {
  return x * x;
}
inline double square(double x) { return x * x; }

/// Innermost double value of a possibly nested dual number.
inline double value_of(double x) { return x; }
template <class T, int N>
double value_of(const HyperDual<T, N>& x) {
  return value_of(x.value());
}

// Ambient charts have at most this many coordinates.
inline constexpr int kMaxChartDim = 8;

using Dual = HyperDual<double, kMaxChartDim>;
using SurfaceDual = HyperDual<double, 2>;
using SurfaceDual2 = HyperDual<SurfaceDual, 2>;

/// Seeds every component of x as an independent variable.
template <class D>
std::vector<D> seed_variables(const Eigen::Ref<const Eigen::VectorXd>& x) {
  std::vector<D> out;
  out.reserve(x.size());
  for (int i = 0; i < x.size(); ++i)
    out.push_back(D::variable(typename D::Scalar(x(i)), i, static_cast<int>(x.size())));
  return out;
}

}  // namespace subshear

namespace Eigen {
template <class T, int N>
struct NumTraits<subshear::HyperDual<T, N>> : NumTraits<double> {
  using Real = subshear::HyperDual<T, N>;
  using NonInteger = Real;
  using Nested = Real;
  using Literal = Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
};
}  // namespace Eigen
