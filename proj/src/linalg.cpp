#include "subshear/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "subshear/errors.hpp"

namespace subshear {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen eigen_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& input,
                               const JacobiOptions& options, double sym_tol) {
  if (input.rows() != input.cols())
    throw DimensionMismatch("eigen_symmetric: matrix is " + std::to_string(input.rows()) + "x" +
                            std::to_string(input.cols()));
  const double scale = std::max(1.0, max_abs(input));
  if (asymmetry(input) > sym_tol * scale)
    throw DimensionMismatch("eigen_symmetric: input is not symmetric");

  const int n = static_cast<int>(input.rows());
  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double norm = std::max(a.norm(), std::numeric_limits<double>::min());

  SymmetricEigen out;
  for (; out.sweeps < options.max_sweeps; ++out.sweeps) {
    if (off_diagonal_norm(a) <= options.threshold * norm) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p,q); the smaller root of
        // t^2 + 2 t cot(2 phi) - 1 = 0 keeps the rotation stable.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

double operator_inner(const Eigen::Ref<const Eigen::MatrixXd>& a,
                      const Eigen::Ref<const Eigen::MatrixXd>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw DimensionMismatch("operator_inner: operand shapes differ");
  return (a * b).trace();
}

Eigen::MatrixXd commutator(const Eigen::Ref<const Eigen::MatrixXd>& a,
                           const Eigen::Ref<const Eigen::MatrixXd>& b) {
  return a * b - b * a;
}

Eigen::MatrixXd anticommutator(const Eigen::Ref<const Eigen::MatrixXd>& a,
                               const Eigen::Ref<const Eigen::MatrixXd>& b) {
  return a * b + b * a;
}

Eigen::MatrixXd trace_free(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  const auto n = a.rows();
  return a - (a.trace() / static_cast<double>(n)) * Eigen::MatrixXd::Identity(n, n);
}

double asymmetry(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

Signature signature_of(const SymmetricEigen& eig, double zero_tol) {
  Signature s;
  const double scale = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  for (int i = 0; i < eig.values.size(); ++i) {
    const double l = eig.values(i);
    if (std::abs(l) <= zero_tol * scale)
      ++s.zero;
    else if (l < 0)
      ++s.negative;
    else
      ++s.positive;
  }
  return s;
}

}  // namespace subshear
